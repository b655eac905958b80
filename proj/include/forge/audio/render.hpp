// Copyright 2026 The Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "forge/audio/acoustic.hpp"
#include "forge/audio/timeline.hpp"
#include "forge/audio/tts.hpp"
#include "forge/episode/episode.hpp"
#include "forge/episode/markup.hpp"

namespace forge::audio {

struct CatalogEntry {
  std::string id;
  std::filesystem::path path;  // absolute, or relative to the catalog directory
  std::vector<std::string> tags;
};

// Directory of WAV files described by `catalog.jsonl` lines
// {"id", "path", "tags"}. Clips are loaded lazily and resampled to 16 kHz.
class ClipCatalog {
 public:
  ClipCatalog() = default;
  static ClipCatalog load(const std::filesystem::path& dir);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  const CatalogEntry* find(const std::string& id) const;
  // Entries carrying `tag` (case-insensitive), in catalog order.
  std::vector<const CatalogEntry*> with_tag(const std::string& tag) const;
  Waveform clip(const std::string& id) const;

 private:
  std::filesystem::path dir_;
  std::vector<CatalogEntry> entries_;
  struct Loaded {
    std::mutex mu;
    std::map<std::string, Waveform> clips;
  };
  std::shared_ptr<Loaded> loaded_ = std::make_shared<Loaded>();
};

struct RenderConfig {
  double snr_min_db = 0.0;
  double snr_max_db = 20.0;
  double gap_min_s = 0.15;
  double gap_max_s = 0.45;
  double speech_peak = 0.5;   // every TTS clip is normalized to this peak
  double event_peak = 0.4;
  double output_peak = 0.99;  // the final mix is scaled down as a whole above this
};

struct RenderRequest {
  std::string episode_id;
  episode::MarkupDoc doc;
  std::map<episode::Speaker, episode::SpeakerProfile> voices;
  std::optional<std::string> sound_type;  // preferred event tag for [Sound] anchors
  std::uint64_t seed = 0;
};

struct TurnPlacement {
  std::size_t turn = 0;  // index into doc.turns
  std::int64_t start = 0;
  std::int64_t end = 0;
};

struct RenderResult {
  Waveform audio;
  episode::MixPlan mix_plan;
  std::vector<TurnPlacement> turns;
  double gain = 0.0;  // background gain before the final peak limit
};

// Voices the human turns that precede the first Robot turn (the context the
// robot hears), places them with seeded gaps and CTC-located overlaps,
// inserts event clips at [Sound] anchors and mixes a background at a seeded
// SNR. Throws on TTS failure, missing voices or empty catalogs.
RenderResult render_episode_audio(const RenderRequest& request, TtsClient& tts,
                                  AcousticModel& acoustic, const ClipCatalog& events,
                                  const ClipCatalog& backgrounds, const RenderConfig& config);

}  // namespace forge::audio
