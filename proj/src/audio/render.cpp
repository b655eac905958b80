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

#include "forge/audio/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

#include "forge/audio/resample.hpp"
#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"

namespace forge::audio {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void normalize_peak(Waveform& w, double target) {
  const double p = peak(w);
  if (p <= 0.0) return;
  for (double& s : w.samples) s *= target / p;
}

struct Anchor {
  std::size_t index;   // global [Sound] index
  std::size_t voiced;  // index into the voiced turn list
  std::size_t char_pos;
  bool at_end;
};

}  // namespace

ClipCatalog ClipCatalog::load(const std::filesystem::path& dir) {
  ClipCatalog c;
  c.dir_ = dir;
  const auto path = dir / "catalog.jsonl";
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::NotFound, "missing catalog " + path.string());
  }
  for_each_line(path, [&](std::string_view line, std::size_t no) {
    if (trim(line).empty()) return;
    try {
      const auto j = nlohmann::json::parse(line);
      CatalogEntry e;
      e.id = j.at("id").get<std::string>();
      e.path = j.at("path").get<std::string>();
      if (j.contains("tags")) e.tags = j.at("tags").get<std::vector<std::string>>();
      c.entries_.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::CorruptLine, path.string() + ": " + ex.what(),
                  static_cast<std::int64_t>(no));
    }
  });
  return c;
}

const CatalogEntry* ClipCatalog::find(const std::string& id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::vector<const CatalogEntry*> ClipCatalog::with_tag(const std::string& tag) const {
  std::vector<const CatalogEntry*> out;
  const auto want = lower(tag);
  for (const auto& e : entries_) {
    for (const auto& t : e.tags) {
      if (lower(t) == want) {
        out.push_back(&e);
        break;
      }
    }
  }
  return out;
}

Waveform ClipCatalog::clip(const std::string& id) const {
  std::lock_guard lock(loaded_->mu);
  if (auto it = loaded_->clips.find(id); it != loaded_->clips.end()) return it->second;
  const auto* e = find(id);
  if (!e) throw Error(ErrorCode::NotFound, "no catalog clip " + id);
  const auto path = e->path.is_absolute() ? e->path : dir_ / e->path;
  auto w = resample(read_wav(path), kCanonicalRate);
  loaded_->clips.emplace(id, w);
  return w;
}

RenderResult render_episode_audio(const RenderRequest& request, TtsClient& tts,
                                  AcousticModel& acoustic, const ClipCatalog& events,
                                  const ClipCatalog& backgrounds, const RenderConfig& config) {
  Rng rng(derive_seed(request.seed, request.episode_id));
  const auto& turns = request.doc.turns;

  std::vector<std::size_t> voiced;
  for (std::size_t k = 0; k < turns.size(); ++k) {
    if (!episode::is_human(turns[k].speaker)) break;
    voiced.push_back(k);
  }
  if (voiced.empty()) {
    throw Error(ErrorCode::InvalidArgument, request.episode_id + ": no human turn to voice");
  }

  std::vector<Waveform> clips;
  for (auto k : voiced) {
    const auto it = request.voices.find(turns[k].speaker);
    if (it == request.voices.end()) {
      throw Error(ErrorCode::UnsupportedVoice, request.episode_id + ": no voice for " +
                                                   std::string(episode::to_string(turns[k].speaker)));
    }
    auto clip = synthesize_turn(turns[k], it->second, tts);
    normalize_peak(clip, config.speech_peak);
    clips.push_back(std::move(clip));
  }

  // An [Overlap] region in voiced turn i is talked over by voiced turn i+1,
  // starting where the region's first character is spoken.
  std::vector<OverlapSpec> overlaps;
  for (std::size_t i = 0; i + 1 < voiced.size(); ++i) {
    const auto& t = turns[voiced[i]];
    if (t.overlap_spans.empty()) continue;
    const double onset = char_onset_seconds(clips[i], t.text, t.overlap_spans[0].char_start, acoustic);
    double d = clips[i].duration() - onset;
    d = std::min(d, clips[i + 1].duration());
    if (to_samples(d, kCanonicalRate) >= 1) overlaps.push_back({i, i + 1, d});
  }
  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < clips.size(); ++i) {
    gaps.push_back(rng.uniform(config.gap_min_s, config.gap_max_s));
  }
  Timeline tl = assemble_timeline(clips, gaps, overlaps);

  RenderResult result;
  for (std::size_t i = 0; i < voiced.size(); ++i) {
    result.turns.push_back({voiced[i], tl.placements[i].start, tl.placements[i].end()});
  }

  // [Sound] anchors inside voiced turns, numbered across the whole document.
  std::vector<Anchor> anchors;
  {
    std::size_t global = 0, v = 0;
    for (std::size_t k = 0; k < turns.size(); ++k) {
      const bool is_voiced = v < voiced.size() && voiced[v] == k;
      for (auto pos : turns[k].sound_anchors) {
        if (is_voiced) anchors.push_back({global, v, pos, pos >= turns[k].text.size()});
        ++global;
      }
      if (is_voiced) ++v;
    }
  }
  if (!anchors.empty() && events.empty()) {
    throw Error(ErrorCode::NotFound, request.episode_id + ": [Sound] anchors but no event catalog");
  }

  struct Pending {
    double time;
    episode::EventInsertion insertion;
  };
  std::vector<Pending> pending;
  for (const auto& a : anchors) {
    std::vector<const CatalogEntry*> pool;
    if (request.sound_type) pool = events.with_tag(*request.sound_type);
    if (pool.empty()) {
      for (const auto& e : events.entries()) pool.push_back(&e);
    }
    const auto* pick = pool[rng.below(pool.size())];
    const auto& placement = tl.placements[a.voiced];
    double t = static_cast<double>(placement.end()) / kCanonicalRate;
    if (!a.at_end) {
      t = static_cast<double>(placement.start) / kCanonicalRate +
          char_onset_seconds(placement.clip, turns[voiced[a.voiced]].text, a.char_pos, acoustic);
    }
    pending.push_back({t, {a.index, pick->id, a.at_end ? episode::EventMode::GapInsert
                                                       : episode::EventMode::Overlay}});
  }
  // Latest anchor first, so gap inserts never move an anchor still to come.
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Pending& x, const Pending& y) { return x.time > y.time; });
  for (const auto& p : pending) {
    Waveform clip = events.clip(p.insertion.clip_id);
    normalize_peak(clip, config.event_peak);
    for (int attempt = 0;; ++attempt) {
      try {
        tl = insert_event(tl, p.time, clip, p.insertion.mode);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PeakOverflow || attempt >= 8) throw;
        for (double& s : clip.samples) s *= 0.5;
      }
    }
    result.mix_plan.event_insertions.push_back(p.insertion);
  }
  std::sort(result.mix_plan.event_insertions.begin(), result.mix_plan.event_insertions.end(),
            [](const auto& x, const auto& y) { return x.anchor_index < y.anchor_index; });
  // Gap inserts shift turn spans.
  for (auto& tp : result.turns) {
    for (std::size_t i = 0; i < voiced.size(); ++i) {
      if (voiced[i] == tp.turn) {
        tp.start = tl.placements[i].start;
        tp.end = tl.placements[i].end();
      }
    }
  }

  if (backgrounds.empty()) throw Error(ErrorCode::NotFound, "empty background catalog");
  const auto& bg = backgrounds.entries()[rng.below(backgrounds.entries().size())];
  const double snr = rng.uniform(config.snr_min_db, config.snr_max_db);
  auto mixed = mix_background_detailed(tl, backgrounds.clip(bg.id), snr);
  // Scaling the whole mix keeps the speech-to-background ratio intact.
  const double p = peak(mixed.mix);
  if (p > config.output_peak) {
    for (double& s : mixed.mix.samples) s *= config.output_peak / p;
  }
  result.audio = std::move(mixed.mix);
  result.gain = mixed.gain;
  result.mix_plan.background_id = bg.id;
  result.mix_plan.target_snr_db = snr;
  return result;
}

}  // namespace forge::audio
