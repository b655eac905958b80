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

// Glue between the stages: casting voices for scripted speakers, rendering
// drafts to audio files, and packing drafts plus audio into a dataset.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "forge/audio/render.hpp"
#include "forge/dataset/manifest.hpp"
#include "forge/dataset/shard.hpp"
#include "forge/script/script.hpp"

namespace forge::pipeline {

// JSONL of speaker profiles {"id", "age_group", "gender", "timbre_ref"}.
// timbre_ref is passed to the TTS backend untouched.
std::vector<episode::SpeakerProfile> load_voices(const std::filesystem::path& path);

// One voice per scripted speaker with the speaker's age group and gender,
// distinct within the episode while the pool allows, chosen by `seed`.
// Throws UnsupportedVoice when no voice has a required demographic.
std::map<episode::Speaker, episode::SpeakerProfile> cast_voices(
    const std::vector<script::SpeakerInfo>& speakers,
    const std::vector<episode::SpeakerProfile>& voices, std::uint64_t seed);

// JSONL helpers for the draft file exchanged between stages.
std::vector<script::DraftRecord> load_drafts(const std::filesystem::path& path);
void save_drafts(const std::vector<script::DraftRecord>& drafts, const std::filesystem::path& path);
std::vector<script::TrajectorySeed> load_seeds(const std::filesystem::path& path);

struct AudioStageConfig {
  audio::RenderConfig render;
  std::uint64_t seed = 0;
};

struct StageFailure {
  std::string id;
  std::string code;
  std::string message;
};

// Writes <out_dir>/<id>.wav (PCM16, 16 kHz, mono) and <out_dir>/<id>.json
// {"id", "mix_plan", "speakers", "turns"} for every draft it can render.
std::vector<StageFailure> run_audio_stage(const std::vector<script::DraftRecord>& drafts,
                                          const std::vector<episode::SpeakerProfile>& voices,
                                          audio::TtsClient& tts, audio::AcousticModel& acoustic,
                                          const audio::ClipCatalog& events,
                                          const audio::ClipCatalog& backgrounds,
                                          const AudioStageConfig& config,
                                          const std::filesystem::path& out_dir);

struct PackConfig {
  std::filesystem::path audio_dir;    // output of run_audio_stage
  std::filesystem::path frames_root;  // base for relative frame refs in seeds
  std::filesystem::path out_dir;      // gets manifest.jsonl, audio/, frames/, shards/
  std::size_t shard_size = dataset::kDefaultShardSize;
};

struct PackResult {
  std::size_t episodes = 0;
  std::vector<dataset::ShardInfo> shards;
  std::vector<StageFailure> skipped;
};

// Rebuilds the dataset from scratch: copies audio and frames under out_dir,
// writes the manifest in id order and the shards. Re-running on the same
// inputs yields byte-identical files.
PackResult pack_dataset(const std::vector<script::DraftRecord>& drafts, const PackConfig& config);

}  // namespace forge::pipeline
