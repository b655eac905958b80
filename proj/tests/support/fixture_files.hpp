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

// On-disk fixtures for running the stages end to end: a voice list, event
// and background catalogs, and placeholder frame files for seeds.

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/audio/waveform.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"
#include "forge/script/script.hpp"
#include "synthetic.hpp"

namespace forge::synth {

// Two voices per age group and gender.
inline void write_voices(const std::filesystem::path& path) {
  std::string out;
  int n = 0;
  for (const auto* age : {"child", "adult", "senior"}) {
    for (const auto* gender : {"male", "female"}) {
      for (int k = 0; k < 2; ++k) {
        out += nlohmann::json{{"id", "voice-" + std::to_string(n++)},
                              {"age_group", age},
                              {"gender", gender},
                              {"timbre_ref", std::string("timbres/") + age + "-" + gender + ".wav"}}
                   .dump() +
               "\n";
      }
    }
  }
  write_file_atomic(path, out);
}

inline void write_event_catalog(const std::filesystem::path& dir, const std::vector<std::string>& tags) {
  std::filesystem::create_directories(dir);
  std::string lines;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    audio::Waveform w;
    w.rate = 22050;
    const double f = 500.0 + 150.0 * static_cast<double>(i);
    for (int k = 0; k < 22050 / 2; ++k) {
      w.samples.push_back(0.4 * std::sin(2 * M_PI * f * k / 22050.0) * std::exp(-k / 6000.0));
    }
    const auto name = tags[i] + ".wav";
    audio::write_wav(dir / name, w, audio::SampleFormat::Float32);
    lines += nlohmann::json{{"id", tags[i] + "-1"}, {"path", name}, {"tags", {tags[i]}}}.dump() + "\n";
  }
  write_file_atomic(dir / "catalog.jsonl", lines);
}

inline void write_background_catalog(const std::filesystem::path& dir, std::uint64_t seed = 5) {
  std::filesystem::create_directories(dir);
  Rng rng(seed);
  std::string lines;
  for (const auto* id : {"kitchen", "street"}) {
    audio::write_wav(dir / (std::string(id) + ".wav"), noise_clip(rng, 3.0), audio::SampleFormat::Float32);
    lines += nlohmann::json{{"id", id}, {"path", std::string(id) + ".wav"}, {"tags", nlohmann::json::array()}}
                 .dump() +
             "\n";
  }
  write_file_atomic(dir / "catalog.jsonl", lines);
}

// Every frame ref of every seed, relative to `root`.
inline void write_frames(const std::filesystem::path& root, const std::vector<script::TrajectorySeed>& seeds) {
  for (const auto& s : seeds) {
    for (const auto& f : s.frame_refs) {
      std::filesystem::create_directories((root / f).parent_path());
      write_file_atomic(root / f, "frame " + f);
    }
  }
}

inline void write_seeds(const std::filesystem::path& path, const std::vector<script::TrajectorySeed>& seeds) {
  std::string out;
  for (const auto& s : seeds) out += script::to_json(s).dump() + "\n";
  write_file_atomic(path, out);
}

}  // namespace forge::synth
