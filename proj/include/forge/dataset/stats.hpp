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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/dataset/manifest.hpp"

namespace forge::dataset {

struct Histogram {
  double bin_width = 1.0;
  std::vector<std::size_t> counts;  // counts[k] covers [k*w, (k+1)*w)

  void add(double value);
  std::size_t total() const;
};

struct StatsReport {
  std::size_t episodes = 0;
  std::size_t base_trajectories = 0;  // distinct provenance trajectory ids
  std::size_t skills = 0;             // distinct extracted skills
  std::size_t objects = 0;            // distinct extracted objects
  std::size_t speakers = 0;           // distinct speaker profile ids
  std::size_t sound_events = 0;       // event insertions over all mix plans
  std::size_t backgrounds = 0;        // distinct background ids
  std::size_t missing_audio = 0;      // audio_ref unreadable; not in the duration histogram
  std::map<episode::InstructionType, std::size_t> per_type;  // all seven keys
  Histogram audio_seconds{1.0, {}};
  Histogram action_frames{10.0, {}};
};

// Full recount. Throws CorruptLine / DuplicateId from the manifest.
StatsReport compute_stats(const Manifest& manifest);
StatsReport compute_stats(const std::filesystem::path& manifest_path);

nlohmann::json to_json(const StatsReport& report);

}  // namespace forge::dataset
