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
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace forge::dataset {

struct CheckIssue {
  std::string episode_id;  // empty for manifest-level issues
  std::string code;
  std::string message;
};

struct CheckReport {
  std::size_t episodes = 0;
  std::vector<CheckIssue> issues;
  std::string io_error;  // non-empty when the manifest itself could not be read

  // 0 ok, 1 validation failures, 2 I/O or corruption.
  int exit_code() const { return !io_error.empty() ? 2 : issues.empty() ? 0 : 1; }
};

// Validates every episode, checks that audio is mono PCM16 at 16 kHz and
// that frame files exist, that per-type counts add up, and that any shard
// indexes under <manifest dir>/shards cover exactly the manifest's ids.
CheckReport check_manifest(const std::filesystem::path& manifest_path);

nlohmann::json to_json(const CheckReport& report);

}  // namespace forge::dataset
