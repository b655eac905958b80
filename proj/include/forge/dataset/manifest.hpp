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
#include <map>
#include <string>
#include <vector>

#include "forge/episode/episode.hpp"

namespace forge::dataset {

// JSONL episode manifest (one episode per line, ordered by id). Relative
// audio and frame references resolve against the manifest's directory.
class Manifest {
 public:
  // A missing file is an empty manifest. Throws CorruptLine (index = line
  // number), DuplicateId (index = line number), IoError.
  static Manifest open(const std::filesystem::path& path);

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path dir() const { return path_.parent_path(); }
  std::size_t size() const { return episodes_.size(); }
  bool contains(const std::string& id) const { return episodes_.count(id) != 0; }
  // Throws NotFound.
  const episode::Episode& get(const std::string& id) const;
  const std::map<std::string, episode::Episode>& episodes() const { return episodes_; }

  // In memory only. Throws InvalidArgument (validate_episode issues, codes in
  // the message) or DuplicateId.
  void add(episode::Episode e);
  // Atomic rewrite of the whole file in id order.
  void save() const;

  std::map<episode::InstructionType, std::size_t> type_counts() const;
  std::filesystem::path resolve(const std::string& ref) const;

 private:
  std::filesystem::path path_;
  std::map<std::string, episode::Episode> episodes_;
};

// add + save.
void write_episode(const episode::Episode& e, Manifest& manifest);
// Throws NotFound, CorruptLine, DuplicateId.
episode::Episode read_episode(const std::string& id, const std::filesystem::path& manifest_path);

}  // namespace forge::dataset
