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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "forge/dataset/manifest.hpp"

namespace forge::dataset {

inline constexpr std::size_t kDefaultShardSize = 1024;

// Minimal POSIX ustar writer with fixed metadata (mode 0644, uid/gid 0,
// mtime 0) so archives are byte-reproducible.
class TarWriter {
 public:
  struct Member {
    std::string name;
    std::uint64_t offset = 0;  // of the data, from the start of the archive
    std::uint64_t size = 0;
  };

  // Throws InvalidArgument for names that do not fit ustar's name/prefix.
  void add(const std::string& name, std::string_view data);
  // Appends the two zero end blocks and returns the archive bytes.
  std::string finish();
  const std::vector<Member>& members() const { return members_; }

 private:
  std::string bytes_;
  std::vector<Member> members_;
};

struct TarEntry {
  std::string name;
  std::string data;
};
// Throws IoError on malformed archives (bad checksum, truncated data).
std::vector<TarEntry> read_tar(std::string_view archive);

struct ShardInfo {
  std::filesystem::path tar;
  std::filesystem::path index;
  std::vector<std::string> ids;
};

// Writes shards/shard-NNNNN.tar and shard-NNNNN.index.json under `out_dir`,
// at most `shard_size` episodes each in id order. Each episode contributes
// "<id>/episode.json", "<id>/audio.wav" and "<id>/frames/<k>-<name>".
// Throws NotFound when a referenced file is missing.
std::vector<ShardInfo> write_shards(const Manifest& manifest, const std::filesystem::path& out_dir,
                                    std::size_t shard_size = kDefaultShardSize);

}  // namespace forge::dataset
