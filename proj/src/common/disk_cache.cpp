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

#include "forge/common/disk_cache.hpp"

#include "forge/common/io.hpp"

namespace forge {

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path DiskCache::entry_path(std::string_view key) const {
  const std::string digest = sha256_hex(key);
  return dir_ / digest.substr(0, 2) / (digest + ".bin");
}

std::mutex& DiskCache::stripe(std::string_view digest) {
  const std::size_t idx = std::stoul(std::string(digest.substr(0, 2)), nullptr, 16);
  return stripes_[idx % stripes_.size()];
}

std::optional<std::string> DiskCache::get(std::string_view key) const {
  const auto path = entry_path(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  return read_file(path);
}

void DiskCache::put(std::string_view key, std::string_view value) {
  const auto path = entry_path(key);
  std::lock_guard lock(stripe(path.stem().string()));
  write_file_atomic(path, value);
}

std::string DiskCache::get_or_compute(std::string_view key,
                                      const std::function<std::string()>& compute) {
  const auto path = entry_path(key);
  std::lock_guard lock(stripe(path.stem().string()));
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) return read_file(path);
  std::string value = compute();
  write_file_atomic(path, value);
  return value;
}

std::string cache_key(std::initializer_list<std::string_view> parts) {
  std::string key;
  bool first = true;
  for (auto p : parts) {
    if (!first) key.push_back('\0');
    key.append(p);
    first = false;
  }
  return key;
}

}  // namespace forge
