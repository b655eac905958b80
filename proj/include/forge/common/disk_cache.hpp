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

#include <array>
#include <filesystem>
#include <functional>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace forge {

// Content cache on disk keyed by the SHA-256 of a caller-supplied key.
// Readers never observe partial entries (writes go through rename). Writers
// for the same key are serialized within the process through striped locks.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir);

  std::optional<std::string> get(std::string_view key) const;
  void put(std::string_view key, std::string_view value);

  // Returns the cached value or computes, stores and returns it. Concurrent
  // callers with the same key run `compute` once.
  std::string get_or_compute(std::string_view key, const std::function<std::string()>& compute);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(std::string_view key) const;

 private:
  std::mutex& stripe(std::string_view digest);

  std::filesystem::path dir_;
  std::array<std::mutex, 64> stripes_;
};

// Joins cache key parts with a NUL separator so that ("ab","c") != ("a","bc").
std::string cache_key(std::initializer_list<std::string_view> parts);

}  // namespace forge
