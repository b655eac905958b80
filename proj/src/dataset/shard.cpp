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

#include "forge/dataset/shard.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"

namespace forge::dataset {

using nlohmann::json;

namespace {

constexpr std::size_t kBlock = 512;

void put_octal(char* field, std::size_t width, std::uint64_t value) {
  // width-1 octal digits, NUL terminated
  std::snprintf(field, width, "%0*llo", static_cast<int>(width - 1),
                static_cast<unsigned long long>(value));
}

std::uint64_t get_octal(const char* field, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width && field[i] != '\0' && field[i] != ' '; ++i) {
    if (field[i] < '0' || field[i] > '7') throw Error(ErrorCode::IoError, "tar: bad octal field");
    v = v * 8 + static_cast<std::uint64_t>(field[i] - '0');
  }
  return v;
}

unsigned checksum(const char* header) {
  unsigned sum = 0;
  for (std::size_t i = 0; i < kBlock; ++i) {
    sum += (i >= 148 && i < 156) ? ' ' : static_cast<unsigned char>(header[i]);
  }
  return sum;
}

}  // namespace

void TarWriter::add(const std::string& name, std::string_view data) {
  std::string prefix, base = name;
  if (name.size() > 100) {
    // Split at a '/' so that the tail fits in 100 and the head in 155.
    const auto cut = name.rfind('/', 155);
    if (cut == std::string::npos || name.size() - cut - 1 > 100 || cut == 0) {
      throw Error(ErrorCode::InvalidArgument, "tar member name too long: " + name);
    }
    prefix = name.substr(0, cut);
    base = name.substr(cut + 1);
  }
  char h[kBlock];
  std::memset(h, 0, sizeof h);
  std::memcpy(h, base.data(), base.size());
  put_octal(h + 100, 8, 0644);
  put_octal(h + 108, 8, 0);
  put_octal(h + 116, 8, 0);
  put_octal(h + 124, 12, data.size());
  put_octal(h + 136, 12, 0);
  h[156] = '0';
  std::memcpy(h + 257, "ustar", 6);
  std::memcpy(h + 263, "00", 2);
  std::memcpy(h + 345, prefix.data(), prefix.size());
  std::snprintf(h + 148, 8, "%06o", checksum(h));
  h[155] = ' ';

  bytes_.append(h, kBlock);
  members_.push_back({name, bytes_.size(), data.size()});
  bytes_.append(data);
  bytes_.append((kBlock - data.size() % kBlock) % kBlock, '\0');
}

std::string TarWriter::finish() {
  bytes_.append(2 * kBlock, '\0');
  return std::move(bytes_);
}

std::vector<TarEntry> read_tar(std::string_view a) {
  std::vector<TarEntry> out;
  std::size_t pos = 0;
  while (true) {
    if (pos + kBlock > a.size()) throw Error(ErrorCode::IoError, "tar: truncated header");
    const char* h = a.data() + pos;
    if (std::all_of(h, h + kBlock, [](char c) { return c == '\0'; })) break;
    if (get_octal(h + 148, 8) != checksum(h)) throw Error(ErrorCode::IoError, "tar: bad checksum");
    const auto size = get_octal(h + 124, 12);
    std::string name(h, strnlen(h, 100));
    const std::string prefix(h + 345, strnlen(h + 345, 155));
    if (!prefix.empty()) name = prefix + "/" + name;
    pos += kBlock;
    if (pos + size > a.size()) throw Error(ErrorCode::IoError, "tar: truncated member " + name);
    out.push_back({name, std::string(a.substr(pos, size))});
    pos += (size + kBlock - 1) / kBlock * kBlock;
  }
  return out;
}

std::vector<ShardInfo> write_shards(const Manifest& manifest, const std::filesystem::path& out_dir,
                                    std::size_t shard_size) {
  if (shard_size == 0) throw Error(ErrorCode::InvalidArgument, "shard size must be positive");
  std::filesystem::create_directories(out_dir);
  std::vector<ShardInfo> shards;
  const auto read_ref = [&](const std::string& ref) {
    const auto p = manifest.resolve(ref);
    if (!std::filesystem::is_regular_file(p)) throw Error(ErrorCode::NotFound, "missing file " + p.string());
    return read_file(p);
  };

  auto it = manifest.episodes().begin();
  const auto end = manifest.episodes().end();
  while (it != end) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "shard-%05zu", shards.size());
    ShardInfo info;
    info.tar = out_dir / (std::string(stem) + ".tar");
    info.index = out_dir / (std::string(stem) + ".index.json");
    TarWriter tar;
    json index_eps = json::array();
    for (std::size_t n = 0; n < shard_size && it != end; ++n, ++it) {
      const auto& [id, e] = *it;
      const auto first = tar.members().size();
      tar.add(id + "/episode.json", episode::to_json(e).dump());
      tar.add(id + "/audio.wav", read_ref(e.audio_ref));
      for (std::size_t k = 0; k < e.frame_refs.size(); ++k) {
        const auto name = std::filesystem::path(e.frame_refs[k]).filename().string();
        tar.add(id + "/frames/" + std::to_string(k) + "-" + name, read_ref(e.frame_refs[k]));
      }
      json members = json::array();
      for (auto m = first; m < tar.members().size(); ++m) {
        const auto& mem = tar.members()[m];
        members.push_back({{"name", mem.name}, {"offset", mem.offset}, {"size", mem.size}});
      }
      index_eps.push_back({{"id", id}, {"members", members}});
      info.ids.push_back(id);
    }
    write_file_atomic(info.tar, tar.finish());
    const json index{{"shard", info.tar.filename().string()}, {"episodes", index_eps}};
    write_file_atomic(info.index, index.dump(2) + "\n");
    shards.push_back(std::move(info));
  }
  return shards;
}

}  // namespace forge::dataset
