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

#include "forge/dataset/manifest.hpp"

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"

namespace forge::dataset {

using nlohmann::json;

Manifest Manifest::open(const std::filesystem::path& path) {
  Manifest m;
  m.path_ = path;
  if (!std::filesystem::exists(path)) return m;
  try {
    for_each_line(path, [&](std::string_view line, std::size_t no) {
      if (trim(line).empty()) return;
      const auto j = json::parse(line, nullptr, false);
      if (j.is_discarded()) {
        throw Error(ErrorCode::CorruptLine, path.string() + ":" + std::to_string(no) + ": not JSON",
                    static_cast<std::int64_t>(no));
      }
      episode::Episode e;
      try {
        e = episode::episode_from_json(j);
      } catch (const Error& ex) {
        throw Error(ErrorCode::CorruptLine, path.string() + ":" + std::to_string(no) + ": " + ex.what(),
                    static_cast<std::int64_t>(no));
      }
      const auto id = e.id;
      if (!m.episodes_.emplace(id, std::move(e)).second) {
        throw Error(ErrorCode::DuplicateId, "episode " + id + " repeated at line " + std::to_string(no),
                    static_cast<std::int64_t>(no));
      }
    });
  } catch (const std::ios_base::failure& ex) {
    throw Error(ErrorCode::IoError, path.string() + ": " + ex.what());
  }
  return m;
}

const episode::Episode& Manifest::get(const std::string& id) const {
  const auto it = episodes_.find(id);
  if (it == episodes_.end()) throw Error(ErrorCode::NotFound, "no episode " + id);
  return it->second;
}

void Manifest::add(episode::Episode e) {
  const auto report = episode::validate_episode(e);
  if (!report.ok()) {
    std::string codes;
    for (const auto& i : report.issues) codes += (codes.empty() ? "" : ",") + i.code;
    throw Error(ErrorCode::InvalidArgument, "episode " + e.id + " is invalid: " + codes);
  }
  if (contains(e.id)) throw Error(ErrorCode::DuplicateId, "episode " + e.id + " already present");
  const auto id = e.id;
  episodes_.emplace(id, std::move(e));
}

void Manifest::save() const {
  std::string out;
  for (const auto& [id, e] : episodes_) {
    out += episode::to_json(e).dump();
    out += '\n';
  }
  if (!dir().empty()) std::filesystem::create_directories(dir());
  write_file_atomic(path_, out);
}

std::map<episode::InstructionType, std::size_t> Manifest::type_counts() const {
  std::map<episode::InstructionType, std::size_t> counts;
  for (auto t : episode::kAllInstructionTypes) counts[t] = 0;
  for (const auto& [id, e] : episodes_) ++counts[e.instruction_type];
  return counts;
}

std::filesystem::path Manifest::resolve(const std::string& ref) const {
  const std::filesystem::path p(ref);
  return p.is_absolute() ? p : dir() / p;
}

void write_episode(const episode::Episode& e, Manifest& manifest) {
  manifest.add(e);
  manifest.save();
}

episode::Episode read_episode(const std::string& id, const std::filesystem::path& manifest_path) {
  if (!std::filesystem::exists(manifest_path)) {
    throw Error(ErrorCode::NotFound, "manifest " + manifest_path.string() + " not found");
  }
  return Manifest::open(manifest_path).get(id);
}

}  // namespace forge::dataset
