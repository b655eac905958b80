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

#include "forge/dataset/check.hpp"

#include <set>

#include "forge/audio/waveform.hpp"
#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/dataset/manifest.hpp"

namespace forge::dataset {

using nlohmann::json;

CheckReport check_manifest(const std::filesystem::path& manifest_path) {
  CheckReport r;
  if (!std::filesystem::is_regular_file(manifest_path)) {
    r.io_error = "manifest " + manifest_path.string() + " not found";
    return r;
  }
  Manifest m;
  try {
    m = Manifest::open(manifest_path);
  } catch (const Error& e) {
    r.io_error = e.what();
    return r;
  }
  r.episodes = m.size();
  const auto issue = [&](const std::string& id, std::string code, std::string msg) {
    r.issues.push_back({id, std::move(code), std::move(msg)});
  };

  for (const auto& [id, e] : m.episodes()) {
    for (const auto& i : episode::validate_episode(e).issues) issue(id, i.code, i.message);
    const auto wav = m.resolve(e.audio_ref);
    if (!std::filesystem::is_regular_file(wav)) {
      issue(id, "AUDIO_MISSING", wav.string());
    } else {
      try {
        const auto info = audio::probe_wav(wav);
        if (info.channels != 1 || info.rate != audio::kCanonicalRate || info.format_tag != 1 ||
            info.bits_per_sample != 16) {
          issue(id, "AUDIO_FORMAT",
                std::to_string(info.channels) + " ch, " + std::to_string(info.rate) + " Hz, " +
                    std::to_string(info.bits_per_sample) + " bit, format " +
                    std::to_string(info.format_tag));
        } else if (info.frames == 0) {
          issue(id, "AUDIO_EMPTY", wav.string());
        }
      } catch (const Error& ex) {
        issue(id, "AUDIO_UNREADABLE", ex.what());
      }
    }
    for (const auto& f : e.frame_refs) {
      if (!std::filesystem::is_regular_file(m.resolve(f))) issue(id, "FRAME_MISSING", f);
    }
  }

  std::size_t sum = 0;
  for (const auto& [t, n] : m.type_counts()) sum += n;
  if (sum != m.size()) issue("", "TYPE_COUNTS", "per-type counts do not add up");

  const auto shard_dir = m.dir() / "shards";
  if (std::filesystem::is_directory(shard_dir)) {
    std::multiset<std::string> sharded;
    for (const auto& entry : std::filesystem::directory_iterator(shard_dir)) {
      const auto name = entry.path().filename().string();
      if (name.size() < 11 || name.substr(name.size() - 11) != ".index.json") continue;
      const auto j = json::parse(read_file(entry.path()), nullptr, false);
      if (j.is_discarded() || !j.contains("episodes")) {
        r.io_error = "corrupt shard index " + entry.path().string();
        return r;
      }
      if (!std::filesystem::is_regular_file(shard_dir / j.value("shard", ""))) {
        issue("", "SHARD_MISSING", j.value("shard", ""));
      }
      for (const auto& ep : j.at("episodes")) sharded.insert(ep.value("id", ""));
    }
    std::multiset<std::string> ids;
    for (const auto& [id, e] : m.episodes()) ids.insert(id);
    if (sharded != ids) issue("", "SHARD_MISMATCH", "shard indexes do not cover the manifest exactly");
  }
  return r;
}

json to_json(const CheckReport& r) {
  json issues = json::array();
  for (const auto& i : r.issues) {
    issues.push_back({{"episode_id", i.episode_id}, {"code", i.code}, {"message", i.message}});
  }
  json out{{"episodes", r.episodes}, {"violations", r.issues.size()}, {"issues", issues},
           {"exit_code", r.exit_code()}};
  if (!r.io_error.empty()) out["io_error"] = r.io_error;
  return out;
}

}  // namespace forge::dataset
