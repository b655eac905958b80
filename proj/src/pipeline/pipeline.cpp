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

#include "forge/pipeline/pipeline.hpp"

#include <algorithm>
#include <set>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"

namespace forge::pipeline {

using episode::Speaker;
using episode::SpeakerProfile;
using nlohmann::json;

namespace {

template <typename T, typename F>
std::vector<T> load_jsonl(const std::filesystem::path& path, F&& parse) {
  if (!std::filesystem::is_regular_file(path)) throw Error(ErrorCode::NotFound, path.string() + " not found");
  std::vector<T> out;
  for_each_line(path, [&](std::string_view line, std::size_t no) {
    if (trim(line).empty()) return;
    const auto j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw Error(ErrorCode::CorruptLine, path.string() + ":" + std::to_string(no) + ": not JSON",
                  static_cast<std::int64_t>(no));
    }
    try {
      out.push_back(parse(j));
    } catch (const Error& e) {
      throw Error(ErrorCode::CorruptLine, path.string() + ":" + std::to_string(no) + ": " + e.what(),
                  static_cast<std::int64_t>(no));
    }
  });
  return out;
}

std::filesystem::path sidecar(const std::filesystem::path& dir, const std::string& id) {
  return dir / (id + ".json");
}

}  // namespace

std::vector<SpeakerProfile> load_voices(const std::filesystem::path& path) {
  return load_jsonl<SpeakerProfile>(path, [](const json& j) { return episode::speaker_from_json(j); });
}

std::vector<script::DraftRecord> load_drafts(const std::filesystem::path& path) {
  return load_jsonl<script::DraftRecord>(path,
                                         [](const json& j) { return script::draft_record_from_json(j); });
}

std::vector<script::TrajectorySeed> load_seeds(const std::filesystem::path& path) {
  return load_jsonl<script::TrajectorySeed>(path, [](const json& j) { return script::seed_from_json(j); });
}

void save_drafts(const std::vector<script::DraftRecord>& drafts, const std::filesystem::path& path) {
  std::string out;
  for (const auto& d : drafts) out += script::to_json(d).dump() + "\n";
  write_file_atomic(path, out);
}

std::map<Speaker, SpeakerProfile> cast_voices(const std::vector<script::SpeakerInfo>& speakers,
                                              const std::vector<SpeakerProfile>& voices,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::map<Speaker, SpeakerProfile> cast;
  std::set<std::string> used;
  for (const auto& s : speakers) {
    std::vector<const SpeakerProfile*> fresh, any;
    for (const auto& v : voices) {
      if (v.age_group != s.age_group || v.gender != s.gender) continue;
      any.push_back(&v);
      if (!used.count(v.id)) fresh.push_back(&v);
    }
    const auto& pool = fresh.empty() ? any : fresh;
    if (pool.empty()) {
      throw Error(ErrorCode::UnsupportedVoice,
                  "no voice for " + s.role + " (" + std::string(episode::to_string(s.age_group)) +
                      ", " + std::string(episode::to_string(s.gender)) + ")");
    }
    const auto* pick = pool[rng.below(pool.size())];
    used.insert(pick->id);
    cast[s.tag] = *pick;
  }
  return cast;
}

std::vector<StageFailure> run_audio_stage(const std::vector<script::DraftRecord>& drafts,
                                          const std::vector<SpeakerProfile>& voices,
                                          audio::TtsClient& tts, audio::AcousticModel& acoustic,
                                          const audio::ClipCatalog& events,
                                          const audio::ClipCatalog& backgrounds,
                                          const AudioStageConfig& config,
                                          const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<StageFailure> failures;
  for (const auto& d : drafts) {
    try {
      const auto episode_seed = derive_seed(config.seed, d.id);
      audio::RenderRequest req;
      req.episode_id = d.id;
      req.doc = d.plan.full_conversation();
      req.voices = cast_voices(d.plan.draft.speaker_infos, voices, derive_seed(episode_seed, "cast"));
      req.sound_type = d.plan.draft.selected_sound_type;
      req.seed = config.seed;
      const auto result =
          audio::render_episode_audio(req, tts, acoustic, events, backgrounds, config.render);
      audio::write_wav(out_dir / (d.id + ".wav"), result.audio, audio::SampleFormat::Pcm16,
                       derive_seed(episode_seed, "dither"));

      json speakers = json::array();
      for (const auto& [tag, profile] : req.voices) {
        auto j = episode::to_json(profile);
        j["tag"] = std::string(episode::to_string(tag));
        speakers.push_back(j);
      }
      json turns = json::array();
      for (const auto& t : result.turns) {
        turns.push_back({{"turn", t.turn}, {"start", t.start}, {"end", t.end}});
      }
      const json meta{{"id", d.id},
                      {"mix_plan", episode::to_json(result.mix_plan)},
                      {"speakers", speakers},
                      {"turns", turns},
                      {"background_gain", result.gain}};
      write_file_atomic(sidecar(out_dir, d.id), meta.dump(2) + "\n");
    } catch (const Error& e) {
      failures.push_back({d.id, std::string(to_string(e.code())), e.what()});
    }
  }
  return failures;
}

PackResult pack_dataset(const std::vector<script::DraftRecord>& drafts, const PackConfig& config) {
  namespace fs = std::filesystem;
  PackResult result;
  fs::create_directories(config.out_dir);
  // Rebuild from scratch so a re-pack cannot see stale entries.
  for (const auto* sub : {"audio", "frames", "shards"}) fs::remove_all(config.out_dir / sub);
  fs::create_directories(config.out_dir / "audio");
  const auto manifest_path = config.out_dir / "manifest.jsonl";
  fs::remove(manifest_path);
  auto manifest = dataset::Manifest::open(manifest_path);

  for (const auto& d : drafts) {
    try {
      const auto meta_path = sidecar(config.audio_dir, d.id);
      const auto wav = config.audio_dir / (d.id + ".wav");
      if (!fs::is_regular_file(meta_path) || !fs::is_regular_file(wav)) {
        throw Error(ErrorCode::NotFound, "no rendered audio for " + d.id);
      }
      const auto meta = json::parse(read_file(meta_path), nullptr, false);
      if (meta.is_discarded()) throw Error(ErrorCode::SchemaError, meta_path.string() + " is not JSON");

      episode::Episode e;
      e.id = d.id;
      e.instruction_type = d.plan.draft.instruction_type;
      e.original_instruction = d.seed.original_instruction;
      e.conversation = episode::render_markup(d.plan.full_conversation());
      e.audio_ref = "audio/" + d.id + ".wav";
      fs::copy_file(wav, config.out_dir / e.audio_ref, fs::copy_options::overwrite_existing);
      for (std::size_t k = 0; k < d.seed.frame_refs.size(); ++k) {
        fs::path src(d.seed.frame_refs[k]);
        if (src.is_relative()) src = config.frames_root / src;
        if (!fs::is_regular_file(src)) throw Error(ErrorCode::NotFound, "missing frame " + src.string());
        const auto rel = "frames/" + d.seed.source_id + "/" + std::to_string(k) + "-" +
                         src.filename().string();
        fs::create_directories((config.out_dir / rel).parent_path());
        if (!fs::exists(config.out_dir / rel)) fs::copy_file(src, config.out_dir / rel);
        e.frame_refs.push_back(rel);
      }
      e.actions = d.seed.actions;
      for (const auto& s : meta.at("speakers")) e.speakers.push_back(episode::speaker_from_json(s));
      e.mix_plan = episode::mix_plan_from_json(meta.at("mix_plan"));
      e.provenance = {d.seed.dataset, d.seed.source_id};
      manifest.add(std::move(e));
    } catch (const Error& e) {
      result.skipped.push_back({d.id, std::string(to_string(e.code())), e.what()});
    } catch (const json::exception& e) {
      result.skipped.push_back({d.id, "SchemaError", e.what()});
    }
  }
  manifest.save();
  result.episodes = manifest.size();
  result.shards = dataset::write_shards(manifest, config.out_dir / "shards", config.shard_size);
  return result;
}

}  // namespace forge::pipeline
