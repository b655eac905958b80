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

#include "forge/dataset/stats.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "forge/audio/waveform.hpp"
#include "forge/episode/lexicon.hpp"

namespace forge::dataset {

using nlohmann::json;

void Histogram::add(double value) {
  const auto bin = static_cast<std::size_t>(std::max(0.0, std::floor(value / bin_width)));
  if (counts.size() <= bin) counts.resize(bin + 1, 0);
  ++counts[bin];
}

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

StatsReport compute_stats(const Manifest& manifest) {
  StatsReport r;
  for (auto t : episode::kAllInstructionTypes) r.per_type[t] = 0;
  std::set<std::string> trajectories, skills, objects, speakers, backgrounds;
  for (const auto& [id, e] : manifest.episodes()) {
    ++r.episodes;
    ++r.per_type[e.instruction_type];
    trajectories.insert(e.provenance.dataset + "/" + e.provenance.trajectory_id);
    const auto vn = episode::extract_verb_noun(e.original_instruction);
    if (!vn.skill.empty()) skills.insert(vn.skill);
    objects.insert(vn.objects.begin(), vn.objects.end());
    for (const auto& s : e.speakers) speakers.insert(s.id);
    if (e.mix_plan) {
      r.sound_events += e.mix_plan->event_insertions.size();
      if (!e.mix_plan->background_id.empty()) backgrounds.insert(e.mix_plan->background_id);
    }
    r.action_frames.add(static_cast<double>(e.actions.size()));
    try {
      const auto info = audio::probe_wav(manifest.resolve(e.audio_ref));
      r.audio_seconds.add(static_cast<double>(info.frames) / info.rate);
    } catch (const std::exception&) {
      ++r.missing_audio;
    }
  }
  r.base_trajectories = trajectories.size();
  r.skills = skills.size();
  r.objects = objects.size();
  r.speakers = speakers.size();
  r.backgrounds = backgrounds.size();
  return r;
}

StatsReport compute_stats(const std::filesystem::path& manifest_path) {
  return compute_stats(Manifest::open(manifest_path));
}

json to_json(const StatsReport& r) {
  json per_type = json::object();
  for (const auto& [t, n] : r.per_type) per_type[std::string(episode::to_string(t))] = n;
  const auto hist = [](const Histogram& h) {
    return json{{"bin_width", h.bin_width}, {"counts", h.counts}};
  };
  return json{{"totals",
               {{"episodes", r.episodes},
                {"base_trajectories", r.base_trajectories},
                {"skills", r.skills},
                {"objects", r.objects},
                {"speakers", r.speakers},
                {"sound_events", r.sound_events},
                {"backgrounds", r.backgrounds},
                {"missing_audio", r.missing_audio}}},
              {"per_type", per_type},
              {"audio_seconds", hist(r.audio_seconds)},
              {"action_frames", hist(r.action_frames)}};
}

}  // namespace forge::dataset
