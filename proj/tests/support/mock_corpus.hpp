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

// Canned chat replies for offline scripting runs: for every seed and
// contextual type a synthesis reply that obeys the per-type rules, one
// extension reply and one judge reply.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/common/rng.hpp"
#include "forge/script/chat.hpp"
#include "forge/episode/lexicon.hpp"
#include "forge/script/script.hpp"

namespace forge::synth {

inline std::string main_object(const script::TrajectorySeed& seed) {
  return seed.objects.empty() ? std::string("thing") : seed.objects.front();
}

inline nlohmann::json synthesis_reply(const script::TrajectorySeed& seed, episode::InstructionType t,
                                      const std::string& sound) {
  using episode::InstructionType;
  const auto obj = main_object(seed);
  nlohmann::json j;
  switch (t) {
    case InstructionType::Sentiment:
      j["conversation"] = "[S1] Should we start with the dishes? [S2] [SentimentCue] Ugh, not now. "
                          "[S1] Okay, what about the " + obj + " then? [S2] Mm, yes, that one.";
      j["speaker1_info"] = "role: mom, name: Ana";
      j["speaker2_info"] = "role: son, name: Leo";
      break;
    case InstructionType::Overlapping:
      j["conversation"] = "[S1] Do you want the towel or [Overlap]the " + obj +
                          "? [Overlap_S2] The " + obj + ", definitely!";
      j["speaker1_info"] = "role: grandpa, name: Walt";
      j["speaker2_info"] = "role: daughter, name: Mia";
      break;
    case InstructionType::NonVerbal:
      j["conversation"] = "[S1] If you hear the " + sound + ", sort out the " + obj +
                          "; otherwise leave it. [S2] Sure, we'll wait and see. [Sound]";
      j["speaker1_info"] = "role: dad, name: Sam";
      j["speaker2_info"] = "role: grandma, name: Rose";
      j["selected_sound_type"] = sound;
      break;
    case InstructionType::Identity:
      j["conversation"] = "[S1] Um, I'd love the " + obj + " sorted out. [S2] Uh, I'd rather we "
                          "left it for later. [S3] Hmm, I'm with the first one.";
      break;
    case InstructionType::Dyadic:
      j["conversation"] = "[S1] Hmm, look at the " + obj + " over there. [S2] Um, yeah, I want "
                          "that handled before dinner.";
      break;
    case InstructionType::Triadic:
      j["conversation"] = "[S1] The " + obj + " again? [S2] Uh, not my fault. [S3] Well, I'd "
                          "like it dealt with now.";
      break;
    case InstructionType::DirectText:
      break;
  }
  j["scene_description"] = "A kitchen counter with a " + obj + ".";
  return j;
}

inline nlohmann::json extension_reply(const script::TrajectorySeed& seed) {
  return nlohmann::json{
      {"conversation",
       nlohmann::json::array(
           {{{"user", "<conv>"}, {"robot", "Should I take care of the " + main_object(seed) + "?"}},
            {{"user", "[S2] Uh, yes, go ahead."},
             {"robot", "Alright, I will " + seed.original_instruction + " now. [ACT]"}}})}};
}

inline std::string confirmation(const script::TrajectorySeed& seed) {
  return "I will " + seed.original_instruction + " now.";
}

// Rules for longer instructions come first so a seed whose instruction
// contains another's still matches its own rule.
inline std::vector<script::MockChatClient::Rule> mock_rules(
    std::vector<script::TrajectorySeed> seeds, const std::string& sound) {
  std::stable_sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) {
    return a.original_instruction.size() > b.original_instruction.size();
  });
  std::vector<script::MockChatClient::Rule> rules;
  for (const auto& s : seeds) {
    for (auto t : episode::kAllInstructionTypes) {
      if (t == episode::InstructionType::DirectText) continue;
      rules.push_back({script::template_id(t), {"Robot task: " + s.original_instruction + "\n"},
                       synthesis_reply(s, t, sound).dump()});
    }
    rules.push_back({"extend", {"Task the robot should end up doing: " + s.original_instruction + "\n"},
                     extension_reply(s).dump()});
    rules.push_back({"judge", {confirmation(s)},
                     nlohmann::json{{"instruction", s.original_instruction}}.dump()});
  }
  return rules;
}

// Distinct household instructions with short smooth trajectories.
inline std::vector<script::TrajectorySeed> household_seeds(std::size_t n, std::uint64_t seed,
                                                           std::size_t frames = 12) {
  static const std::vector<std::string> patterns{
      "pick up the %", "put the % in the basket", "move the % onto the towel",
      "place the % on the plate", "push the % to the left", "put the % in the top drawer"};
  static const std::vector<std::string> objects{
      "banana", "apple", "black bowl", "mug", "ketchup", "sponge", "cream cheese box", "pot",
      "alphabet soup", "orange", "lemon", "spatula", "milk", "carrot", "tomato sauce", "ramekin"};
  Rng rng(seed);
  std::vector<script::TrajectorySeed> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pat = patterns[i % patterns.size()];
    const auto& obj = objects[(i / patterns.size() + i) % objects.size()];
    script::TrajectorySeed s;
    s.source_id = "traj" + std::to_string(1000 + i);
    s.original_instruction = pat.substr(0, pat.find('%')) + obj + pat.substr(pat.find('%') + 1);
    s.first_frame_ref = "frames/" + s.source_id + "/000.png";
    s.frame_refs = {s.first_frame_ref, "frames/" + s.source_id + "/001.png"};
    s.dataset = "synthetic";
    const double phase = rng.uniform(0.0, 6.283);
    for (std::size_t t = 0; t < frames; ++t) {
      episode::ActionFrame f;
      for (std::size_t d = 0; d < 6; ++d) {
        f.delta.push_back(0.5 * std::sin(phase + 0.3 * static_cast<double>(t) + static_cast<double>(d)));
      }
      f.delta.push_back(t < frames / 2 ? -1.0 : 1.0);
      s.actions.push_back(std::move(f));
    }
    const auto vn = episode::extract_verb_noun(s.original_instruction);
    s.skill = vn.skill;
    s.objects = vn.objects;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace forge::synth
