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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/episode/markup.hpp"
#include "forge/episode/types.hpp"

namespace forge::episode {

inline constexpr std::size_t kActionDims = 7;  // dx dy dz droll dpitch dyaw gripper
inline constexpr double kActionClip = 1.0;

// One end-effector delta command. Kept as a vector so that malformed input
// (wrong arity) survives loading and is reported by validate_episode.
struct ActionFrame {
  std::vector<double> delta;

  bool operator==(const ActionFrame&) const = default;
};

enum class EventMode { GapInsert, Overlay };

struct EventInsertion {
  std::size_t anchor_index = 0;  // n-th [Sound] anchor of the conversation
  std::string clip_id;
  EventMode mode = EventMode::GapInsert;

  bool operator==(const EventInsertion&) const = default;
};

struct MixPlan {
  std::string background_id;
  double target_snr_db = 0.0;
  std::vector<EventInsertion> event_insertions;

  bool operator==(const MixPlan&) const = default;
};

struct Provenance {
  std::string dataset;
  std::string trajectory_id;

  bool operator==(const Provenance&) const = default;
};

// One (conversation, observations, actions) sample. `conversation` holds the
// canonical markup text; it must contain exactly one [ACT].
struct Episode {
  std::string id;
  InstructionType instruction_type = InstructionType::Dyadic;
  std::string original_instruction;
  std::string conversation;
  std::string audio_ref;
  std::vector<std::string> frame_refs;
  std::vector<ActionFrame> actions;
  std::vector<SpeakerProfile> speakers;
  std::optional<MixPlan> mix_plan;
  Provenance provenance;

  bool operator==(const Episode&) const = default;
};

struct ValidationIssue {
  std::string code;  // ACTION_DIM, ACT_MULTIPLICITY, ...
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(std::string_view code) const;
};

ValidationReport validate_episode(const Episode& e);

// Manifest line schema. Throws forge::Error(SchemaError) on bad input.
nlohmann::json to_json(const Episode& e);
Episode episode_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpeakerProfile& s);
SpeakerProfile speaker_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MixPlan& m);
MixPlan mix_plan_from_json(const nlohmann::json& j);

std::string_view to_string(EventMode m);

}  // namespace forge::episode
