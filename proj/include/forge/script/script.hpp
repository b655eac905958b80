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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "forge/episode/episode.hpp"
#include "forge/episode/markup.hpp"
#include "forge/episode/types.hpp"
#include "forge/script/chat.hpp"
#include "forge/script/templates.hpp"

namespace forge::script {

using episode::InstructionType;

// One base trajectory to be turned into contextual-instruction episodes.
struct TrajectorySeed {
  std::string source_id;
  std::string original_instruction;
  std::string first_frame_ref;
  std::vector<std::string> frame_refs;  // includes first_frame_ref
  std::vector<episode::ActionFrame> actions;
  std::string dataset;
  bool low_information = false;  // set by exporters that score visual state change
  std::string skill;
  std::vector<std::string> objects;
};

// Missing skill/objects are filled in by the verb-noun extractor; a missing
// frame_refs list defaults to [first_frame_ref]. Throws SchemaError.
TrajectorySeed seed_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrajectorySeed& seed);

enum class DropReason {
  EmptyInstruction,
  TooFewTokens,
  NoObjectNoun,
  DuplicateSource,
  LowInformationState,
};

// EMPTY_INSTRUCTION, TOO_FEW_TOKENS, ...
std::string_view to_string(DropReason r);

struct FilterDecision {
  std::optional<DropReason> drop;
  bool keep() const { return !drop.has_value(); }
};

inline constexpr std::size_t kMinInstructionTokens = 3;

// Stateless rules only (no dedup).
FilterDecision filter_trajectory(const TrajectorySeed& seed);

// Adds dedup by source id over everything seen so far.
class SeedFilter {
 public:
  FilterDecision operator()(const TrajectorySeed& seed);

 private:
  std::set<std::string> seen_;
};

// Family roles a generated speaker may take, with their demographics.
struct RoleDemographic {
  std::string role;
  episode::AgeGroup age_group;
  episode::Gender gender;
};

const std::vector<RoleDemographic>& known_roles();
// Maps free text such as "role: grandma, name: Rose" or "the father" to a
// known role; nullopt when nothing matches.
std::optional<RoleDemographic> infer_role(std::string_view info);

struct SpeakerInfo {
  episode::Speaker tag = episode::Speaker::S1;
  std::string role;
  std::string name;
  episode::AgeGroup age_group = episode::AgeGroup::Adult;
  episode::Gender gender = episode::Gender::Female;

  bool operator==(const SpeakerInfo&) const = default;
};

struct ScriptDraft {
  std::string scene_description;
  episode::MarkupDoc conversation;  // human turns only, no [ACT]
  std::vector<SpeakerInfo> speaker_infos;
  std::optional<std::string> selected_sound_type;
  InstructionType instruction_type = InstructionType::Dyadic;
};

struct TurnPair {
  std::string user;   // "<conv>" for the first pair, else one tagged human turn
  std::string robot;  // plain robot text; the last one ends with [ACT]

  bool operator==(const TurnPair&) const = default;
};

inline constexpr std::string_view kConvPlaceholder = "<conv>";

struct ConversationPlan {
  ScriptDraft draft;
  std::vector<TurnPair> extension_turns;
  bool final_robot_turn_has_act = false;

  // Draft turns followed by the extension, with [Robot] turns; exactly one
  // [ACT] at the end.
  episode::MarkupDoc full_conversation() const;
};

struct IntentVerdict {
  bool pass = false;
  std::string inferred;
};

// Everything a synthesis prompt may need beyond the seed.
struct PromptContext {
  std::vector<SpeakerInfo> identities;  // Identity / Dyadic / Triadic casts
  std::vector<std::string> sound_types; // offered to NonVerbal prompts
};

// Template id for a contextual type ("sentiment", ...). DirectText has none.
std::string template_id(InstructionType t);

// Throws ServiceError, SchemaError, RuleViolation, MissingTemplate.
ScriptDraft synthesize_dialogue(const TrajectorySeed& seed, InstructionType itype,
                                ChatClient& client, const TemplateSet& templates,
                                const PromptContext& context);

// The DirectText retention draft: the instruction spoken plainly by S1.
ScriptDraft direct_text_draft(const TrajectorySeed& seed, const SpeakerInfo& speaker);
ConversationPlan direct_text_plan(const ScriptDraft& draft, const std::string& instruction);

// Throws ServiceError, SchemaError, MissingActTag, PlaceholderMissing,
// RuleViolation (ambiguity).
ConversationPlan extend_interaction(const ScriptDraft& draft, const std::string& instruction,
                                    ChatClient& client, const TemplateSet& templates);

// Throws ServiceError, SchemaError.
IntentVerdict validate_intent(const ConversationPlan& plan, const std::string& original_instruction,
                              ChatClient& client, const TemplateSet& templates);

// Lowercase, punctuation stripped, articles dropped, whitespace collapsed.
std::string normalize_intent(std::string_view text);
bool intents_match(std::string_view a, std::string_view b);

// Deterministic post-hoc checks; each entry is "CODE: detail".
std::vector<std::string> draft_violations(const ScriptDraft& draft, const std::string& instruction,
                                          const std::vector<std::string>& offered_sounds = {});
std::vector<std::string> plan_violations(const ConversationPlan& plan,
                                         const std::string& instruction);

// Parses a model reply that should hold one JSON value; tolerates code fences
// and prose around the value. Throws SchemaError.
nlohmann::json parse_reply_json(std::string_view reply);

// ---- stage runner --------------------------------------------------------

struct StageConfig {
  std::vector<InstructionType> types{episode::kAllInstructionTypes.begin(),
                                     episode::kAllInstructionTypes.end()};
  std::size_t expansion = 2;  // contextual variants per kept trajectory
  std::uint64_t seed = 0;
  std::vector<std::string> sound_types;
  bool judge = true;
};

struct DraftRecord {
  std::string id;
  TrajectorySeed seed;
  ConversationPlan plan;
  IntentVerdict intent;
};

nlohmann::json to_json(const DraftRecord& r);
// Throws SchemaError.
DraftRecord draft_record_from_json(const nlohmann::json& j);

struct Rejection {
  std::string id;       // planned episode id, or the source id for filter drops
  std::string code;     // DropReason name, error code or INTENT_MISMATCH
  std::string message;
};

struct StageReport {
  std::vector<DraftRecord> accepted;
  std::vector<Rejection> rejected;
};

// Filters the seeds, assigns types round-robin (`expansion` per kept seed),
// then synthesizes, extends and validates each episode. Errors on a single
// episode become rejections; the report is ordered by input.
StageReport run_script_stage(const std::vector<TrajectorySeed>& seeds, const StageConfig& config,
                             ChatClient& client, const TemplateSet& templates);

}  // namespace forge::script
