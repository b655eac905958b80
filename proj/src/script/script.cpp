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

#include "forge/script/script.hpp"

#include <algorithm>
#include <cctype>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"
#include "forge/episode/lexicon.hpp"

namespace forge::script {

using episode::AgeGroup;
using episode::Gender;
using episode::MarkupDoc;
using episode::Speaker;
using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<Speaker> speaker_from_tag(std::string_view s) {
  if (s == "S1") return Speaker::S1;
  if (s == "S2") return Speaker::S2;
  if (s == "S3") return Speaker::S3;
  return std::nullopt;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) schema(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::string string_field(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) schema(std::string("field \"") + name + "\" must be a string");
  return v.get<std::string>();
}

MarkupDoc parse_reply_markup(const std::string& text) {
  try {
    return episode::parse_markup(text);
  } catch (const Error& e) {
    schema(std::string("conversation markup: ") + e.what());
  }
}

json actions_to_json(const std::vector<episode::ActionFrame>& actions) {
  json out = json::array();
  for (const auto& a : actions) out.push_back(a.delta);
  return out;
}

std::vector<episode::ActionFrame> actions_from_json(const json& j) {
  if (!j.is_array()) schema("\"actions\" must be an array");
  std::vector<episode::ActionFrame> out;
  for (const auto& row : j) {
    if (!row.is_array()) schema("action frame must be an array");
    episode::ActionFrame f;
    for (const auto& v : row) {
      if (!v.is_number()) schema("action component must be a number");
      f.delta.push_back(v.get<double>());
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::string> string_list(const json& j, const char* name) {
  if (!j.is_array()) schema(std::string("\"") + name + "\" must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) schema(std::string("\"") + name + "\" must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

// Padded so that matches fall on word boundaries.
bool contains_phrase(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return false;
  return (" " + haystack + " ").find(" " + needle + " ") != std::string::npos;
}

const std::set<std::string>& agent_words() {
  static const std::set<std::string> words{"robot", "robots", "agent", "agents", "assistant",
                                           "assistants"};
  return words;
}

std::size_t required_speakers(InstructionType t) {
  switch (t) {
    case InstructionType::Identity:
    case InstructionType::Triadic:
      return 3;
    case InstructionType::Dyadic:
    case InstructionType::Sentiment:
    case InstructionType::NonVerbal:
      return 2;
    case InstructionType::DirectText:
      return 1;
    case InstructionType::Overlapping:
      return 0;  // two or three
  }
  return 0;
}

const SpeakerInfo* info_for(const std::vector<SpeakerInfo>& infos, Speaker s) {
  for (const auto& i : infos) {
    if (i.tag == s) return &i;
  }
  return nullptr;
}

SpeakerInfo make_info(Speaker tag, const RoleDemographic& r, std::string name = {}) {
  return SpeakerInfo{tag, r.role, std::move(name), r.age_group, r.gender};
}

std::string describe(const SpeakerInfo& s) {
  return s.role + " (" + std::string(episode::to_string(s.age_group)) + ", " +
         std::string(episode::to_string(s.gender)) + ")";
}

// "role: mom, name: Anna" -> "Anna"; empty when absent.
std::string name_from_info(const std::string& info) {
  const auto l = lower(info);
  const auto at = l.find("name:");
  if (at == std::string::npos) return {};
  auto rest = info.substr(at + 5);
  const auto end = rest.find_first_of(",;\n");
  if (end != std::string::npos) rest.resize(end);
  return trim(rest);
}

json speaker_info_json(const SpeakerInfo& s) {
  return json{{"tag", std::string(episode::to_string(s.tag))},
              {"role", s.role},
              {"name", s.name},
              {"age_group", std::string(episode::to_string(s.age_group))},
              {"gender", std::string(episode::to_string(s.gender))}};
}

SpeakerInfo speaker_info_from_json(const json& j) {
  SpeakerInfo s;
  const auto tag = speaker_from_tag(string_field(j, "tag"));
  if (!tag) schema("speaker tag must be S1, S2 or S3");
  s.tag = *tag;
  s.role = string_field(j, "role");
  if (j.contains("name")) s.name = string_field(j, "name");
  const auto age = episode::parse_age_group(string_field(j, "age_group"));
  const auto gender = episode::parse_gender(string_field(j, "gender"));
  if (!age || !gender) schema("bad speaker demographics");
  s.age_group = *age;
  s.gender = *gender;
  return s;
}

// Speakers that appear in the conversation but got no usable info are given
// the first unused role, so every voice can be cast.
void complete_speaker_infos(ScriptDraft& draft) {
  std::set<std::string> used;
  for (const auto& i : draft.speaker_infos) used.insert(i.role);
  for (const auto& t : draft.conversation.turns) {
    if (!episode::is_human(t.speaker) || info_for(draft.speaker_infos, t.speaker)) continue;
    const RoleDemographic* pick = &known_roles().front();
    for (const auto& r : known_roles()) {
      if (!used.count(r.role)) {
        pick = &r;
        break;
      }
    }
    used.insert(pick->role);
    draft.speaker_infos.push_back(make_info(t.speaker, *pick));
  }
  std::sort(draft.speaker_infos.begin(), draft.speaker_infos.end(),
            [](const SpeakerInfo& a, const SpeakerInfo& b) { return a.tag < b.tag; });
}

ChatRequest make_request(const std::string& template_id, std::string prompt) {
  ChatRequest r;
  r.template_id = template_id;
  r.messages.push_back({"system",
                        "You produce household dialogue data for robot learning. Follow the "
                        "requested output format exactly and output nothing else."});
  r.messages.push_back({"user", std::move(prompt)});
  return r;
}

std::string human_text_before_act(const MarkupDoc& doc) {
  std::string all;
  const std::size_t stop = doc.act_marker.value_or(doc.turns.size());
  for (std::size_t k = 0; k < doc.turns.size() && k < stop; ++k) {
    if (!episode::is_human(doc.turns[k].speaker)) continue;
    all += doc.turns[k].text;
    all += ' ';
  }
  return all;
}

}  // namespace

// ---- seeds and filtering --------------------------------------------------

TrajectorySeed seed_from_json(const json& j) {
  if (!j.is_object()) schema("seed must be a JSON object");
  TrajectorySeed s;
  s.source_id = string_field(j, "source_id");
  s.original_instruction = string_field(j, "original_instruction");
  s.first_frame_ref = string_field(j, "first_frame_ref");
  if (j.contains("frame_refs")) s.frame_refs = string_list(j.at("frame_refs"), "frame_refs");
  if (s.frame_refs.empty()) s.frame_refs.push_back(s.first_frame_ref);
  if (j.contains("actions")) s.actions = actions_from_json(j.at("actions"));
  if (j.contains("dataset")) s.dataset = string_field(j, "dataset");
  if (j.contains("low_information")) {
    if (!j.at("low_information").is_boolean()) schema("\"low_information\" must be a boolean");
    s.low_information = j.at("low_information").get<bool>();
  }
  const auto vn = episode::extract_verb_noun(s.original_instruction);
  s.skill = j.contains("skill") ? string_field(j, "skill") : vn.skill;
  s.objects = j.contains("objects") ? string_list(j.at("objects"), "objects") : vn.objects;
  return s;
}

json to_json(const TrajectorySeed& s) {
  return json{{"source_id", s.source_id},
              {"original_instruction", s.original_instruction},
              {"first_frame_ref", s.first_frame_ref},
              {"frame_refs", s.frame_refs},
              {"actions", actions_to_json(s.actions)},
              {"dataset", s.dataset},
              {"low_information", s.low_information},
              {"skill", s.skill},
              {"objects", s.objects}};
}

std::string_view to_string(DropReason r) {
  switch (r) {
    case DropReason::EmptyInstruction: return "EMPTY_INSTRUCTION";
    case DropReason::TooFewTokens: return "TOO_FEW_TOKENS";
    case DropReason::NoObjectNoun: return "NO_OBJECT_NOUN";
    case DropReason::DuplicateSource: return "DUPLICATE_SOURCE";
    case DropReason::LowInformationState: return "LOW_INFORMATION_STATE";
  }
  return "?";
}

FilterDecision filter_trajectory(const TrajectorySeed& seed) {
  if (trim(seed.original_instruction).empty()) return {DropReason::EmptyInstruction};
  if (episode::tokenize_words(seed.original_instruction).size() < kMinInstructionTokens) {
    return {DropReason::TooFewTokens};
  }
  const bool has_object = std::any_of(seed.objects.begin(), seed.objects.end(),
                                      [](const std::string& o) { return episode::is_known_object(o); });
  if (!has_object) return {DropReason::NoObjectNoun};
  if (seed.low_information) return {DropReason::LowInformationState};
  return {};
}

FilterDecision SeedFilter::operator()(const TrajectorySeed& seed) {
  auto d = filter_trajectory(seed);
  if (!d.keep()) return d;
  if (!seen_.insert(seed.source_id).second) return {DropReason::DuplicateSource};
  return d;
}

// ---- roles -----------------------------------------------------------------

const std::vector<RoleDemographic>& known_roles() {
  static const std::vector<RoleDemographic> roles{
      {"mom", AgeGroup::Adult, Gender::Female},      {"dad", AgeGroup::Adult, Gender::Male},
      {"daughter", AgeGroup::Child, Gender::Female}, {"son", AgeGroup::Child, Gender::Male},
      {"grandma", AgeGroup::Senior, Gender::Female}, {"grandpa", AgeGroup::Senior, Gender::Male},
  };
  return roles;
}

std::optional<RoleDemographic> infer_role(std::string_view info) {
  // Synonyms first so "grandmother" is not read as "mother".
  static const std::vector<std::pair<std::string, std::string>> synonyms{
      {"grandmother", "grandma"}, {"granny", "grandma"},     {"grandma", "grandma"},
      {"grandfather", "grandpa"}, {"grandpa", "grandpa"},    {"mother", "mom"},
      {"mom", "mom"},             {"mum", "mom"},            {"wife", "mom"},
      {"father", "dad"},          {"dad", "dad"},            {"husband", "dad"},
      {"daughter", "daughter"},   {"girl", "daughter"},      {"sister", "daughter"},
      {"son", "son"},             {"boy", "son"},            {"brother", "son"},
  };
  const auto words = episode::tokenize_words(info);
  // A "role:" field wins over words elsewhere (names can look like roles).
  const auto l = lower(info);
  std::vector<std::string> scan;
  if (const auto at = l.find("role:"); at != std::string::npos) {
    auto rest = l.substr(at + 5);
    if (const auto end = rest.find_first_of(",;\n"); end != std::string::npos) rest.resize(end);
    scan = episode::tokenize_words(rest);
  }
  for (const auto* list : std::initializer_list<const std::vector<std::string>*>{&scan, &words}) {
    for (const auto& [word, role] : synonyms) {
      if (std::find(list->begin(), list->end(), word) == list->end()) continue;
      for (const auto& r : known_roles()) {
        if (r.role == role) return r;
      }
    }
  }
  return std::nullopt;
}

// ---- plans -----------------------------------------------------------------

MarkupDoc ConversationPlan::full_conversation() const {
  MarkupDoc doc = draft.conversation;
  for (std::size_t i = 0; i < extension_turns.size(); ++i) {
    const auto& pair = extension_turns[i];
    if (i > 0) {
      auto user = episode::parse_markup(pair.user);
      for (auto& t : user.turns) doc.turns.push_back(std::move(t));
    }
    auto robot = episode::parse_markup("[Robot] " + pair.robot);
    for (auto& t : robot.turns) doc.turns.push_back(std::move(t));
    if (robot.act_marker) doc.act_marker = doc.turns.size() - 1;
  }
  return doc;
}

std::string template_id(InstructionType t) {
  if (t == InstructionType::DirectText) {
    throw Error(ErrorCode::MissingTemplate, "direct_text drafts are not generated");
  }
  return std::string(episode::to_string(t));
}

json parse_reply_json(std::string_view reply) {
  std::string text = trim(reply);
  // Strip a ```json fence if present.
  if (text.rfind("```", 0) == 0) {
    const auto nl = text.find('\n');
    const auto end = text.rfind("```");
    if (nl != std::string::npos && end > nl) text = trim(text.substr(nl + 1, end - nl - 1));
  }
  auto parsed = json::parse(text, nullptr, false);
  if (!parsed.is_discarded()) return parsed;
  // Fall back to the outermost object or array in the text.
  const auto open = text.find_first_of("{[");
  const auto close = text.find_last_of("}]");
  if (open != std::string::npos && close != std::string::npos && close > open) {
    parsed = json::parse(text.substr(open, close - open + 1), nullptr, false);
    if (!parsed.is_discarded()) return parsed;
  }
  schema("reply is not JSON");
}

// ---- validators ------------------------------------------------------------

std::vector<std::string> draft_violations(const ScriptDraft& draft, const std::string& instruction,
                                          const std::vector<std::string>& offered_sounds) {
  std::vector<std::string> out;
  const auto& doc = draft.conversation;
  const auto t = draft.instruction_type;
  if (doc.turns.empty()) out.push_back("EMPTY_CONVERSATION: no turns");
  if (doc.act_marker || episode::count_act_tags(episode::render_markup(doc)) > 0) {
    out.push_back("ACT_IN_DRAFT: drafts must not contain [ACT]");
  }
  for (const auto& turn : doc.turns) {
    if (!episode::is_human(turn.speaker)) {
      out.push_back("ROBOT_IN_DRAFT: drafts contain only family members");
      break;
    }
  }

  const auto speakers = doc.human_speaker_count();
  const auto want = required_speakers(t);
  if (want != 0 && speakers != want) {
    out.push_back("SPEAKER_COUNT: " + std::string(episode::to_string(t)) + " needs " +
                  std::to_string(want) + " speakers, got " + std::to_string(speakers));
  }
  if (t == InstructionType::Overlapping) {
    if (speakers < 2) out.push_back("SPEAKER_COUNT: overlapping needs at least 2 speakers");
    if (doc.overlap_count() == 0) out.push_back("NO_OVERLAP: overlapping needs an [Overlap] span");
  }
  if (t == InstructionType::NonVerbal) {
    if (!draft.selected_sound_type || trim(*draft.selected_sound_type).empty()) {
      out.push_back("NO_SOUND_TYPE: nonverbal needs selected_sound_type");
    } else if (!offered_sounds.empty()) {
      const auto chosen = lower(trim(*draft.selected_sound_type));
      const bool offered = std::any_of(offered_sounds.begin(), offered_sounds.end(),
                                       [&](const std::string& s) { return lower(s) == chosen; });
      if (!offered) out.push_back("UNKNOWN_SOUND_TYPE: " + *draft.selected_sound_type);
    }
    if (doc.sound_anchor_count() == 0) out.push_back("NO_SOUND_ANCHOR: nonverbal needs [Sound]");
  }
  if (t == InstructionType::Sentiment) {
    std::size_t cues = 0;
    for (const auto& turn : doc.turns) cues += turn.sentiment_cues.size();
    if (cues == 0) out.push_back("NO_SENTIMENT_CUE: sentiment needs [SentimentCue]");
  }

  if (t != InstructionType::DirectText) {
    for (const auto& turn : doc.turns) {
      for (const auto& w : episode::tokenize_words(turn.text)) {
        if (agent_words().count(w)) {
          out.push_back("MENTIONS_AGENT: \"" + w + "\" in a family turn");
          break;
        }
      }
    }
    if (contains_phrase(normalize_intent(human_text_before_act(doc)), normalize_intent(instruction))) {
      out.push_back("AMBIGUITY: the instruction is spoken verbatim");
    }
  }
  return out;
}

std::vector<std::string> plan_violations(const ConversationPlan& plan,
                                         const std::string& instruction) {
  std::vector<std::string> out;
  const auto n = plan.extension_turns.size();
  if (n < 2 || n > 4) out.push_back("TURN_PAIRS: extension needs 2 to 4 pairs");
  if (n == 0 || plan.extension_turns.front().user != kConvPlaceholder) {
    out.push_back("PLACEHOLDER: first pair must start with " + std::string(kConvPlaceholder));
  }
  if (!plan.final_robot_turn_has_act) out.push_back("MISSING_ACT: final robot turn lacks [ACT]");
  MarkupDoc doc;
  try {
    doc = plan.full_conversation();
  } catch (const Error& e) {
    out.push_back(std::string("MARKUP: ") + e.what());
    return out;
  }
  if (const auto bad = episode::check_invariants(doc)) out.push_back("MARKUP: " + *bad);
  if (!doc.act_marker || doc.act_marker != doc.turns.size() - 1) {
    out.push_back("MISSING_ACT: conversation must end with [ACT]");
  }
  if (plan.draft.instruction_type != InstructionType::DirectText &&
      contains_phrase(normalize_intent(human_text_before_act(doc)), normalize_intent(instruction))) {
    out.push_back("AMBIGUITY: the instruction is spoken verbatim before confirmation");
  }
  return out;
}

std::string normalize_intent(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '\'') continue;  // "don't" -> "dont"
    cleaned.push_back(std::isalnum(u) || u >= 0x80 ? static_cast<char>(std::tolower(u)) : ' ');
  }
  std::string out;
  for (const auto& w : split(cleaned, ' ')) {
    if (w.empty() || w == "a" || w == "an" || w == "the") continue;
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

bool intents_match(std::string_view a, std::string_view b) {
  return normalize_intent(a) == normalize_intent(b);
}

// ---- synthesis ---------------------------------------------------------------

ScriptDraft synthesize_dialogue(const TrajectorySeed& seed, InstructionType itype,
                                ChatClient& client, const TemplateSet& templates,
                                const PromptContext& context) {
  const auto id = template_id(itype);
  std::map<std::string, std::string> values{{"instruction", seed.original_instruction},
                                            {"frame_ref", seed.first_frame_ref}};
  const bool cast = itype == InstructionType::Identity || itype == InstructionType::Dyadic ||
                    itype == InstructionType::Triadic;
  if (cast) {
    const auto need = required_speakers(itype);
    if (context.identities.size() < need) {
      throw Error(ErrorCode::InvalidArgument, id + " needs " + std::to_string(need) + " identities");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      values["identity_" + std::to_string(i + 1)] =
          i < context.identities.size() ? describe(context.identities[i]) : "";
    }
    const auto example_id = id + "_example";
    values["example"] = templates.has(example_id) ? trim(templates.raw(example_id)) : "";
  }
  if (itype == InstructionType::NonVerbal) {
    std::string info;
    for (const auto& s : context.sound_types) info += "- " + s + "\n";
    values["sound_info"] = info;
  }

  const auto reply = client.complete(make_request(id, templates.fill(id, values)));
  const auto j = parse_reply_json(reply);
  if (!j.is_object()) schema("reply must be a JSON object");

  ScriptDraft draft;
  draft.instruction_type = itype;
  draft.conversation = parse_reply_markup(string_field(j, "conversation"));
  if (j.contains("scene_description") && j.at("scene_description").is_string()) {
    draft.scene_description = j.at("scene_description").get<std::string>();
  }
  if (j.contains("selected_sound_type")) {
    const auto& v = j.at("selected_sound_type");
    if (!v.is_string()) schema("\"selected_sound_type\" must be a string");
    draft.selected_sound_type = v.get<std::string>();
  }

  if (cast) {
    draft.speaker_infos.assign(context.identities.begin(),
                               context.identities.begin() + static_cast<std::ptrdiff_t>(
                                                                required_speakers(itype)));
  } else {
    for (int k = 1; k <= 3; ++k) {
      const auto key = "speaker" + std::to_string(k) + "_info";
      if (!j.contains(key)) continue;
      const auto& v = j.at(key);
      const std::string info = v.is_string() ? v.get<std::string>() : v.dump();
      if (const auto role = infer_role(info)) {
        draft.speaker_infos.push_back(
            make_info(static_cast<Speaker>(k - 1), *role, name_from_info(info)));
      }
    }
  }
  complete_speaker_infos(draft);

  if (const auto v = draft_violations(draft, seed.original_instruction, context.sound_types);
      !v.empty()) {
    throw Error(ErrorCode::RuleViolation, v.front());
  }
  return draft;
}

ScriptDraft direct_text_draft(const TrajectorySeed& seed, const SpeakerInfo& speaker) {
  ScriptDraft d;
  d.instruction_type = InstructionType::DirectText;
  d.conversation = episode::parse_markup("[S1] " + seed.original_instruction);
  auto s = speaker;
  s.tag = Speaker::S1;
  d.speaker_infos.push_back(s);
  return d;
}

ConversationPlan direct_text_plan(const ScriptDraft& draft, const std::string& instruction) {
  ConversationPlan plan;
  plan.draft = draft;
  std::string task = trim(instruction);
  while (!task.empty() && (task.back() == '.' || task.back() == '!')) task.pop_back();
  if (!task.empty()) task[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(task[0])));
  plan.extension_turns = {{std::string(kConvPlaceholder), "Just to confirm, you want me to " + task + "?"},
                          {"[S1] Yes, please.", "OK, I will do that now. [ACT]"}};
  plan.final_robot_turn_has_act = true;
  return plan;
}

ConversationPlan extend_interaction(const ScriptDraft& draft, const std::string& instruction,
                                    ChatClient& client, const TemplateSet& templates) {
  const std::map<std::string, std::string> values{
      {"scene_description", draft.scene_description},
      {"conversation", episode::render_markup(draft.conversation)},
      {"instruction", instruction}};
  const auto reply = client.complete(make_request("extend", templates.fill("extend", values)));
  auto j = parse_reply_json(reply);
  if (j.is_object()) j = field(j, "conversation");
  if (!j.is_array()) schema("extension must be a list of {user, robot} pairs");
  if (j.size() < 2 || j.size() > 4) {
    schema("extension has " + std::to_string(j.size()) + " turn pairs, expected 2 to 4");
  }

  ConversationPlan plan;
  plan.draft = draft;
  for (const auto& item : j) {
    plan.extension_turns.push_back({trim(string_field(item, "user")), trim(string_field(item, "robot"))});
  }
  if (plan.extension_turns.front().user != kConvPlaceholder) {
    throw Error(ErrorCode::PlaceholderMissing,
                "first pair must have user \"" + std::string(kConvPlaceholder) + "\"");
  }
  for (std::size_t i = 0; i < plan.extension_turns.size(); ++i) {
    const auto& pair = plan.extension_turns[i];
    const bool last = i + 1 == plan.extension_turns.size();
    if (i > 0) {
      if (pair.user.find(kConvPlaceholder) != std::string::npos) schema("placeholder repeated");
      const auto user = parse_reply_markup(pair.user);
      if (user.turns.size() != 1 || !episode::is_human(user.turns[0].speaker)) {
        schema("pair " + std::to_string(i) + ": user must be one tagged family turn");
      }
    }
    const auto acts = episode::count_act_tags(pair.robot);
    const bool ends_with_act = pair.robot.size() >= 5 &&
                               pair.robot.compare(pair.robot.size() - 5, 5, "[ACT]") == 0;
    if (last && !ends_with_act) throw Error(ErrorCode::MissingActTag, "final robot turn lacks [ACT]");
    if (acts > (last ? 1u : 0u)) schema("[ACT] may only end the final robot turn");
    const auto robot = parse_reply_markup("[Robot] " + pair.robot);
    if (robot.turns.size() != 1) schema("robot text must not contain speaker tags");
  }
  plan.final_robot_turn_has_act = true;

  if (const auto v = plan_violations(plan, instruction); !v.empty()) {
    throw Error(ErrorCode::RuleViolation, v.front());
  }
  return plan;
}

IntentVerdict validate_intent(const ConversationPlan& plan, const std::string& original_instruction,
                              ChatClient& client, const TemplateSet& templates) {
  const std::map<std::string, std::string> values{
      {"conversation", episode::render_markup(plan.full_conversation())}};
  const auto reply = client.complete(make_request("judge", templates.fill("judge", values)));
  const auto j = parse_reply_json(reply);
  const auto inferred = j.is_string() ? j.get<std::string>() : string_field(j, "instruction");
  return IntentVerdict{intents_match(inferred, original_instruction), inferred};
}

// ---- records -------------------------------------------------------------------

json to_json(const DraftRecord& r) {
  const auto& d = r.plan.draft;
  json speakers = json::array();
  for (const auto& s : d.speaker_infos) speakers.push_back(speaker_info_json(s));
  json ext = json::array();
  for (const auto& p : r.plan.extension_turns) ext.push_back({{"user", p.user}, {"robot", p.robot}});
  return json{{"id", r.id},
              {"instruction_type", std::string(episode::to_string(d.instruction_type))},
              {"scene_description", d.scene_description},
              {"draft", episode::render_markup(d.conversation)},
              {"speakers", speakers},
              {"selected_sound_type", d.selected_sound_type ? json(*d.selected_sound_type) : json()},
              {"extension", ext},
              {"conversation", episode::render_markup(r.plan.full_conversation())},
              {"intent", {{"pass", r.intent.pass}, {"inferred", r.intent.inferred}}},
              {"seed", to_json(r.seed)}};
}

DraftRecord draft_record_from_json(const json& j) {
  if (!j.is_object()) schema("draft record must be a JSON object");
  DraftRecord r;
  r.id = string_field(j, "id");
  r.seed = seed_from_json(field(j, "seed"));
  auto& d = r.plan.draft;
  const auto type = episode::parse_instruction_type(string_field(j, "instruction_type"));
  if (!type) schema("unknown instruction_type");
  d.instruction_type = *type;
  d.scene_description = j.value("scene_description", "");
  d.conversation = parse_reply_markup(string_field(j, "draft"));
  for (const auto& s : field(j, "speakers")) d.speaker_infos.push_back(speaker_info_from_json(s));
  if (j.contains("selected_sound_type") && j.at("selected_sound_type").is_string()) {
    d.selected_sound_type = j.at("selected_sound_type").get<std::string>();
  }
  for (const auto& p : field(j, "extension")) {
    r.plan.extension_turns.push_back({string_field(p, "user"), string_field(p, "robot")});
  }
  r.plan.final_robot_turn_has_act = !r.plan.extension_turns.empty() &&
                                    episode::count_act_tags(r.plan.extension_turns.back().robot) == 1;
  if (j.contains("intent")) {
    const auto& in = j.at("intent");
    r.intent.pass = in.value("pass", false);
    r.intent.inferred = in.value("inferred", "");
  }
  return r;
}

// ---- stage runner -------------------------------------------------------------

StageReport run_script_stage(const std::vector<TrajectorySeed>& seeds, const StageConfig& config,
                             ChatClient& client, const TemplateSet& templates) {
  if (config.types.empty()) throw Error(ErrorCode::InvalidArgument, "no instruction types");
  StageReport report;
  SeedFilter filter;
  std::size_t slot = 0;
  std::set<std::string> ids;
  for (const auto& seed : seeds) {
    if (const auto d = filter(seed); !d.keep()) {
      report.rejected.push_back({seed.source_id, std::string(to_string(*d.drop)), "filtered"});
      continue;
    }
    for (std::size_t k = 0; k < config.expansion; ++k, ++slot) {
      const auto itype = config.types[slot % config.types.size()];
      std::string id = seed.source_id + "-" + std::string(episode::to_string(itype));
      for (int n = 2; ids.count(id); ++n) {
        id = seed.source_id + "-" + std::string(episode::to_string(itype)) + "-" + std::to_string(n);
      }
      ids.insert(id);

      Rng rng(derive_seed(config.seed, id));
      std::vector<RoleDemographic> roles = known_roles();
      rng.shuffle(std::span<RoleDemographic>(roles));
      PromptContext ctx;
      for (std::size_t i = 0; i < 3; ++i) ctx.identities.push_back(make_info(static_cast<Speaker>(i), roles[i]));
      ctx.sound_types = config.sound_types;

      try {
        DraftRecord rec;
        rec.id = id;
        rec.seed = seed;
        if (itype == InstructionType::DirectText) {
          rec.plan = direct_text_plan(direct_text_draft(seed, ctx.identities[0]),
                                      seed.original_instruction);
          rec.intent = {true, seed.original_instruction};
        } else {
          const auto draft = synthesize_dialogue(seed, itype, client, templates, ctx);
          rec.plan = extend_interaction(draft, seed.original_instruction, client, templates);
          rec.intent = config.judge
                           ? validate_intent(rec.plan, seed.original_instruction, client, templates)
                           : IntentVerdict{true, ""};
        }
        if (!rec.intent.pass) {
          report.rejected.push_back({id, "INTENT_MISMATCH", "inferred \"" + rec.intent.inferred + "\""});
          continue;
        }
        report.accepted.push_back(std::move(rec));
      } catch (const Error& e) {
        report.rejected.push_back({id, std::string(forge::to_string(e.code())), e.what()});
      }
    }
  }
  return report;
}

}  // namespace forge::script
