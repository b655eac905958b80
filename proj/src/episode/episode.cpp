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

#include "forge/episode/episode.hpp"

#include <cmath>

#include "forge/common/error.hpp"

namespace forge::episode {
namespace {

using nlohmann::json;

void add(ValidationReport& r, std::string code, std::string message) {
  r.issues.push_back({std::move(code), std::move(message)});
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::SchemaError, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::SchemaError, std::string("field \"") + key + "\": " + ex.what());
  }
}

}  // namespace

bool ValidationReport::has(std::string_view code) const {
  for (const auto& i : issues) {
    if (i.code == code) return true;
  }
  return false;
}

ValidationReport validate_episode(const Episode& e) {
  ValidationReport r;
  if (e.id.empty()) add(r, "ID_EMPTY", "episode id is empty");
  if (e.original_instruction.empty()) add(r, "INSTRUCTION_EMPTY", "original instruction is empty");
  if (e.audio_ref.empty()) add(r, "AUDIO_REF_EMPTY", "audio_ref is empty");
  if (e.frame_refs.empty()) add(r, "FRAMES_EMPTY", "frame_refs is empty");
  if (e.actions.empty()) add(r, "ACTIONS_EMPTY", "action trajectory is empty");

  for (std::size_t t = 0; t < e.actions.size(); ++t) {
    const auto& d = e.actions[t].delta;
    const std::string where = "action " + std::to_string(t);
    if (d.size() != kActionDims) {
      add(r, "ACTION_DIM", where + " has " + std::to_string(d.size()) + " components");
      continue;
    }
    for (double v : d) {
      if (!std::isfinite(v)) {
        add(r, "ACTION_NONFINITE", where + " has a non-finite component");
        break;
      }
      if (std::abs(v) > kActionClip) {
        add(r, "ACTION_RANGE", where + " exceeds the clip range");
        break;
      }
    }
  }

  const std::size_t acts = count_act_tags(e.conversation);
  if (acts != 1) {
    add(r, "ACT_MULTIPLICITY", "conversation has " + std::to_string(acts) + " [ACT] markers");
  }
  std::optional<MarkupDoc> doc;
  try {
    doc = parse_markup(e.conversation);
  } catch (const Error& ex) {
    // A second [ACT] is already reported above.
    if (!(acts > 1 && ex.code() == ErrorCode::MisplacedAct)) {
      add(r, "MARKUP_INVALID", ex.what());
    }
  }
  if (doc && doc->turns.empty()) add(r, "CONVERSATION_EMPTY", "conversation has no turns");

  for (const auto& s : e.speakers) {
    if (s.id.empty() || s.timbre_ref.empty()) {
      add(r, "SPEAKER_INVALID", "speaker profile needs an id and a timbre_ref");
      break;
    }
  }

  if (e.mix_plan) {
    if (!std::isfinite(e.mix_plan->target_snr_db)) {
      add(r, "MIX_PLAN_SNR", "target SNR is not finite");
    }
    if (doc) {
      const std::size_t anchors = doc->sound_anchor_count();
      for (const auto& ins : e.mix_plan->event_insertions) {
        if (ins.anchor_index >= anchors) {
          add(r, "MIX_PLAN_ANCHOR",
              "event insertion references anchor " + std::to_string(ins.anchor_index) +
                  " but the conversation has " + std::to_string(anchors));
        }
      }
    }
  }
  return r;
}

std::string_view to_string(EventMode m) {
  return m == EventMode::GapInsert ? "gap_insert" : "overlay";
}

json to_json(const SpeakerProfile& s) {
  return json{{"id", s.id},
              {"age_group", to_string(s.age_group)},
              {"gender", to_string(s.gender)},
              {"timbre_ref", s.timbre_ref}};
}

SpeakerProfile speaker_from_json(const json& j) {
  SpeakerProfile s;
  s.id = field<std::string>(j, "id");
  const auto age = parse_age_group(field<std::string>(j, "age_group"));
  const auto gender = parse_gender(field<std::string>(j, "gender"));
  if (!age || !gender) throw Error(ErrorCode::SchemaError, "bad speaker demographics");
  s.age_group = *age;
  s.gender = *gender;
  s.timbre_ref = field<std::string>(j, "timbre_ref");
  return s;
}

json to_json(const MixPlan& m) {
  json events = json::array();
  for (const auto& e : m.event_insertions) {
    events.push_back(
        {{"anchor_index", e.anchor_index}, {"clip_id", e.clip_id}, {"mode", to_string(e.mode)}});
  }
  return json{{"background_id", m.background_id},
              {"target_snr_db", m.target_snr_db},
              {"event_insertions", events}};
}

MixPlan mix_plan_from_json(const json& j) {
  MixPlan m;
  m.background_id = field<std::string>(j, "background_id");
  m.target_snr_db = field<double>(j, "target_snr_db");
  for (const auto& e : field<json>(j, "event_insertions")) {
    EventInsertion ins;
    ins.anchor_index = field<std::size_t>(e, "anchor_index");
    ins.clip_id = field<std::string>(e, "clip_id");
    const auto mode = field<std::string>(e, "mode");
    if (mode == "gap_insert") {
      ins.mode = EventMode::GapInsert;
    } else if (mode == "overlay") {
      ins.mode = EventMode::Overlay;
    } else {
      throw Error(ErrorCode::SchemaError, "unknown event mode " + mode);
    }
    m.event_insertions.push_back(std::move(ins));
  }
  return m;
}

json to_json(const Episode& e) {
  json actions = json::array();
  for (const auto& a : e.actions) actions.push_back(a.delta);
  json speakers = json::array();
  for (const auto& s : e.speakers) speakers.push_back(to_json(s));
  json j{{"id", e.id},
         {"instruction_type", to_string(e.instruction_type)},
         {"original_instruction", e.original_instruction},
         {"conversation", e.conversation},
         {"audio_ref", e.audio_ref},
         {"frame_refs", e.frame_refs},
         {"actions", actions},
         {"speakers", speakers},
         {"provenance",
          {{"dataset", e.provenance.dataset}, {"trajectory_id", e.provenance.trajectory_id}}}};
  if (e.mix_plan) j["mix_plan"] = to_json(*e.mix_plan);
  return j;
}

Episode episode_from_json(const json& j) {
  Episode e;
  e.id = field<std::string>(j, "id");
  const auto type = parse_instruction_type(field<std::string>(j, "instruction_type"));
  if (!type) throw Error(ErrorCode::SchemaError, "unknown instruction_type");
  e.instruction_type = *type;
  e.original_instruction = field<std::string>(j, "original_instruction");
  e.conversation = field<std::string>(j, "conversation");
  e.audio_ref = field<std::string>(j, "audio_ref");
  e.frame_refs = field<std::vector<std::string>>(j, "frame_refs");
  for (auto& row : field<std::vector<std::vector<double>>>(j, "actions")) {
    e.actions.push_back(ActionFrame{std::move(row)});
  }
  for (const auto& s : field<json>(j, "speakers")) e.speakers.push_back(speaker_from_json(s));
  const auto prov = field<json>(j, "provenance");
  e.provenance.dataset = field<std::string>(prov, "dataset");
  e.provenance.trajectory_id = field<std::string>(prov, "trajectory_id");
  if (j.contains("mix_plan") && !j.at("mix_plan").is_null()) {
    e.mix_plan = mix_plan_from_json(j.at("mix_plan"));
  }
  return e;
}

}  // namespace forge::episode
