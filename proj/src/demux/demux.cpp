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

#include "forge/demux/demux.hpp"

#include <algorithm>
#include <string>

#include "forge/common/error.hpp"

namespace forge::demux {

void VocabLayout::validate() const {
  if (text_size < 0 || action_size <= 0 || action_offset < 0 || act_marker_id < 0) {
    throw Error(ErrorCode::InvalidArgument, "vocabulary ranges must be non-negative");
  }
  if (act_marker_id < text_size) {
    throw Error(ErrorCode::InvalidArgument, "act marker id lies in the text range");
  }
  if (act_marker_id >= action_offset && act_marker_id < action_offset + action_size) {
    throw Error(ErrorCode::InvalidArgument, "act marker id lies in the action range");
  }
  if (action_offset < text_size) {
    throw Error(ErrorCode::InvalidArgument, "action range overlaps the text range");
  }
}

std::vector<Segment> demux(std::span<const std::int64_t> stream, const VocabLayout& layout) {
  layout.validate();
  std::vector<Segment> out;
  Segment text{SegmentKind::Text, {}};
  Segment action{SegmentKind::Action, {}};
  bool in_action = false;

  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto id = stream[i];
    const auto pos = static_cast<std::int64_t>(i);
    if (!layout.is_text(id) && !layout.is_action(id) && !layout.is_act_marker(id)) {
      throw Error(ErrorCode::IllegalId, "id " + std::to_string(id) + " is outside the layout", pos);
    }
    if (in_action) {
      if (!layout.is_action(id)) {
        throw Error(ErrorCode::UnterminatedAction,
                    "non-action id " + std::to_string(id) + " before EOS_ACT", pos);
      }
      action.ids.push_back(id - layout.action_offset);
      if (action.ids.back() == codec::kEosAct) {
        out.push_back(std::move(action));
        action = Segment{SegmentKind::Action, {}};
        in_action = false;
      }
      continue;
    }
    if (layout.is_action(id)) {
      throw Error(ErrorCode::StrayActionToken,
                  "action id " + std::to_string(id) + " outside an [ACT] window", pos);
    }
    if (layout.is_act_marker(id)) {
      if (!text.ids.empty()) out.push_back(std::move(text));
      text = Segment{SegmentKind::Text, {}};
      in_action = true;
      continue;
    }
    text.ids.push_back(id);
  }
  if (in_action) {
    throw Error(ErrorCode::UnterminatedAction, "stream ends inside an action window",
                static_cast<std::int64_t>(stream.size()));
  }
  if (!text.ids.empty()) out.push_back(std::move(text));
  return out;
}

std::vector<std::int64_t> serialize(std::span<const Segment> segments, const VocabLayout& layout) {
  std::vector<std::int64_t> out;
  for (const auto& seg : segments) {
    if (seg.kind == SegmentKind::Text) {
      out.insert(out.end(), seg.ids.begin(), seg.ids.end());
    } else {
      out.push_back(layout.act_marker_id);
      for (auto id : seg.ids) out.push_back(id + layout.action_offset);
    }
  }
  return out;
}

std::vector<codec::ActionChunk> decode_stream_actions(std::span<const Segment> segments,
                                                      const codec::CodecModel& model) {
  std::vector<codec::ActionChunk> out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.kind != SegmentKind::Action) continue;
    codec::ActionTokenSeq seq;
    seq.tokens.reserve(seg.ids.size());
    for (auto id : seg.ids) {
      if (id < 0 || id >= codec::kVocabSize) {
        throw Error(ErrorCode::MalformedSequence, "segment id out of action range",
                    static_cast<std::int64_t>(i));
      }
      seq.tokens.push_back(static_cast<int>(id));
    }
    try {
      out.push_back(codec::decode_tokens(seq, model));
    } catch (const Error& e) {
      throw Error(e.code(), "segment " + std::to_string(i) + ": " + e.what(),
                  static_cast<std::int64_t>(i));
    }
  }
  return out;
}

nlohmann::json to_json(const VocabLayout& layout) {
  return {{"text_size", layout.text_size},
          {"act_marker_id", layout.act_marker_id},
          {"action_offset", layout.action_offset},
          {"action_size", layout.action_size}};
}

VocabLayout layout_from_json(const nlohmann::json& j) {
  VocabLayout l;
  try {
    l.text_size = j.at("text_size").get<std::int64_t>();
    l.act_marker_id = j.at("act_marker_id").get<std::int64_t>();
    l.action_offset = j.at("action_offset").get<std::int64_t>();
    l.action_size = j.value("action_size", static_cast<std::int64_t>(codec::kVocabSize));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("layout: ") + e.what());
  }
  if (l.action_size != codec::kVocabSize) {
    throw Error(ErrorCode::InvalidArgument, "action_size must be 2048");
  }
  l.validate();
  return l;
}

nlohmann::json to_json(const Segment& segment) {
  return {{"kind", segment.kind == SegmentKind::Text ? "text" : "action"}, {"ids", segment.ids}};
}

}  // namespace forge::demux
