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

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "forge/codec/codec.hpp"

namespace forge::demux {

// Joint id space: text ids [0, text_size), one act marker id, and the action
// vocabulary re-based at action_offset.
struct VocabLayout {
  std::int64_t text_size = 0;
  std::int64_t act_marker_id = 0;
  std::int64_t action_offset = 0;
  std::int64_t action_size = codec::kVocabSize;

  // Throws InvalidArgument when the three ranges overlap or are empty.
  void validate() const;

  bool is_text(std::int64_t id) const { return id >= 0 && id < text_size; }
  bool is_action(std::int64_t id) const {
    return id >= action_offset && id < action_offset + action_size;
  }
  bool is_act_marker(std::int64_t id) const { return id == act_marker_id; }

  bool operator==(const VocabLayout&) const = default;
};

enum class SegmentKind { Text, Action };

// Text segments hold raw text ids. Action segments hold ids re-based to
// [0, 2048), from the codec's BOS_ACT through EOS_ACT; the act marker that
// opened the window is implied.
struct Segment {
  SegmentKind kind = SegmentKind::Text;
  std::vector<std::int64_t> ids;

  bool operator==(const Segment&) const = default;
};

// Throws IllegalId, StrayActionToken, UnterminatedAction. The error index is
// the stream position of the offending id (or the stream length for an
// unterminated window).
std::vector<Segment> demux(std::span<const std::int64_t> stream, const VocabLayout& layout);

// Exact inverse of demux.
std::vector<std::int64_t> serialize(std::span<const Segment> segments, const VocabLayout& layout);

// One chunk per Action segment, in order. Codec errors are rethrown with the
// segment's position in `segments` as the index.
std::vector<codec::ActionChunk> decode_stream_actions(std::span<const Segment> segments,
                                                      const codec::CodecModel& model);

nlohmann::json to_json(const VocabLayout& layout);
VocabLayout layout_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Segment& segment);

}  // namespace forge::demux
