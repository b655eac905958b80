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
#include <string_view>
#include <vector>

namespace forge::episode {

// Transcript markup grammar.
//
//   speaker tags   [S1] [S2] [S3] [Robot]    start a new turn
//   [Overlap]      start of the interrupted region inside a turn; the region
//                  runs to the end of that turn
//   [Overlap_Sx]   starts the interrupting turn of speaker Sx (x in 1..3)
//   [Sound]        non-verbal event anchor
//   [SentimentCue] sentiment cue anchor
//   [ACT]          action onset; only as the last token of a Robot turn
//
// Turn text is whitespace-normalized: runs collapse to one space and the text
// is trimmed. All character positions are byte offsets into that text.

enum class Speaker { S1, S2, S3, Robot };

std::string_view to_string(Speaker s);
inline bool is_human(Speaker s) { return s != Speaker::Robot; }

struct OverlapSpan {
  std::size_t char_start = 0;
  std::size_t char_end = 0;  // exclusive
  Speaker interrupter = Speaker::S1;

  bool operator==(const OverlapSpan&) const = default;
};

struct Turn {
  Speaker speaker = Speaker::S1;
  std::string text;
  std::vector<OverlapSpan> overlap_spans;
  std::vector<std::size_t> sound_anchors;
  std::vector<std::size_t> sentiment_cues;

  bool operator==(const Turn&) const = default;
};

struct MarkupDoc {
  std::vector<Turn> turns;
  std::optional<std::size_t> act_marker;  // index of the Robot turn ending in [ACT]

  bool operator==(const MarkupDoc&) const = default;

  std::size_t sound_anchor_count() const;
  std::size_t overlap_count() const;
  // Distinct human speakers that have at least one turn.
  std::size_t human_speaker_count() const;
};

// Throws forge::Error with UnknownTag, DanglingOverlap, MisplacedAct or
// MissingSpeaker (non-blank text before the first speaker tag).
MarkupDoc parse_markup(std::string_view text);

// Canonical form: one space after each speaker tag, turns separated by one
// space. Throws InvalidDoc when `doc` breaks a MarkupDoc invariant.
std::string render_markup(const MarkupDoc& doc);

// Empty when the doc satisfies every invariant, else a description of the
// first violation.
std::optional<std::string> check_invariants(const MarkupDoc& doc);

// Number of literal "[ACT]" tags in raw markup text.
std::size_t count_act_tags(std::string_view text);

}  // namespace forge::episode
