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

#include "forge/episode/markup.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "forge/common/error.hpp"

namespace forge::episode {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view speaker_tag(Speaker s) {
  switch (s) {
    case Speaker::S1: return "[S1]";
    case Speaker::S2: return "[S2]";
    case Speaker::S3: return "[S3]";
    case Speaker::Robot: return "[Robot]";
  }
  return "[S1]";
}

enum class TagKind { Speaker, Overlap, OverlapBy, Sound, SentimentCue, Act };

struct Tag {
  TagKind kind;
  Speaker speaker = Speaker::S1;  // for Speaker and OverlapBy
};

std::optional<Tag> classify(std::string_view body) {
  if (body == "S1") return Tag{TagKind::Speaker, Speaker::S1};
  if (body == "S2") return Tag{TagKind::Speaker, Speaker::S2};
  if (body == "S3") return Tag{TagKind::Speaker, Speaker::S3};
  if (body == "Robot") return Tag{TagKind::Speaker, Speaker::Robot};
  if (body == "Overlap") return Tag{TagKind::Overlap};
  if (body == "Overlap_S1") return Tag{TagKind::OverlapBy, Speaker::S1};
  if (body == "Overlap_S2") return Tag{TagKind::OverlapBy, Speaker::S2};
  if (body == "Overlap_S3") return Tag{TagKind::OverlapBy, Speaker::S3};
  if (body == "Sound") return Tag{TagKind::Sound};
  if (body == "SentimentCue") return Tag{TagKind::SentimentCue};
  if (body == "ACT") return Tag{TagKind::Act};
  return std::nullopt;
}

class Parser {
 public:
  MarkupDoc run(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c == '[') {
        const auto close = text.find(']', i + 1);
        if (close == std::string_view::npos) {
          throw Error(ErrorCode::UnknownTag, "unterminated tag at byte " + std::to_string(i),
                      static_cast<std::int64_t>(i));
        }
        const auto body = text.substr(i + 1, close - i - 1);
        const auto tag = classify(body);
        if (!tag) {
          throw Error(ErrorCode::UnknownTag, "[" + std::string(body) + "]",
                      static_cast<std::int64_t>(i));
        }
        on_tag(*tag);
        i = close + 1;
        continue;
      }
      on_char(c);
      ++i;
    }
    finish_turn(nullptr);
    return std::move(doc_);
  }

 private:
  void on_char(char c) {
    if (is_space(c)) {
      if (open_ && !buf_.empty() && buf_.back() != ' ') buf_.push_back(' ');
      return;
    }
    if (!open_) throw Error(ErrorCode::MissingSpeaker, "text before the first speaker tag");
    if (act_seen_in_turn_) throw Error(ErrorCode::MisplacedAct, "[ACT] is not turn-final");
    buf_.push_back(c);
  }

  void on_tag(const Tag& tag) {
    switch (tag.kind) {
      case TagKind::Speaker:
        finish_turn(&tag);
        start_turn(tag.speaker);
        return;
      case TagKind::OverlapBy:
        finish_turn(&tag);
        start_turn(tag.speaker);
        return;
      default:
        break;
    }
    if (!open_) throw Error(ErrorCode::MissingSpeaker, "inline tag before the first speaker tag");
    if (act_seen_in_turn_) throw Error(ErrorCode::MisplacedAct, "[ACT] is not turn-final");
    switch (tag.kind) {
      case TagKind::Overlap:
        if (pending_overlap_) {
          throw Error(ErrorCode::DanglingOverlap, "second [Overlap] in one turn");
        }
        pending_overlap_ = buf_.size();
        break;
      case TagKind::Sound:
        turn_.sound_anchors.push_back(buf_.size());
        break;
      case TagKind::SentimentCue:
        turn_.sentiment_cues.push_back(buf_.size());
        break;
      case TagKind::Act:
        if (turn_.speaker != Speaker::Robot) {
          throw Error(ErrorCode::MisplacedAct, "[ACT] inside a non-Robot turn");
        }
        if (doc_.act_marker || act_seen_in_turn_) {
          throw Error(ErrorCode::MisplacedAct, "more than one [ACT]");
        }
        act_seen_in_turn_ = true;
        break;
      default:
        break;
    }
  }

  void start_turn(Speaker s) {
    open_ = true;
    turn_ = Turn{};
    turn_.speaker = s;
    buf_.clear();
    pending_overlap_.reset();
    act_seen_in_turn_ = false;
  }

  // `next` is the tag that closes this turn, or null at end of input.
  void finish_turn(const Tag* next) {
    const bool next_is_overlap = next && next->kind == TagKind::OverlapBy;
    if (!open_) {
      if (next_is_overlap) {
        throw Error(ErrorCode::DanglingOverlap, "[Overlap_Sx] without an interrupted turn");
      }
      return;
    }
    while (!buf_.empty() && buf_.back() == ' ') buf_.pop_back();
    const std::size_t len = buf_.size();
    auto clamp = [len](std::size_t p) { return std::min(p, len); };
    for (auto& a : turn_.sound_anchors) a = clamp(a);
    for (auto& a : turn_.sentiment_cues) a = clamp(a);

    if (pending_overlap_) {
      if (!next_is_overlap) {
        throw Error(ErrorCode::DanglingOverlap, "[Overlap] not followed by [Overlap_Sx]");
      }
      if (next->speaker == turn_.speaker) {
        throw Error(ErrorCode::DanglingOverlap, "speaker interrupts their own turn");
      }
      const std::size_t start = clamp(*pending_overlap_);
      if (start >= len) throw Error(ErrorCode::DanglingOverlap, "empty overlap region");
      turn_.overlap_spans.push_back(OverlapSpan{start, len, next->speaker});
    } else if (next_is_overlap) {
      throw Error(ErrorCode::DanglingOverlap, "[Overlap_Sx] without a preceding [Overlap]");
    }

    turn_.text = std::move(buf_);
    buf_.clear();
    if (act_seen_in_turn_) doc_.act_marker = doc_.turns.size();
    doc_.turns.push_back(std::move(turn_));
    open_ = false;
  }

  MarkupDoc doc_;
  Turn turn_;
  std::string buf_;
  bool open_ = false;
  std::optional<std::size_t> pending_overlap_;
  bool act_seen_in_turn_ = false;
};

bool normalized_text(const std::string& s) {
  if (s.empty()) return true;
  if (s.front() == ' ' || s.back() == ' ') return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') return false;
    if (is_space(s[i]) && s[i] != ' ') return false;
    if (s[i] == ' ' && i > 0 && s[i - 1] == ' ') return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(Speaker s) {
  switch (s) {
    case Speaker::S1: return "S1";
    case Speaker::S2: return "S2";
    case Speaker::S3: return "S3";
    case Speaker::Robot: return "Robot";
  }
  return "S1";
}

std::size_t MarkupDoc::sound_anchor_count() const {
  std::size_t n = 0;
  for (const auto& t : turns) n += t.sound_anchors.size();
  return n;
}

std::size_t MarkupDoc::overlap_count() const {
  std::size_t n = 0;
  for (const auto& t : turns) n += t.overlap_spans.size();
  return n;
}

std::size_t MarkupDoc::human_speaker_count() const {
  std::set<Speaker> seen;
  for (const auto& t : turns) {
    if (is_human(t.speaker)) seen.insert(t.speaker);
  }
  return seen.size();
}

MarkupDoc parse_markup(std::string_view text) { return Parser{}.run(text); }

std::optional<std::string> check_invariants(const MarkupDoc& doc) {
  for (std::size_t k = 0; k < doc.turns.size(); ++k) {
    const Turn& t = doc.turns[k];
    const std::string where = "turn " + std::to_string(k) + ": ";
    if (!normalized_text(t.text)) return where + "text is not whitespace-normalized or contains '['";
    if (!std::is_sorted(t.sound_anchors.begin(), t.sound_anchors.end()) ||
        !std::is_sorted(t.sentiment_cues.begin(), t.sentiment_cues.end())) {
      return where + "anchors out of order";
    }
    for (auto a : t.sound_anchors) {
      if (a > t.text.size()) return where + "sound anchor out of bounds";
    }
    for (auto a : t.sentiment_cues) {
      if (a > t.text.size()) return where + "sentiment cue out of bounds";
    }
    if (t.overlap_spans.size() > 1) return where + "more than one overlap span";
    for (const auto& span : t.overlap_spans) {
      if (span.char_start >= span.char_end || span.char_end != t.text.size()) {
        return where + "overlap span must be non-empty and run to the end of the turn";
      }
      if (!is_human(span.interrupter) || span.interrupter == t.speaker) {
        return where + "invalid interrupting speaker";
      }
      if (k + 1 >= doc.turns.size() || doc.turns[k + 1].speaker != span.interrupter) {
        return where + "overlap span is not followed by the interrupting turn";
      }
    }
  }
  if (doc.act_marker) {
    if (*doc.act_marker >= doc.turns.size()) return std::string("act marker out of range");
    if (doc.turns[*doc.act_marker].speaker != Speaker::Robot) {
      return std::string("act marker on a non-Robot turn");
    }
  }
  return std::nullopt;
}

std::string render_markup(const MarkupDoc& doc) {
  if (auto violation = check_invariants(doc)) {
    throw Error(ErrorCode::InvalidDoc, *violation);
  }
  std::string out;
  for (std::size_t k = 0; k < doc.turns.size(); ++k) {
    const Turn& t = doc.turns[k];
    if (k > 0) out.push_back(' ');
    const bool interrupting = k > 0 && !doc.turns[k - 1].overlap_spans.empty();
    if (interrupting) {
      out += "[Overlap_";
      out += to_string(t.speaker);
      out += "]";
    } else {
      out += speaker_tag(t.speaker);
    }

    // (position, order) pairs; the order fixes the layout of co-located tags.
    std::vector<std::tuple<std::size_t, int, std::string_view>> marks;
    for (auto a : t.sound_anchors) marks.emplace_back(a, 0, "[Sound]");
    for (auto a : t.sentiment_cues) marks.emplace_back(a, 1, "[SentimentCue]");
    for (const auto& span : t.overlap_spans) marks.emplace_back(span.char_start, 2, "[Overlap]");
    if (doc.act_marker == k) marks.emplace_back(t.text.size(), 3, "[ACT]");
    std::stable_sort(marks.begin(), marks.end());

    const std::size_t len = t.text.size();
    if (len == 0) {
      for (const auto& m : marks) {
        out.push_back(' ');
        out += std::get<2>(m);
      }
      continue;
    }
    out.push_back(' ');
    std::size_t cursor = 0;
    for (const auto& [pos, order, tag] : marks) {
      if (pos == 0) {
        out += tag;
        out.push_back(' ');
      } else if (pos == len) {
        out.append(t.text, cursor, len - cursor);
        cursor = len;
        out.push_back(' ');
        out += tag;
      } else {
        out.append(t.text, cursor, pos - cursor);
        cursor = pos;
        out += tag;
      }
    }
    out.append(t.text, cursor, len - cursor);
  }
  return out;
}

std::size_t count_act_tags(std::string_view text) {
  std::size_t n = 0;
  for (auto pos = text.find("[ACT]"); pos != std::string_view::npos;
       pos = text.find("[ACT]", pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace forge::episode
