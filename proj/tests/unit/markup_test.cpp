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

#include <gtest/gtest.h>

#include <filesystem>

#include <json.hpp>

#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"
#include "forge/episode/markup.hpp"

using namespace forge;
using namespace forge::episode;

namespace {

ErrorCode parse_error(std::string_view text) {
  try {
    parse_markup(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a parse error for: " << text;
  return ErrorCode::IoError;
}

}  // namespace

TEST(ParseMarkup, SingleTag) {
  const auto doc = parse_markup("[S1]Hello");
  ASSERT_EQ(doc.turns.size(), 1u);
  EXPECT_EQ(doc.turns[0].speaker, Speaker::S1);
  EXPECT_EQ(doc.turns[0].text, "Hello");
  EXPECT_TRUE(doc.turns[0].overlap_spans.empty());
  EXPECT_FALSE(doc.act_marker);
}

TEST(ParseMarkup, OverlapSpanCoversInterruptedTail) {
  const auto doc = parse_markup("[S1] Apple or [Overlap]banana? [Overlap_S2] Banana!");
  ASSERT_EQ(doc.turns.size(), 2u);
  const Turn& t = doc.turns[0];
  EXPECT_EQ(t.text, "Apple or banana?");
  ASSERT_EQ(t.overlap_spans.size(), 1u);
  const auto& span = t.overlap_spans[0];
  EXPECT_EQ(t.text.substr(span.char_start, span.char_end - span.char_start), "banana?");
  EXPECT_EQ(span.interrupter, Speaker::S2);
  EXPECT_EQ(doc.turns[1].speaker, Speaker::S2);
  EXPECT_EQ(doc.turns[1].text, "Banana!");
}

TEST(ParseMarkup, SoundAnchorAtEndOfTurn) {
  const auto doc = parse_markup("[S2] ... close the oven door for me. [Sound]");
  ASSERT_EQ(doc.turns.size(), 1u);
  const Turn& t = doc.turns[0];
  ASSERT_EQ(t.sound_anchors.size(), 1u);
  EXPECT_EQ(t.sound_anchors[0], t.text.size());
}

TEST(ParseMarkup, WhitespaceIsNormalized) {
  const auto doc = parse_markup("  [S1]\n   Honey,\tcan you   grab it? [S3]Oh!  ");
  ASSERT_EQ(doc.turns.size(), 2u);
  EXPECT_EQ(doc.turns[0].text, "Honey, can you grab it?");
  EXPECT_EQ(doc.turns[1].text, "Oh!");
}

TEST(ParseMarkup, ActMarkerOnRobotTurn) {
  const auto doc = parse_markup("[S1] Can you? [Robot] OK, I will do that. [ACT]");
  ASSERT_EQ(doc.act_marker, std::optional<std::size_t>(1));
  EXPECT_EQ(doc.turns[1].text, "OK, I will do that.");
}

TEST(ParseMarkup, EmptyInputIsEmptyDoc) {
  const auto doc = parse_markup("");
  EXPECT_TRUE(doc.turns.empty());
  EXPECT_EQ(render_markup(doc), "");
}

TEST(ParseMarkup, ErrorCodes) {
  EXPECT_EQ(parse_error("[S4] hi"), ErrorCode::UnknownTag);
  EXPECT_EQ(parse_error("[S1] hi [Overlap_Sx] there"), ErrorCode::UnknownTag);
  EXPECT_EQ(parse_error("[S1] hi [Overlap] there"), ErrorCode::DanglingOverlap);
  EXPECT_EQ(parse_error("[S1] hi [ACT]"), ErrorCode::MisplacedAct);
  EXPECT_EQ(parse_error("[Robot] ok [ACT] more"), ErrorCode::MisplacedAct);
  EXPECT_EQ(parse_error("hello [S1] hi"), ErrorCode::MissingSpeaker);
}

TEST(RenderMarkup, CanonicalSpacing) {
  const auto doc = parse_markup("[S1]Hi[Robot]Sure.[ACT]");
  EXPECT_EQ(render_markup(doc), "[S1] Hi [Robot] Sure. [ACT]");
  EXPECT_EQ(render_markup(parse_markup(render_markup(doc))), render_markup(doc));
}

TEST(RenderMarkup, RejectsInvalidDoc) {
  MarkupDoc doc;
  doc.turns.push_back(Turn{Speaker::S1, "hi", {}, {5}, {}});
  EXPECT_THROW(render_markup(doc), Error);

  MarkupDoc act_on_human;
  act_on_human.turns.push_back(Turn{Speaker::S1, "hi", {}, {}, {}});
  act_on_human.act_marker = 0;
  EXPECT_THROW(render_markup(act_on_human), Error);

  MarkupDoc orphan_span;
  orphan_span.turns.push_back(Turn{Speaker::S1, "hi there", {{3, 8, Speaker::S2}}, {}, {}});
  EXPECT_THROW(render_markup(orphan_span), Error);
}

TEST(RenderMarkup, ExampleTranscriptsRoundTrip) {
  const std::filesystem::path dir = std::filesystem::path(FORGE_TEST_DATA_DIR) / "transcripts";
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    SCOPED_TRACE(entry.path().filename().string());
    const auto doc = parse_markup(read_file(entry.path()));
    EXPECT_FALSE(doc.turns.empty());
    const auto canonical = render_markup(doc);
    EXPECT_EQ(parse_markup(canonical), doc);
    EXPECT_EQ(render_markup(parse_markup(canonical)), canonical);
    ++n;
  }
  EXPECT_EQ(n, 12);
}

// Random well-formed documents: parse(render(D)) == D.
TEST(RenderMarkup, RoundTripProperty) {
  Rng rng(7);
  const char* words[] = {"apple", "the", "pot,", "uh", "yes!", "move", "it?", "…", "ok."};
  for (int trial = 0; trial < 500; ++trial) {
    MarkupDoc doc;
    const std::size_t turns = 1 + rng.below(6);
    for (std::size_t k = 0; k < turns; ++k) {
      Turn t;
      const bool last = k + 1 == turns;
      t.speaker = static_cast<Speaker>(rng.below(last ? 4 : 3));
      if (k > 0 && !doc.turns[k - 1].overlap_spans.empty()) {
        t.speaker = doc.turns[k - 1].overlap_spans[0].interrupter;
      }
      const std::size_t nw = rng.below(6);
      for (std::size_t w = 0; w < nw; ++w) {
        if (w) t.text.push_back(' ');
        t.text += words[rng.below(std::size(words))];
      }
      if (rng.below(3) == 0) t.sound_anchors.push_back(rng.below(t.text.size() + 1));
      if (rng.below(3) == 0) t.sentiment_cues.push_back(rng.below(t.text.size() + 1));
      if (!last && !t.text.empty() && is_human(t.speaker) && rng.below(3) == 0) {
        Speaker other = static_cast<Speaker>((static_cast<int>(t.speaker) + 1 + rng.below(2)) % 3);
        t.overlap_spans.push_back({rng.below(t.text.size()), t.text.size(), other});
      }
      doc.turns.push_back(std::move(t));
    }
    if (doc.turns.back().speaker == Speaker::Robot && rng.below(2) == 0) {
      doc.act_marker = doc.turns.size() - 1;
    }
    // Anchors landing on the interior of a word are legal; anchors after a
    // space collapse consistently too.
    ASSERT_FALSE(check_invariants(doc)) << *check_invariants(doc);
    const auto text = render_markup(doc);
    ASSERT_EQ(parse_markup(text), doc) << text;
  }
}

TEST(ParseMarkup, MalformedCorpus) {
  const auto path = std::filesystem::path(FORGE_TEST_DATA_DIR) / "malformed_markup.jsonl";
  int n = 0;
  for_each_line(path, [&](std::string_view line, std::size_t no) {
    const auto j = nlohmann::json::parse(line);
    SCOPED_TRACE("line " + std::to_string(no));
    EXPECT_EQ(to_string(parse_error(j["text"].get<std::string>())), j["code"].get<std::string>());
    ++n;
  });
  EXPECT_GE(n, 20);
}
