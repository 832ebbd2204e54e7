// Copyright 2026 The sluaug Authors.
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


#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "random_inputs.h"
#include "sluaug/align.h"
#include "sluaug/errors.h"
#include "sluaug/mr_format.h"

namespace sluaug {
namespace {

std::vector<std::string> Tokens(const std::string &text) {
  return Utterance(text).tokens();
}

TEST(FindSpanTest, Basics) {
  const auto tokens =
      Tokens("Add the track to the Metal Talks Metallica playlist .");
  EXPECT_EQ(FindSpan(tokens, "metal talks Metallica"), (Span{5, 8}));
  EXPECT_EQ(FindSpan(tokens, "Add the track to the Metal Talks Metallica "
                             "playlist ."),
            (Span{0, 10}));
  EXPECT_FALSE(FindSpan(tokens, "metallica rocks"));
  EXPECT_EQ(FindAllSpans(tokens, "the"),
            (std::vector<Span>{{1, 2}, {4, 5}}));
}

TEST(FindSpanTest, PolicyControlsCaseAndPunctuation) {
  const auto tokens = Tokens("fly to Boston!");
  EXPECT_EQ(FindSpan(tokens, "boston"), (Span{2, 3}));
  MatchPolicy strict{false, false};
  EXPECT_FALSE(FindSpan(tokens, "boston", strict));
  EXPECT_FALSE(FindSpan(tokens, "Boston", strict));
  EXPECT_EQ(FindSpan(tokens, "Boston!", strict), (Span{2, 3}));
  EXPECT_EQ(NormalizeToken("Hi?!", {}), "hi");
}

class ReferenceAlignmentTest : public ::testing::Test {
 protected:
  std::vector<oracle::ReferenceRow> rows_ =
      oracle::LoadReferenceAlignments(SLUAUG_SOURCE_DIR "/tests/testdata/reference_alignments.tsv");
};

TEST_F(ReferenceAlignmentTest, EveryPairParsesCoversAndAlignsToFixtureSpans) {
  ASSERT_EQ(rows_.size(), 8u);
  for (const oracle::ReferenceRow &row : rows_) {
    SCOPED_TRACE(row.utterance);
    DialogueAct act = ParseDa(row.mr);
    Utterance u(row.utterance);
    EXPECT_TRUE(ContainsAllValues(u, act));
    std::optional<std::vector<Span>> spans = AssignSpans(u.tokens(), act);
    ASSERT_TRUE(spans);
    ASSERT_EQ(spans->size(), row.spans.size());
    for (size_t i = 0; i < spans->size(); ++i) {
      EXPECT_EQ(act.slots()[i].slot(), row.spans[i].first);
      EXPECT_EQ((*spans)[i], row.spans[i].second) << row.spans[i].first;
    }
    LabeledExample ex = LabelWithDa(u, act);
    EXPECT_EQ(ex.intent(), act.intent());
    EXPECT_EQ(CanonicalActKey(DaFromLabeled(ex)), CanonicalActKey(act));
  }
}

TEST_F(ReferenceAlignmentTest, AddToPlaylistTags) {
  const oracle::ReferenceRow &row = rows_.back();
  LabeledExample ex = LabelWithDa(Utterance(row.utterance), ParseDa(row.mr));
  EXPECT_EQ(ex.tags(),
            (std::vector<std::string>{"O", "O", "B-music_item", "O", "O",
                                      "B-playlist", "I-playlist", "I-playlist",
                                      "O"}));
  // Values keep the utterance's casing on the way back.
  EXPECT_EQ(DaFromLabeled(ex).slots()[1].value(), "Metal Talks Metallica");
}

TEST(CoverageTest, MissingValue) {
  DialogueAct act = ParseDa(
      "BookRestaurant ( country = Honduras ; facility = indoor ; "
      "restaurant_type = restaurant )");
  Utterance u("Book me a table in Honduras");
  EXPECT_FALSE(ContainsAllValues(u, act));
  try {
    LabelWithDa(u, act);
    FAIL();
  } catch (const AlignmentFailed &e) {
    EXPECT_NE(std::string(e.what()).find("facility = indoor"),
              std::string::npos);
    EXPECT_NE(std::string(e.what()).find("restaurant_type = restaurant"),
              std::string::npos);
  }
}

TEST(CoverageTest, OverlapIsNotCoverage) {
  // Both values occur, but only by sharing the token "b".
  DialogueAct act("X", {{"s", "a b"}, {"t", "b c"}});
  EXPECT_FALSE(ContainsAllValues(Utterance("a b c"), act));
  EXPECT_THROW(LabelWithDa(Utterance("a b c"), act), AlignmentFailed);
}

TEST(CoverageTest, NeedsSearchBeyondLeftmostChoice) {
  // Taking "a b" at its leftmost spot blocks "b c"; the second "a b" works.
  DialogueAct act("X", {{"s", "a b"}, {"t", "b c"}});
  Utterance u("a b c x a b");
  ASSERT_TRUE(ContainsAllValues(u, act));
  EXPECT_EQ(*AssignSpans(u.tokens(), act),
            (std::vector<Span>{{4, 6}, {1, 3}}));
}

TEST(CoverageTest, RepeatedValueNeedsTwoOccurrences) {
  DialogueAct act("Fly", {{"from", "paris"}, {"to", "paris"}});
  EXPECT_FALSE(ContainsAllValues(Utterance("paris"), act));
  LabeledExample ex = LabelWithDa(Utterance("paris to paris"), act);
  EXPECT_EQ(ex.tags(), (std::vector<std::string>{"B-from", "O", "B-to"}));
}

TEST(LabelWithDaTest, ZeroSlotActIsAllOutside) {
  LabeledExample ex = LabelWithDa(Utterance("hello there"), DialogueAct("Hi"));
  EXPECT_EQ(ex.tags(), (std::vector<std::string>{"O", "O"}));
  EXPECT_EQ(DaFromLabeled(ex), DialogueAct("Hi"));
}

TEST(DaFromLabeledTest, DropsRepeatedPairs) {
  LabeledExample ex(Utterance("jazz or jazz"), "Play",
                    {"B-genre", "O", "B-genre"});
  EXPECT_EQ(DaFromLabeled(ex), DialogueAct("Play", {{"genre", "jazz"}}));
}

TEST(AlignOracleTest, RandomInstancesAgreeWithBruteForce) {
  const std::vector<std::string> &vocab = random_inputs::AlignVocab();
  // Surface variants exercise the default match policy.
  const std::vector<std::string> &surface = random_inputs::AlignSurface();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<size_t> len(1, 12);
  std::uniform_int_distribution<size_t> pick(0, surface.size() - 1);
  for (int i = 0; i < 20000; ++i) {
    std::vector<std::string> tokens;
    for (size_t n = len(rng); n > 0; --n) tokens.push_back(surface[pick(rng)]);
    DialogueAct act = random_inputs::RandomAlignAct(rng, vocab, 4);
    Utterance u = Utterance::FromTokens(tokens);
    std::optional<std::vector<Span>> expected =
        oracle::BruteForceSpans(tokens, act);
    ASSERT_EQ(ContainsAllValues(u, act), expected.has_value())
        << u.Text() << " | " << CanonicalActKey(act);
    ASSERT_EQ(AssignSpans(tokens, act), expected);
    if (expected) {
      LabeledExample ex = LabelWithDa(u, act);
      std::vector<Chunk> chunks = ExtractChunks(ex.tags());
      ASSERT_EQ(chunks.size(), act.slots().size());
    } else {
      ASSERT_THROW(LabelWithDa(u, act), AlignmentFailed);
    }
  }
}

}  // namespace
}  // namespace sluaug
