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


#include <vector>

#include <gtest/gtest.h>

#include "sluaug/dialogue.h"
#include "sluaug/errors.h"

namespace sluaug {
namespace {

LabeledExample Example(const std::string &text, const std::string &intent,
                       std::vector<std::string> tags) {
  return LabeledExample(Utterance(text), intent, std::move(tags));
}

TEST(SlotValueTest, NormalizesAndValidates) {
  SlotValue sv("city", "  new   york ");
  EXPECT_EQ(sv.value(), "new york");
  EXPECT_THROW(SlotValue("", "x"), ValidationError);
  EXPECT_THROW(SlotValue("city", "  "), ValidationError);
  EXPECT_THROW(SlotValue("city", "a;b"), ValidationError);
  EXPECT_THROW(SlotValue("ci=ty", "x"), ValidationError);
  EXPECT_THROW(SlotValue(" city", "x"), ValidationError);
  // Identifiers may carry internal spaces.
  EXPECT_EQ(SlotValue("restaurant type", "x").slot(), "restaurant type");
}

TEST(DialogueActTest, RejectsDuplicatePairsOnly) {
  EXPECT_THROW(DialogueAct("Play", {{"artist", "adele"}, {"artist", "adele"}}),
               ValidationError);
  DialogueAct ok("Play", {{"artist", "adele"}, {"artist", "drake"}});
  EXPECT_EQ(ok.slots().size(), 2u);
  EXPECT_THROW(DialogueAct("Bad(", {}), ValidationError);
}

TEST(DialogueActTest, CanonicalKeyIgnoresOrderAndCase) {
  DialogueAct a("Play", {{"artist", "Adele"}, {"genre", "pop"}});
  DialogueAct b("play", {{"genre", "POP"}, {"artist", "adele"}});
  EXPECT_EQ(CanonicalActKey(a), CanonicalActKey(b));
  EXPECT_NE(a, b);
  EXPECT_EQ(SlotSignature(b), (std::vector<std::string>{"artist", "genre"}));
}

TEST(UtteranceTest, Tokenizes) {
  Utterance u(" play  some\tjazz ");
  EXPECT_EQ(u.tokens(), (std::vector<std::string>{"play", "some", "jazz"}));
  EXPECT_EQ(u.Text(), "play some jazz");
  EXPECT_THROW(Utterance("   "), ValidationError);
  EXPECT_THROW(Utterance::FromTokens({}), ValidationError);
  EXPECT_THROW(Utterance::FromTokens({"a b"}), ValidationError);
}

TEST(TagTest, ParseTag) {
  EXPECT_EQ(ParseTag("O")->prefix, 'O');
  EXPECT_EQ(ParseTag("B-city")->slot, "city");
  EXPECT_EQ(ParseTag("I-city")->prefix, 'I');
  EXPECT_FALSE(ParseTag("X-city"));
  EXPECT_FALSE(ParseTag("B-"));
  EXPECT_FALSE(ParseTag("city"));
}

TEST(TagTest, BioViolations) {
  EXPECT_TRUE(BioViolations(3, {"B-a", "I-a", "O"}).empty());
  EXPECT_EQ(BioViolations(2, {"O", "I-a"}).size(), 1u);
  EXPECT_EQ(BioViolations(2, {"B-a", "I-b"}).size(), 1u);
  EXPECT_EQ(BioViolations(1, {"I-a"}).size(), 1u);
  EXPECT_EQ(BioViolations(3, {"O", "O"}).size(), 1u);
  EXPECT_EQ(BioViolations(1, {"Q"}).size(), 1u);
}

TEST(TagTest, ExtractChunks) {
  EXPECT_EQ(ExtractChunks({"B-a", "I-a", "O", "B-b", "B-b", "I-b"}),
            (std::vector<Chunk>{{"a", 0, 2}, {"b", 3, 4}, {"b", 4, 6}}));
  // Lenient reading: a stray I- opens a chunk, a type change closes one.
  EXPECT_EQ(ExtractChunks({"I-a", "I-a", "I-b"}),
            (std::vector<Chunk>{{"a", 0, 2}, {"b", 2, 3}}));
  EXPECT_TRUE(ExtractChunks({"O", "O"}).empty());
}

TEST(LabeledExampleTest, ConstructorValidates) {
  EXPECT_NO_THROW(Example("play jazz", "Play", {"O", "B-genre"}));
  EXPECT_THROW(Example("play jazz", "Play", {"O"}), ValidationError);
  EXPECT_THROW(Example("play jazz", "Play", {"O", "I-genre"}), ValidationError);
  EXPECT_THROW(Example("play jazz", "", {"O", "O"}), ValidationError);
}

Ontology PlayOntology() {
  return Ontology({"Play"}, {"artist", "genre"},
                  {{"genre", {"jazz", "pop"}}});
}

TEST(OntologyTest, RejectsUndeclaredNames) {
  EXPECT_THROW(Ontology({"Play"}, {"genre"}, {{"city", {"x"}}}),
               ValidationError);
  EXPECT_THROW(Ontology({"Play"}, {"genre"}, {},
                        std::vector<DialogueAct>{DialogueAct("Other")}),
               ValidationError);
  EXPECT_THROW(Ontology({"Play"}, {"genre"}, {},
                        std::vector<DialogueAct>{
                            DialogueAct("Play", {{"city", "x"}})}),
               ValidationError);
}

TEST(ValidateTest, CleanCorpusHasNoErrors) {
  Corpus c;
  c.paired.push_back(Example("play jazz", "Play", {"O", "B-genre"}));
  c.acts_only.push_back(DialogueAct("Play", {{"artist", "adele"}}));
  EXPECT_TRUE(Validate(c, PlayOntology()).empty());
}

TEST(ValidateTest, ReportsEachProblem) {
  Corpus c;
  c.paired.push_back(LabeledExample::Unchecked(Utterance("play jazz now"),
                                               "Play",
                                               {"O", "I-genre", "O"}));
  c.paired.push_back(Example("play jazz", "Sing", {"O", "B-mood"}));
  c.acts_only.push_back(DialogueAct("Play", {{"city", "x"}}));
  std::vector<Violation> v = Validate(c, PlayOntology());
  EXPECT_EQ(CountErrors(v), 4u);
  // Output is sorted, so repeated calls agree.
  EXPECT_EQ(v, Validate(c, PlayOntology()));
}

TEST(ValidateTest, ZeroSlotExamplesAreInformational) {
  Corpus c;
  c.paired.push_back(Example("hello there", "Play", {"O", "O"}));
  c.acts_only.push_back(DialogueAct("Play"));
  std::vector<Violation> v = Validate(c, PlayOntology());
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(CountErrors(v), 0u);
  EXPECT_EQ(v[0].severity, Severity::kInfo);
}

TEST(OntologyTest, FromCorpusAndMerge) {
  Corpus c;
  c.paired.push_back(Example("play new york jazz", "Play",
                             {"O", "B-city", "I-city", "B-genre"}));
  c.acts_only.push_back(DialogueAct("Stop", {{"device", "tv"}}));
  Ontology o = OntologyFromCorpus(c);
  EXPECT_EQ(o.intents(), (std::set<std::string>{"Play", "Stop"}));
  EXPECT_EQ(o.known_values().at("city"), (std::set<std::string>{"new york"}));
  Ontology merged = MergeOntologies(o, PlayOntology());
  EXPECT_EQ(merged.slots(),
            (std::set<std::string>{"artist", "city", "device", "genre"}));
  EXPECT_EQ(merged.known_values().at("genre"),
            (std::set<std::string>{"jazz", "pop"}));
}

}  // namespace
}  // namespace sluaug
