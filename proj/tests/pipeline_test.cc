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


#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sluaug/align.h"
#include "sluaug/config.h"
#include "sluaug/corpus_io.h"
#include "sluaug/dialogue.h"
#include "sluaug/errors.h"
#include "sluaug/pipeline.h"

namespace sluaug {
namespace {

namespace fs = std::filesystem;

class CannedGenerator : public UtteranceGenerator {
 public:
  explicit CannedGenerator(std::vector<std::vector<std::string>> out)
      : out_(std::move(out)) {}
  std::vector<std::vector<std::string>> Generate(
      const std::vector<DialogueAct> &) override {
    return out_;
  }

 private:
  std::vector<std::vector<std::string>> out_;
};

class CannedLabeler : public ActLabeler {
 public:
  explicit CannedLabeler(std::vector<std::optional<DialogueAct>> out)
      : out_(std::move(out)) {}
  std::vector<std::optional<DialogueAct>> Label(
      const std::vector<Utterance> &) override {
    return out_;
  }

 private:
  std::vector<std::optional<DialogueAct>> out_;
};

DialogueAct Play(const std::string &slot, const std::string &value) {
  return DialogueAct("Play", {{slot, value}});
}

TEST(AugmentFromActsTest, StagesCountedByHand) {
  std::vector<LabeledExample> existing = {
      LabeledExample(Utterance("play adele"), "Play", {"O", "B-artist"})};
  std::vector<DialogueAct> acts = {Play("artist", "adele"), Play("artist", "queen"),
                                   Play("genre", "pop")};
  CannedGenerator gen({{"play adele", "put on adele", "Play ( artist = adele )"},
                       {"play queen", "play something", "play   queen"},
                       {}});
  Augmentation aug = AugmentFromActs(acts, gen, existing, 1, MatchPolicy{});
  StageCounts want;
  want.inputs = 3;
  want.empty_inputs = 1;
  want.candidates = 6;
  want.filtered = 2;      // the echoed MR and "play something"
  want.deduplicated = 2;  // a training text and a repeat after normalization
  want.kept = 2;
  want.truncated = 1;
  want.added = 1;
  EXPECT_EQ(aug.stages, want);
  EXPECT_TRUE(aug.stages.Reconciles());
  ASSERT_EQ(aug.added.size(), 1u);
  EXPECT_EQ(aug.added[0], LabeledExample(Utterance("put on adele"), "Play",
                                         {"O", "O", "B-artist"}));
  EXPECT_NE(FormatStages(aug.stages).find("\ninputs\t3\n"), std::string::npos);

  CannedGenerator wrong_arity({{"x"}});
  EXPECT_THROW(AugmentFromActs(acts, wrong_arity, existing, 5, MatchPolicy{}),
               ProtocolError);
  CannedGenerator none({});
  EXPECT_EQ(AugmentFromActs({}, none, existing, 5, MatchPolicy{}).stages,
            StageCounts{});
}

TEST(AugmentFromUtterancesTest, StagesCountedByHand) {
  std::vector<LabeledExample> existing = {
      LabeledExample(Utterance("play adele"), "Play", {"O", "B-artist"})};
  std::vector<Utterance> utterances = {Utterance("play adele now"), Utterance("hello"),
                                       Utterance("play queen"), Utterance("play adele now"),
                                       Utterance("play adele")};
  CannedLabeler labeler({Play("artist", "adele"), std::nullopt,
                         Play("artist", "adele"), Play("artist", "adele"),
                         Play("artist", "adele")});
  Augmentation aug = AugmentFromUtterances(utterances, labeler, existing, 10,
                                           MatchPolicy{});
  StageCounts want;
  want.inputs = 5;
  want.candidates = 5;
  want.filtered = 2;
  want.deduplicated = 2;
  want.kept = 1;
  want.added = 1;
  EXPECT_EQ(aug.stages, want);
  ASSERT_EQ(aug.added.size(), 1u);
  EXPECT_EQ(aug.added[0].tags(), (std::vector<std::string>{"O", "B-artist", "O"}));
}

TEST(MedianTest, OddEvenEmpty) {
  EXPECT_EQ(Median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(Median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_FALSE(Median({}).has_value());
}

// The toy benchmark with a small matrix by default.
class ToyPipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    base_ = LoadConfig(SLUAUG_SOURCE_DIR "/data/toy/toy.cfg");
    inputs_ = new PipelineInputs(LoadInputs(base_));
  }
  static void TearDownTestSuite() { delete inputs_; }

  static PipelineConfig Config(std::vector<Scenario> scenarios,
                               std::vector<uint64_t> seeds = {1}) {
    PipelineConfig cfg = base_;
    cfg.scenarios = std::move(scenarios);
    cfg.seeds = std::move(seeds);
    return cfg;
  }

  static fs::path TempDir(const std::string &name) {
    fs::path dir = fs::temp_directory_path() /
                   ("sluaug_pipeline_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
  }

  static std::string Stub(const std::string &mode) {
    return std::string("exec:") + SLUAUG_STUB_BACKEND + " --mode " + mode;
  }

  static PipelineConfig base_;
  static PipelineInputs *inputs_;
};

PipelineConfig ToyPipelineTest::base_;
PipelineInputs *ToyPipelineTest::inputs_ = nullptr;

TEST_F(ToyPipelineTest, InputsLoaded) {
  EXPECT_EQ(inputs_->train.paired.size(), 40u);
  EXPECT_EQ(inputs_->dev.size(), 100u);
  EXPECT_EQ(inputs_->test.size(), 300u);
  EXPECT_EQ(inputs_->unlabeled.size(), 1000u);
  ASSERT_TRUE(inputs_->ontology.valid_acts().has_value());
  EXPECT_EQ(inputs_->ontology.valid_acts()->size(), 500u);
  EXPECT_TRUE(inputs_->has_ontology_file);
}

TEST_F(ToyPipelineTest, EveryCellReconcilesAndRespectsVolume) {
  MatrixResult m = RunMatrix(Config({Scenario::kNoDa, Scenario::kPairedOnly,
                                     Scenario::kRichInOntology,
                                     Scenario::kRichInUtterance}),
                             *inputs_);
  ASSERT_EQ(m.failures(), 0u);
  const size_t k = base_.decoding.samples_per_input;
  for (const CellResult &cell : m.cells) {
    EXPECT_TRUE(cell.stages.Reconciles()) << ScenarioName(cell.scenario);
    // The augmented corpus is the training set followed by the additions.
    ASSERT_EQ(cell.augmented.paired.size(),
              inputs_->train.paired.size() + cell.stages.added);
    for (size_t i = 0; i < inputs_->train.paired.size(); ++i) {
      EXPECT_EQ(cell.augmented.paired[i], inputs_->train.paired[i]);
    }
    EXPECT_LE(cell.stages.added, base_.synthetic_target);
    // Zero-slot examples only draw informational notes.
    EXPECT_EQ(CountErrors(Validate(cell.augmented, inputs_->ontology)), 0u)
        << ScenarioName(cell.scenario);
  }
  const CellResult &paired = m.cells[1];
  EXPECT_EQ(paired.stages.inputs, base_.perturb.target_count);
  EXPECT_LE(paired.stages.candidates, base_.perturb.target_count * k);
  EXPECT_EQ(m.cells[0].stages, StageCounts{});
  // Added examples are disjoint from training texts and from each other.
  for (const CellResult &cell : m.cells) {
    std::set<std::string> texts;
    for (const LabeledExample &ex : inputs_->train.paired) texts.insert(ex.utterance().Text());
    for (size_t i = inputs_->train.paired.size(); i < cell.augmented.paired.size(); ++i) {
      EXPECT_TRUE(texts.insert(cell.augmented.paired[i].utterance().Text()).second);
    }
  }
}

TEST_F(ToyPipelineTest, EchoBackendAddsNothing) {
  PipelineConfig cfg = Config({Scenario::kNoDa, Scenario::kPairedOnly});
  cfg.backend = EndpointSpec::Parse(Stub("echo"));
  MatrixResult m = RunMatrix(cfg, *inputs_);
  ASSERT_EQ(m.failures(), 0u);
  const CellResult &echo = m.cells[1];
  EXPECT_EQ(echo.stages.added, 0u);
  EXPECT_EQ(echo.stages.filtered, echo.stages.candidates);
  EXPECT_GT(echo.stages.candidates, 0u);
  EXPECT_EQ(FormatReportTsv(echo.report), FormatReportTsv(m.cells[0].report));
}

TEST_F(ToyPipelineTest, NoSampledActsMatchesBaseline) {
  PipelineConfig cfg = Config({Scenario::kNoDa, Scenario::kRichInOntology});
  cfg.acts_to_use = 0;
  MatrixResult m = RunMatrix(cfg, *inputs_);
  ASSERT_EQ(m.failures(), 0u);
  EXPECT_EQ(m.cells[1].stages.added, 0u);
  EXPECT_EQ(FormatReportTsv(m.cells[1].report), FormatReportTsv(m.cells[0].report));
}

TEST_F(ToyPipelineTest, OntologyScenarioBringsUnseenValues) {
  MatrixResult m = RunMatrix(Config({Scenario::kRichInOntology}), *inputs_);
  ASSERT_EQ(m.failures(), 0u);
  std::set<std::pair<std::string, std::string>> seen;
  for (const LabeledExample &ex : inputs_->train.paired) {
    const DialogueAct act = DaFromLabeled(ex);
    for (const SlotValue &sv : act.slots()) seen.insert({sv.slot(), sv.value()});
  }
  size_t unseen = 0;
  for (const LabeledExample &ex : m.cells[0].augmented.paired) {
    const DialogueAct act = DaFromLabeled(ex);
    for (const SlotValue &sv : act.slots()) {
      unseen += !seen.count({sv.slot(), sv.value()});
    }
  }
  EXPECT_GT(unseen, 0u);
}

TEST_F(ToyPipelineTest, SingleSeedWarnsAndSkipsTests) {
  MatrixResult m = RunMatrix(Config({Scenario::kNoDa, Scenario::kPairedOnly}), *inputs_);
  ASSERT_EQ(m.warnings.size(), 1u);
  EXPECT_EQ(m.warnings[0], "single seed: significance tests skipped");
  EXPECT_TRUE(m.comparisons.empty());
  EXPECT_NE(FormatSummary(m).find("single seed"), std::string::npos);
}

TEST_F(ToyPipelineTest, RepeatedScenarioGivesIdenticalRows) {
  MatrixResult m =
      RunMatrix(Config({Scenario::kPairedOnly, Scenario::kPairedOnly}, {1, 2}), *inputs_);
  ASSERT_EQ(m.rows.size(), 2u);
  EXPECT_EQ(m.rows[0].slot_f1, m.rows[1].slot_f1);
  EXPECT_EQ(m.rows[0].intent_accuracy, m.rows[1].intent_accuracy);
  ASSERT_EQ(m.comparisons.size(), 1u);
  EXPECT_FALSE(m.comparisons[0].test.has_value());
  EXPECT_FALSE(m.comparisons[0].note.empty());
}

TEST_F(ToyPipelineTest, EmptyUnlabeledPoolFailsThatCellOnly) {
  const fs::path dir = TempDir("empty");
  std::ofstream(dir / "unlabeled.txt") << "";
  PipelineConfig cfg = Config({Scenario::kNoDa, Scenario::kRichInUtterance});
  cfg.paths.unlabeled = dir / "unlabeled.txt";
  MatrixResult m = RunMatrix(cfg);
  EXPECT_EQ(m.failures(), 1u);
  EXPECT_FALSE(m.cells[0].error.has_value());
  ASSERT_TRUE(m.cells[1].error.has_value());
  EXPECT_EQ(m.cells[1].error_kind, ErrorKind::kData);
  fs::remove_all(dir);
}

TEST_F(ToyPipelineTest, BackendFailuresAreRecordedPerCell) {
  PipelineConfig cfg = Config({Scenario::kNoDa, Scenario::kPairedOnly});
  cfg.backend = EndpointSpec::Parse(Stub("partial"));
  MatrixResult m = RunMatrix(cfg, *inputs_);
  EXPECT_EQ(m.failures(), 1u);
  EXPECT_EQ(m.cells[1].error_kind, ErrorKind::kBackend);
  EXPECT_NE(FormatSummary(m).find("paired_only"), std::string::npos);
}

TEST_F(ToyPipelineTest, InvalidTrainingDataIsRejected) {
  const fs::path dir = TempDir("invalid");
  std::ofstream(dir / "train.txt") << "";
  PipelineConfig cfg = Config({Scenario::kNoDa});
  cfg.paths.train = dir / "train.txt";
  EXPECT_THROW(RunMatrix(cfg), InsufficientData);
  fs::remove_all(dir);
}

std::map<std::string, std::string> ReadTree(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = text.str();
  }
  return files;
}

TEST_F(ToyPipelineTest, BuiltinRunsAreByteIdentical) {
  PipelineConfig cfg = Config({Scenario::kPairedOnly, Scenario::kRichInOntology,
                               Scenario::kRichInUtterance},
                              {1, 2});
  const fs::path a = TempDir("det_a");
  const fs::path b = TempDir("det_b");
  WriteMatrix(RunMatrix(cfg, *inputs_), a);
  WriteMatrix(RunMatrix(cfg, LoadInputs(cfg)), b);
  auto files_a = ReadTree(a);
  EXPECT_EQ(files_a, ReadTree(b));
  EXPECT_TRUE(files_a.count("paired_only/seed-1/augmented.txt"));
  EXPECT_TRUE(files_a.count("summary.txt"));
  EXPECT_TRUE(files_a.count("report.tsv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_F(ToyPipelineTest, FixtureRunsAreByteIdentical) {
  PipelineConfig cfg =
      Config({Scenario::kRichInOntology, Scenario::kRichInUtterance}, {1, 2});
  cfg.backend = EndpointSpec::Parse("fixture:" SLUAUG_SOURCE_DIR "/data/toy/fixture.tsv");
  MatrixResult first = RunMatrix(cfg, *inputs_);
  ASSERT_EQ(first.failures(), 0u);
  MatrixResult second = RunMatrix(cfg, *inputs_);
  EXPECT_EQ(FormatMatrixTsv(first), FormatMatrixTsv(second));
  for (size_t i = 0; i < first.cells.size(); ++i) {
    EXPECT_EQ(FormatCorpus(first.cells[i].augmented),
              FormatCorpus(second.cells[i].augmented));
    EXPECT_GT(first.cells[i].stages.added, 0u);
  }
}

}  // namespace
}  // namespace sluaug
