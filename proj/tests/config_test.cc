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


#include <string>

#include <gtest/gtest.h>

#include "sluaug/config.h"
#include "sluaug/errors.h"

namespace sluaug {
namespace {

const std::filesystem::path kBase = "/work/cfg";

TEST(ScenarioTest, Names) {
  for (Scenario s : {Scenario::kNoDa, Scenario::kPairedOnly, Scenario::kRichInOntology,
                     Scenario::kRichInUtterance}) {
    EXPECT_EQ(ParseScenario(ScenarioName(s)), s);
  }
  EXPECT_EQ(ScenarioName(Scenario::kRichInOntology), "rich_in_ontology");
  EXPECT_FALSE(ParseScenario("rich").has_value());
}

TEST(ParseConfigTest, DefaultsSurviveAnEmptyFile) {
  PipelineConfig cfg = ParseConfig("", kBase);
  PipelineConfig def;
  EXPECT_EQ(FormatConfig(cfg), FormatConfig(def));
  EXPECT_EQ(def.seeds, (std::vector<uint64_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(def.decoding.samples_per_input, 3u);
  EXPECT_EQ(def.perturb.target_count, 300u);
  EXPECT_EQ(def.timeout, std::chrono::seconds(60));
  EXPECT_EQ(def.backend.kind, EndpointSpec::Kind::kBuiltin);
}

TEST(ParseConfigTest, ReadsEverySection) {
  PipelineConfig cfg = ParseConfig(
      "; comment\n"
      "[data]\n"
      "train = a/train.txt\n"
      "test = /abs/test.txt\n"
      "[run]\n"
      "scenarios = no_da, rich_in_utterance\n"
      "seeds = 7, 9\n"
      "backend = exec:python3 serve.py\n"
      "epochs = 3\n"
      "timeout_ms = 250\n"
      "[perturb]\n"
      "replace_weight = 1\n"
      "insert_weight = 0\n"
      "delete_weight = 0\n"
      "[decoding]\n"
      "top_p = 0.5\n"
      "samples_per_input = 4\n"
      "[match]\n"
      "case_insensitive = false\n"
      "min_margin = 0.25\n",
      kBase);
  EXPECT_EQ(cfg.paths.train, kBase / "a/train.txt");
  EXPECT_EQ(cfg.paths.test, std::filesystem::path("/abs/test.txt"));
  EXPECT_EQ(cfg.scenarios,
            (std::vector<Scenario>{Scenario::kNoDa, Scenario::kRichInUtterance}));
  EXPECT_EQ(cfg.seeds, (std::vector<uint64_t>{7, 9}));
  EXPECT_EQ(cfg.backend.ToString(), "exec:python3 serve.py");
  EXPECT_EQ(cfg.epochs, 3u);
  EXPECT_EQ(cfg.timeout, std::chrono::milliseconds(250));
  EXPECT_EQ(cfg.perturb.replace_weight, 1.0);
  EXPECT_EQ(cfg.decoding.top_p, 0.5);
  EXPECT_EQ(cfg.decoding.samples_per_input, 4u);
  EXPECT_FALSE(cfg.match.case_insensitive);
  EXPECT_TRUE(cfg.match.punctuation_stripping);
  EXPECT_EQ(cfg.min_margin, 0.25);
}

TEST(ParseConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(ParseConfig("[run]\nepoch = 3\n", kBase), ConfigError);
  EXPECT_THROW(ParseConfig("[nowhere]\nx = 1\n", kBase), ConfigError);
  EXPECT_THROW(ParseConfig("epochs = 3\n", kBase), ConfigError);
  EXPECT_THROW(ParseConfig("[run]\nepochs = three\n", kBase), ConfigError);
  EXPECT_THROW(ParseConfig("[run]\nepochs = 3x\n", kBase), ConfigError);
  EXPECT_THROW(ParseConfig("[run]\nscenarios = no_da, magic\n", kBase), ConfigError);
  EXPECT_THROW(ParseConfig("[run]\nbackend = carrier-pigeon\n", kBase), ConfigError);
  EXPECT_THROW(ParseConfig("[match]\ncase_insensitive = maybe\n", kBase), ConfigError);
  EXPECT_THROW(ParseConfig("[run\n", kBase), ConfigError);
}

TEST(ParseConfigTest, FormatRoundTrips) {
  PipelineConfig cfg;
  cfg.paths.train = "/d/train.txt";
  cfg.paths.test = "/d/test.txt";
  cfg.paths.unlabeled = "/d/u.txt";
  cfg.scenarios = {Scenario::kRichInUtterance, Scenario::kNoDa};
  cfg.seeds = {3};
  cfg.backend = EndpointSpec::Parse("tcp:localhost:9000");
  cfg.decoding.temperature = 0.7;
  cfg.perturb.max_attempts = 123;
  cfg.match.punctuation_stripping = false;
  const std::string text = FormatConfig(cfg);
  EXPECT_EQ(FormatConfig(ParseConfig(text, kBase)), text);
}

TEST(CheckTest, RequiresInputsForSelectedScenarios) {
  PipelineConfig cfg;
  cfg.paths.train = "t";
  cfg.paths.test = "s";
  cfg.paths.ontology = "o";
  cfg.paths.unlabeled = "u";
  EXPECT_NO_THROW(cfg.Check());

  PipelineConfig c = cfg;
  c.paths.ontology.clear();
  EXPECT_THROW(c.Check(), ConfigError);
  c.scenarios = {Scenario::kNoDa, Scenario::kRichInUtterance};
  EXPECT_NO_THROW(c.Check());

  c = cfg;
  c.paths.unlabeled.clear();
  EXPECT_THROW(c.Check(), ConfigError);

  c = cfg;
  c.paths.train.clear();
  EXPECT_THROW(c.Check(), ConfigError);
  c = cfg;
  c.seeds.clear();
  EXPECT_THROW(c.Check(), ConfigError);
  c = cfg;
  c.scenarios.clear();
  EXPECT_THROW(c.Check(), ConfigError);
  c = cfg;
  c.epochs = 0;
  EXPECT_THROW(c.Check(), ConfigError);
  c = cfg;
  c.decoding.top_p = 2;
  EXPECT_THROW(c.Check(), ConfigError);
  c = cfg;
  c.perturb.insert_weight = 0.9;
  EXPECT_THROW(c.Check(), ConfigError);
}

TEST(LoadConfigTest, ToyConfigResolvesNextToTheFile) {
  PipelineConfig cfg = LoadConfig(SLUAUG_SOURCE_DIR "/data/toy/toy.cfg");
  EXPECT_NO_THROW(cfg.Check());
  EXPECT_EQ(cfg.paths.train,
            std::filesystem::path(SLUAUG_SOURCE_DIR "/data/toy/train.txt"));
  EXPECT_EQ(cfg.scenarios.size(), 4u);
  EXPECT_THROW(LoadConfig("/nonexistent/x.cfg"), ConfigError);
}

}  // namespace
}  // namespace sluaug
