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


#ifndef SLUAUG_PIPELINE_H_
#define SLUAUG_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sluaug/config.h"
#include "sluaug/dialogue.h"
#include "sluaug/errors.h"
#include "sluaug/metrics.h"
#include "sluaug/protocol.h"

namespace sluaug {

// Act -> utterance direction. One output list per input act, in input
// order; an empty list means the backend had nothing for that act.
class UtteranceGenerator {
 public:
  virtual ~UtteranceGenerator() = default;
  virtual std::vector<std::vector<std::string>> Generate(
      const std::vector<DialogueAct> &acts) = 0;
};

// Utterance -> act direction. nullopt marks an utterance the labeler
// rejected.
class ActLabeler {
 public:
  virtual ~ActLabeler() = default;
  virtual std::vector<std::optional<DialogueAct>> Label(
      const std::vector<Utterance> &utterances) = 0;
};

// Everything a cell reads, loaded once per matrix run.
struct PipelineInputs {
  Corpus train;
  std::vector<LabeledExample> dev;
  std::vector<LabeledExample> test;
  // Loaded ontology merged with names found in train. Empty known values
  // and no valid acts when no ontology file was given.
  Ontology ontology;
  bool has_ontology_file = false;
  std::vector<Utterance> unlabeled;
};

PipelineInputs LoadInputs(const PipelineConfig &cfg);

std::unique_ptr<UtteranceGenerator> MakeGenerator(const PipelineConfig &cfg,
                                                  const PipelineInputs &inputs,
                                                  uint64_t seed);
std::unique_ptr<ActLabeler> MakeLabeler(const PipelineConfig &cfg,
                                        const PipelineInputs &inputs,
                                        uint64_t seed);

struct StageCounts {
  size_t inputs = 0;          // acts or utterances handed to a backend
  size_t empty_inputs = 0;    // inputs that produced no candidate
  size_t candidates = 0;
  size_t filtered = 0;
  size_t deduplicated = 0;
  size_t kept = 0;            // survivors before truncation
  size_t truncated = 0;
  size_t added = 0;

  bool Reconciles() const {
    return candidates == kept + filtered + deduplicated &&
           kept == added + truncated;
  }
  bool operator==(const StageCounts &) const = default;
};

// `stage\tcount` lines.
std::string FormatStages(const StageCounts &stages);

struct Augmentation {
  std::vector<LabeledExample> added;
  StageCounts stages;
};

// Generate, filter on value coverage, drop duplicates of `existing` and of
// earlier candidates, keep the first `target` in generation order, align.
Augmentation AugmentFromActs(const std::vector<DialogueAct> &acts,
                             UtteranceGenerator &generator,
                             const std::vector<LabeledExample> &existing,
                             size_t target, const MatchPolicy &policy);

// Label, back-check that every value occurs, deduplicate, truncate, align.
Augmentation AugmentFromUtterances(const std::vector<Utterance> &utterances,
                                   ActLabeler &labeler,
                                   const std::vector<LabeledExample> &existing,
                                   size_t target, const MatchPolicy &policy);

struct CellResult {
  Scenario scenario = Scenario::kNoDa;
  uint64_t seed = 0;
  // Set when the cell failed; the other fields are then partial.
  std::optional<std::string> error;
  ErrorKind error_kind = ErrorKind::kData;
  Corpus augmented;
  StageCounts stages;
  EvalReport report;
};

// One scenario under one seed. Throws on failure.
CellResult RunCell(Scenario scenario, const PipelineConfig &cfg,
                   const PipelineInputs &inputs, uint64_t seed);

// Trains both models on `train` and scores them on `test`.
EvalReport TrainAndEvaluate(const std::vector<LabeledExample> &train,
                            const std::vector<LabeledExample> &dev,
                            const std::vector<LabeledExample> &test,
                            size_t epochs, uint64_t seed);

struct ScenarioRow {
  Scenario scenario;
  std::vector<std::optional<double>> slot_f1;  // per seed
  std::vector<std::optional<double>> intent_accuracy;
  std::optional<double> median_slot_f1;
  std::optional<double> median_intent_accuracy;
};

struct Comparison {
  size_t best_row = 0;
  size_t baseline_row = 0;
  std::optional<TTestResult> test;
  std::string note;  // why `test` is missing
};

struct MatrixResult {
  std::vector<uint64_t> seeds;
  std::vector<CellResult> cells;  // row-major: scenario, then seed
  std::vector<ScenarioRow> rows;
  std::vector<Comparison> comparisons;
  std::vector<std::string> warnings;

  size_t failures() const;
};

std::optional<double> Median(std::vector<double> values);

// Runs every listed scenario under every seed. Cell failures are recorded
// and the run continues.
MatrixResult RunMatrix(const PipelineConfig &cfg, const PipelineInputs &inputs);
MatrixResult RunMatrix(const PipelineConfig &cfg);

// Rows of scenarios, median scores, per-seed detail, significance lines.
std::string FormatSummary(const MatrixResult &result);
// `scenario\tseed\tmetric\tvalue` lines for every cell.
std::string FormatMatrixTsv(const MatrixResult &result);

// out/<scenario>/seed-<n>/{augmented.txt,report.tsv,stages.tsv}, plus
// out/report.tsv and out/summary.txt.
void WriteMatrix(const MatrixResult &result, const std::filesystem::path &out);

}  // namespace sluaug

#endif  // SLUAUG_PIPELINE_H_
