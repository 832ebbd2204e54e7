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


#ifndef SLUAUG_CONFIG_H_
#define SLUAUG_CONFIG_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sluaug/align.h"
#include "sluaug/perturb.h"
#include "sluaug/protocol.h"
#include "sluaug/template_generator.h"

namespace sluaug {

enum class Scenario { kNoDa, kPairedOnly, kRichInOntology, kRichInUtterance };

std::string_view ScenarioName(Scenario s);
std::optional<Scenario> ParseScenario(std::string_view name);

struct DataPaths {
  std::filesystem::path train;
  std::filesystem::path dev;  // optional
  std::filesystem::path test;
  std::filesystem::path ontology;
  std::filesystem::path unlabeled;
};

struct PipelineConfig {
  std::vector<Scenario> scenarios = {Scenario::kNoDa, Scenario::kPairedOnly,
                                     Scenario::kRichInOntology,
                                     Scenario::kRichInUtterance};
  DataPaths paths;
  EndpointSpec backend;
  // perturb.seed is ignored; each cell derives its own from the run seed.
  PerturbConfig perturb;
  DecodingParams decoding;
  MatchPolicy match;
  double min_margin = 0.0;
  size_t acts_to_use = 500;
  size_t utterances_to_use = 1000;
  size_t synthetic_target = 500;
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  size_t epochs = 10;
  std::chrono::milliseconds timeout = std::chrono::seconds(60);

  // Throws ConfigError on bad ranges or a scenario whose inputs are missing.
  void Check() const;
};

// INI-style text: `[section]` headers, `key = value` lines, `;` comments.
// Relative paths resolve against base_dir. Unknown keys are errors; Check()
// is left to the caller so command-line overrides can apply first.
PipelineConfig ParseConfig(std::string_view text,
                           const std::filesystem::path &base_dir);
PipelineConfig LoadConfig(const std::filesystem::path &path);

// Every key with its effective value; ParseConfig accepts the output.
std::string FormatConfig(const PipelineConfig &cfg);

}  // namespace sluaug

#endif  // SLUAUG_CONFIG_H_
