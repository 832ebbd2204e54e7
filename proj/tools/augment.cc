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


// Command-line front end. Exit status: 0 success, 1 configuration error,
// 2 data error, 3 backend error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "sluaug/config.h"
#include "sluaug/conformance.h"
#include "sluaug/corpus_io.h"
#include "sluaug/dialogue.h"
#include "sluaug/errors.h"
#include "sluaug/metrics.h"
#include "sluaug/pipeline.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitBackend = 3;

int ExitCodeFor(sluaug::ErrorKind kind) {
  switch (kind) {
    case sluaug::ErrorKind::kConfig:
      return kExitConfig;
    case sluaug::ErrorKind::kData:
      return kExitData;
    case sluaug::ErrorKind::kBackend:
      return kExitBackend;
  }
  return kExitData;
}

struct RunArgs {
  std::string config;
  std::vector<std::string> scenarios;
  std::optional<uint64_t> seed;
  std::string backend;
  std::string out;
  bool print_config = false;
};

int Run(const RunArgs &args) {
  sluaug::PipelineConfig cfg;
  if (!args.config.empty()) cfg = sluaug::LoadConfig(args.config);
  if (!args.scenarios.empty()) {
    cfg.scenarios.clear();
    for (const std::string &name : args.scenarios) {
      std::optional<sluaug::Scenario> s = sluaug::ParseScenario(name);
      if (!s) throw sluaug::ConfigError("unknown scenario '" + name + "'");
      cfg.scenarios.push_back(*s);
    }
  }
  if (args.seed) cfg.seeds = {*args.seed};
  if (!args.backend.empty()) {
    cfg.backend = sluaug::EndpointSpec::Parse(args.backend);
  }
  if (args.print_config) {
    std::cout << sluaug::FormatConfig(cfg);
    return 0;
  }
  if (args.config.empty()) throw sluaug::ConfigError("--config is required");
  if (args.out.empty()) throw sluaug::ConfigError("--out is required");
  cfg.Check();

  sluaug::MatrixResult result = sluaug::RunMatrix(cfg);
  sluaug::WriteMatrix(result, args.out);
  std::cout << sluaug::FormatSummary(result);
  if (result.failures() == 0) return 0;
  // Every cell failed the same way: report that class of failure.
  int code = 0;
  for (const sluaug::CellResult &cell : result.cells) {
    if (!cell.error) return kExitData;
    const int c = ExitCodeFor(cell.error_kind);
    if (code != 0 && code != c) return kExitData;
    code = c;
  }
  return code;
}

int Validate(const std::string &corpus_path, const std::string &ontology_path) {
  sluaug::Corpus corpus = sluaug::LoadCorpus(corpus_path);
  sluaug::Ontology ontology = sluaug::OntologyFromCorpus(corpus);
  if (!ontology_path.empty()) {
    ontology = sluaug::LoadOntology(ontology_path);
  }
  const std::vector<sluaug::Violation> violations =
      sluaug::Validate(corpus, ontology);
  for (const sluaug::Violation &v : violations) {
    std::cout << (v.severity == sluaug::Severity::kError ? "error: "
                                                          : "info: ")
              << v.message << "\n";
  }
  const size_t errors = sluaug::CountErrors(violations);
  std::cout << fmt::format("{} error(s), {} note(s)\n", errors,
                           violations.size() - errors);
  return errors == 0 ? 0 : kExitData;
}

int Eval(const std::string &gold_path, const std::string &pred_path, bool tsv) {
  const sluaug::Corpus gold = sluaug::LoadCorpus(gold_path);
  const sluaug::Corpus pred = sluaug::LoadCorpus(pred_path);
  if (gold.paired.size() != pred.paired.size()) {
    throw sluaug::ArityMismatch(fmt::format(
        "gold has {} examples, predictions have {}", gold.paired.size(),
        pred.paired.size()));
  }
  std::vector<std::vector<std::string>> tags;
  std::vector<std::string> gold_intents;
  std::vector<std::string> pred_intents;
  for (size_t i = 0; i < gold.paired.size(); ++i) {
    if (gold.paired[i].tokens() != pred.paired[i].tokens()) {
      throw sluaug::ArityMismatch(
          fmt::format("example {}: tokens differ between files", i + 1));
    }
    tags.push_back(pred.paired[i].tags());
    gold_intents.push_back(gold.paired[i].intent());
    pred_intents.push_back(pred.paired[i].intent());
  }
  sluaug::EvalReport report = sluaug::SlotF1(gold.paired, tags);
  report.intent_accuracy = sluaug::IntentAccuracy(gold_intents, pred_intents);
  report.token_f1 = sluaug::TokenF1(gold.paired, tags);
  std::cout << (tsv ? sluaug::FormatReportTsv(report)
                    : sluaug::FormatReport(report));
  return 0;
}

int Stats(const std::string &corpus_path) {
  std::cout << sluaug::FormatStats(
      sluaug::ComputeStats(sluaug::LoadCorpus(corpus_path)));
  return 0;
}

// Prints one line per suite; a failing suite is a backend error.
int Conformance(const std::vector<std::string> &suites,
                const std::string &backend, int timeout_ms) {
  const sluaug::EndpointSpec spec = sluaug::EndpointSpec::Parse(backend);
  bool all = true;
  for (const std::string &path : suites) {
    const sluaug::ConformanceResult result = sluaug::RunConformance(
        sluaug::LoadConformanceScript(path), spec,
        std::chrono::milliseconds(timeout_ms));
    if (result.passed) {
      fmt::print("PASS {}\n", path);
    } else {
      fmt::print("FAIL {}: {}\n", path, result.failure);
      all = false;
    }
  }
  return all ? 0 : kExitBackend;
}

}  // namespace

int main(int argc, char **argv) {
  auto logger = spdlog::stderr_color_st("augment");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);

  CLI::App app{"SLU data augmentation toolkit."};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress to standard error");

  RunArgs run_args;
  CLI::App *run = app.add_subcommand("run", "Run the scenario matrix");
  run->add_option("--config", run_args.config, "Configuration file");
  run->add_option("--scenario", run_args.scenarios,
                  "Restrict to these scenarios");
  run->add_option("--seed", run_args.seed, "Run a single seed");
  run->add_option("--backend", run_args.backend,
                  "builtin | exec:<cmd> | tcp:<host:port> | fixture:<file>");
  run->add_option("--out", run_args.out, "Output directory");
  run->add_flag("--print-config", run_args.print_config,
                "Print the effective configuration and exit");

  std::string validate_corpus;
  std::string validate_ontology;
  CLI::App *validate = app.add_subcommand("validate", "Check a corpus file");
  validate->add_option("corpus", validate_corpus)->required();
  validate->add_option("--ontology", validate_ontology, "Ontology file");

  std::string gold;
  std::string pred;
  bool tsv = false;
  CLI::App *eval = app.add_subcommand("eval", "Score predictions");
  eval->add_option("--gold", gold)->required();
  eval->add_option("--pred", pred)->required();
  eval->add_flag("--tsv", tsv, "Machine-readable output");

  std::string stats_corpus;
  CLI::App *stats = app.add_subcommand("stats", "Summarize a corpus file");
  stats->add_option("corpus", stats_corpus)->required();

  std::vector<std::string> suites;
  std::string conformance_backend;
  int conformance_timeout_ms = 10000;
  CLI::App *conformance = app.add_subcommand(
      "conformance", "Check a protocol endpoint against recorded sessions");
  conformance->add_option("suites", suites, "Session scripts")->required();
  conformance->add_option("--backend", conformance_backend,
                          "exec:<cmd> | tcp:<host:port>")
      ->required();
  conformance->add_option("--timeout-ms", conformance_timeout_ms,
                          "Wait per expected line")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  spdlog::set_level(verbose ? spdlog::level::info : spdlog::level::warn);

  try {
    if (*run) return Run(run_args);
    if (*validate) return Validate(validate_corpus, validate_ontology);
    if (*eval) return Eval(gold, pred, tsv);
    if (*stats) return Stats(stats_corpus);
    if (*conformance) {
      return Conformance(suites, conformance_backend, conformance_timeout_ms);
    }
  } catch (const sluaug::Error &e) {
    spdlog::error("{}", e.what());
    return ExitCodeFor(e.kind());
  } catch (const std::filesystem::filesystem_error &e) {
    spdlog::error("{}", e.what());
    return kExitData;
  }
  return kExitConfig;
}
