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


#include "sluaug/pipeline.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sluaug/align.h"
#include "sluaug/corpus_io.h"
#include "sluaug/intent_classifier.h"
#include "sluaug/mr_format.h"
#include "sluaug/nlu_labeling.h"
#include "sluaug/perturb.h"
#include "sluaug/random.h"
#include "sluaug/tagger.h"
#include "sluaug/template_generator.h"

namespace sluaug {
namespace {

class TemplateBackend : public UtteranceGenerator {
 public:
  TemplateBackend(TemplateModel model, DecodingParams params, uint64_t seed)
      : model_(std::move(model)), params_(params), rng_(seed) {}

  std::vector<std::vector<std::string>> Generate(
      const std::vector<DialogueAct> &acts) override {
    std::vector<std::vector<std::string>> out(acts.size());
    for (size_t i = 0; i < acts.size(); ++i) {
      if (!model_.HasIntent(acts[i].intent())) continue;
      for (const Utterance &u : sluaug::Generate(model_, acts[i], params_,
                                                 rng_)) {
        out[i].push_back(u.Text());
      }
    }
    return out;
  }

 private:
  TemplateModel model_;
  DecodingParams params_;
  Rng rng_;
};

class ExternalGenerator : public UtteranceGenerator {
 public:
  ExternalGenerator(std::unique_ptr<TextBackend> backend,
                    DecodingParams params, std::chrono::milliseconds timeout)
      : backend_(std::move(backend)), params_(params), timeout_(timeout) {}

  std::vector<std::vector<std::string>> Generate(
      const std::vector<DialogueAct> &acts) override {
    std::vector<std::string> inputs;
    inputs.reserve(acts.size());
    for (const DialogueAct &act : acts) inputs.push_back(SerializeDa(act));
    return ExternalCall(*backend_, Direction::kNlg, inputs, params_, timeout_);
  }

 private:
  std::unique_ptr<TextBackend> backend_;
  DecodingParams params_;
  std::chrono::milliseconds timeout_;
};

class BuiltinLabeler : public ActLabeler {
 public:
  BuiltinLabeler(IntentModel intent, Ontology ontology,
                 ValueInventory inventory, PseudoLabelConfig cfg)
      : intent_(std::move(intent)),
        ontology_(std::move(ontology)),
        inventory_(std::move(inventory)),
        labeler_(ontology_, inventory_, intent_, cfg) {}

  std::vector<std::optional<DialogueAct>> Label(
      const std::vector<Utterance> &utterances) override {
    std::vector<std::optional<DialogueAct>> out;
    out.reserve(utterances.size());
    for (const Utterance &u : utterances) {
      try {
        out.push_back(labeler_.Label(u));
      } catch (const NoEvidence &) {
        out.push_back(std::nullopt);
      } catch (const UnknownIntent &) {
        out.push_back(std::nullopt);
      }
    }
    return out;
  }

 private:
  IntentModel intent_;
  Ontology ontology_;
  ValueInventory inventory_;
  PseudoLabeler labeler_;
};

class ExternalLabeler : public ActLabeler {
 public:
  ExternalLabeler(std::unique_ptr<TextBackend> backend, Ontology ontology,
                  DecodingParams params, std::chrono::milliseconds timeout)
      : backend_(std::move(backend)),
        ontology_(std::move(ontology)),
        params_(params),
        timeout_(timeout) {}

  // First output that parses and maps onto the ontology wins.
  std::vector<std::optional<DialogueAct>> Label(
      const std::vector<Utterance> &utterances) override {
    std::vector<std::string> inputs;
    inputs.reserve(utterances.size());
    for (const Utterance &u : utterances) inputs.push_back(u.Text());
    std::vector<std::optional<DialogueAct>> out;
    for (const auto &outputs :
         ExternalCall(*backend_, Direction::kNlu, inputs, params_, timeout_)) {
      std::optional<DialogueAct> act;
      for (const std::string &text : outputs) {
        try {
          act = MapToOntology(ParseDa(text), ontology_);
          break;
        } catch (const DataError &) {
        }
      }
      out.push_back(std::move(act));
    }
    return out;
  }

 private:
  std::unique_ptr<TextBackend> backend_;
  Ontology ontology_;
  DecodingParams params_;
  std::chrono::milliseconds timeout_;
};

bool ParsesAsMr(const std::string &text) {
  try {
    ParseDa(text);
    return true;
  } catch (const DataError &) {
    return false;
  }
}

std::unordered_set<std::string> ExistingTexts(
    const std::vector<LabeledExample> &existing) {
  std::unordered_set<std::string> seen;
  for (const LabeledExample &ex : existing) seen.insert(ex.utterance().Text());
  return seen;
}

// A size-min(k, n) subset of [0, n) in ascending order.
std::vector<size_t> SampleIndices(size_t n, size_t k, uint64_t seed) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  Rng rng(seed);
  rng.Shuffle(idx);
  idx.resize(std::min(k, n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

Augmentation Finish(std::vector<std::pair<Utterance, DialogueAct>> kept,
                    StageCounts stages, size_t target,
                    const MatchPolicy &policy) {
  Augmentation out;
  stages.kept = kept.size();
  stages.added = std::min(target, kept.size());
  stages.truncated = stages.kept - stages.added;
  out.added.reserve(stages.added);
  for (size_t i = 0; i < stages.added; ++i) {
    out.added.push_back(LabelWithDa(kept[i].first, kept[i].second, policy));
  }
  out.stages = stages;
  return out;
}

std::vector<DialogueAct> UnseenOntologyActs(const PipelineInputs &inputs) {
  std::set<std::string> seen;
  for (const LabeledExample &ex : inputs.train.paired) {
    seen.insert(CanonicalActKey(DaFromLabeled(ex)));
  }
  std::vector<DialogueAct> pool;
  auto consider = [&](const DialogueAct &act) {
    if (seen.insert(CanonicalActKey(act)).second) pool.push_back(act);
  };
  if (inputs.ontology.valid_acts()) {
    for (const DialogueAct &act : *inputs.ontology.valid_acts()) consider(act);
  }
  for (const DialogueAct &act : inputs.train.acts_only) consider(act);
  return pool;
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write " + path.string());
}

std::string Percent(const std::optional<double> &v) {
  return v ? fmt::format("{:.2f}", 100.0 * *v) : "-";
}

}  // namespace

PipelineInputs LoadInputs(const PipelineConfig &cfg) {
  PipelineInputs in;
  in.train = LoadCorpus(cfg.paths.train);
  if (in.train.paired.empty()) {
    throw InsufficientData("no paired examples in " + cfg.paths.train.string());
  }
  if (!cfg.paths.dev.empty()) in.dev = LoadCorpus(cfg.paths.dev).paired;
  in.test = LoadCorpus(cfg.paths.test).paired;
  in.ontology = OntologyFromCorpus(in.train);
  if (!cfg.paths.ontology.empty()) {
    in.ontology = MergeOntologies(LoadOntology(cfg.paths.ontology),
                                  in.ontology);
    in.has_ontology_file = true;
  }
  in.unlabeled = in.train.utterances_only;
  if (!cfg.paths.unlabeled.empty()) {
    // Labels in the unlabeled file, if any, are discarded.
    Corpus extra = LoadCorpus(cfg.paths.unlabeled);
    for (const LabeledExample &ex : extra.paired) {
      in.unlabeled.push_back(ex.utterance());
    }
    for (Utterance &u : extra.utterances_only) {
      in.unlabeled.push_back(std::move(u));
    }
  }
  return in;
}

std::unique_ptr<UtteranceGenerator> MakeGenerator(const PipelineConfig &cfg,
                                                  const PipelineInputs &inputs,
                                                  uint64_t seed) {
  if (cfg.backend.kind == EndpointSpec::Kind::kBuiltin) {
    return std::make_unique<TemplateBackend>(
        TrainTemplateGenerator(inputs.train.paired), cfg.decoding,
        DeriveSeed(seed, "generate"));
  }
  return std::make_unique<ExternalGenerator>(
      OpenBackend(cfg.backend, cfg.decoding), cfg.decoding, cfg.timeout);
}

std::unique_ptr<ActLabeler> MakeLabeler(const PipelineConfig &cfg,
                                        const PipelineInputs &inputs,
                                        uint64_t seed) {
  if (cfg.backend.kind == EndpointSpec::Kind::kBuiltin) {
    const std::vector<LabeledExample> *dev =
        inputs.dev.empty() ? nullptr : &inputs.dev;
    IntentModel intent = TrainIntent(
        inputs.train.paired, TrainOptions{cfg.epochs, DeriveSeed(seed, "intent")},
        dev);
    PseudoLabelConfig plc;
    plc.policy = cfg.match;
    plc.min_margin = cfg.min_margin;
    return std::make_unique<BuiltinLabeler>(
        std::move(intent), inputs.ontology,
        ComputeStats(inputs.train).value_inventory, plc);
  }
  return std::make_unique<ExternalLabeler>(
      OpenBackend(cfg.backend, cfg.decoding), inputs.ontology, cfg.decoding,
      cfg.timeout);
}

std::string FormatStages(const StageCounts &s) {
  return fmt::format(
      "stage\tcount\ninputs\t{}\nempty_inputs\t{}\ncandidates\t{}\n"
      "filtered\t{}\ndeduplicated\t{}\nkept\t{}\ntruncated\t{}\nadded\t{}\n",
      s.inputs, s.empty_inputs, s.candidates, s.filtered, s.deduplicated,
      s.kept, s.truncated, s.added);
}

Augmentation AugmentFromActs(const std::vector<DialogueAct> &acts,
                             UtteranceGenerator &generator,
                             const std::vector<LabeledExample> &existing,
                             size_t target, const MatchPolicy &policy) {
  StageCounts stages;
  stages.inputs = acts.size();
  if (acts.empty()) return Finish({}, stages, target, policy);

  std::vector<std::vector<std::string>> outputs = generator.Generate(acts);
  if (outputs.size() != acts.size()) {
    throw ProtocolError(fmt::format("generator returned {} batches for {} acts",
                                    outputs.size(), acts.size()));
  }
  std::unordered_set<std::string> seen = ExistingTexts(existing);
  std::vector<std::pair<Utterance, DialogueAct>> kept;
  for (size_t i = 0; i < acts.size(); ++i) {
    if (outputs[i].empty()) ++stages.empty_inputs;
    for (const std::string &text : outputs[i]) {
      ++stages.candidates;
      std::optional<Utterance> u;
      try {
        u.emplace(text);
      } catch (const ValidationError &) {
      }
      // An MR echoed back contains every value but is not an utterance.
      if (!u || ParsesAsMr(text) || !ContainsAllValues(*u, acts[i], policy)) {
        ++stages.filtered;
      } else if (!seen.insert(u->Text()).second) {
        ++stages.deduplicated;
      } else {
        kept.emplace_back(std::move(*u), acts[i]);
      }
    }
  }
  return Finish(std::move(kept), stages, target, policy);
}

Augmentation AugmentFromUtterances(const std::vector<Utterance> &utterances,
                                   ActLabeler &labeler,
                                   const std::vector<LabeledExample> &existing,
                                   size_t target, const MatchPolicy &policy) {
  StageCounts stages;
  stages.inputs = utterances.size();
  if (utterances.empty()) return Finish({}, stages, target, policy);

  std::vector<std::optional<DialogueAct>> acts = labeler.Label(utterances);
  if (acts.size() != utterances.size()) {
    throw ProtocolError(fmt::format("labeler returned {} acts for {} inputs",
                                    acts.size(), utterances.size()));
  }
  std::unordered_set<std::string> seen = ExistingTexts(existing);
  std::vector<std::pair<Utterance, DialogueAct>> kept;
  for (size_t i = 0; i < utterances.size(); ++i) {
    ++stages.candidates;
    if (!acts[i] || !ContainsAllValues(utterances[i], *acts[i], policy)) {
      ++stages.filtered;
    } else if (!seen.insert(utterances[i].Text()).second) {
      ++stages.deduplicated;
    } else {
      kept.emplace_back(utterances[i], std::move(*acts[i]));
    }
  }
  return Finish(std::move(kept), stages, target, policy);
}

EvalReport TrainAndEvaluate(const std::vector<LabeledExample> &train,
                            const std::vector<LabeledExample> &dev,
                            const std::vector<LabeledExample> &test,
                            size_t epochs, uint64_t seed) {
  const std::vector<LabeledExample> *dev_ptr = dev.empty() ? nullptr : &dev;
  TaggerModel tagger =
      TrainTagger(train, TrainOptions{epochs, DeriveSeed(seed, "tagger")},
                  dev_ptr);
  IntentModel intent =
      TrainIntent(train, TrainOptions{epochs, DeriveSeed(seed, "intent")},
                  dev_ptr);
  std::vector<std::vector<std::string>> tags;
  std::vector<std::string> gold_intents;
  std::vector<std::string> predicted_intents;
  for (const LabeledExample &ex : test) {
    tags.push_back(tagger.Tag(ex.tokens()));
    gold_intents.push_back(ex.intent());
    predicted_intents.push_back(intent.Classify(ex.tokens()));
  }
  EvalReport report = SlotF1(test, tags);
  report.intent_accuracy = IntentAccuracy(gold_intents, predicted_intents);
  return report;
}

CellResult RunCell(Scenario scenario, const PipelineConfig &cfg,
                   const PipelineInputs &inputs, uint64_t seed) {
  CellResult cell;
  cell.scenario = scenario;
  cell.seed = seed;
  cell.augmented.paired = inputs.train.paired;
  const std::vector<LabeledExample> &existing = inputs.train.paired;

  Augmentation aug;
  switch (scenario) {
    case Scenario::kNoDa:
      break;
    case Scenario::kPairedOnly: {
      // Only what the paired data itself reveals is available here.
      PerturbConfig perturb = cfg.perturb;
      perturb.seed = DeriveSeed(seed, "perturb");
      std::vector<DialogueAct> acts =
          ExpandActs(inputs.train, OntologyFromCorpus(inputs.train), perturb)
              .acts;
      auto generator = MakeGenerator(cfg, inputs, seed);
      aug = AugmentFromActs(acts, *generator, existing, cfg.synthetic_target,
                            cfg.match);
      break;
    }
    case Scenario::kRichInOntology: {
      std::vector<DialogueAct> pool = UnseenOntologyActs(inputs);
      if (pool.empty()) {
        throw InsufficientData("no dialogue acts beyond the training set");
      }
      std::vector<DialogueAct> acts;
      for (size_t i : SampleIndices(pool.size(), cfg.acts_to_use,
                                    DeriveSeed(seed, "acts"))) {
        acts.push_back(pool[i]);
      }
      auto generator = MakeGenerator(cfg, inputs, seed);
      aug = AugmentFromActs(acts, *generator, existing, cfg.synthetic_target,
                            cfg.match);
      break;
    }
    case Scenario::kRichInUtterance: {
      if (inputs.unlabeled.empty()) {
        throw InsufficientData("no unlabeled utterances");
      }
      std::vector<Utterance> utterances;
      for (size_t i : SampleIndices(inputs.unlabeled.size(),
                                    cfg.utterances_to_use,
                                    DeriveSeed(seed, "utterances"))) {
        utterances.push_back(inputs.unlabeled[i]);
      }
      auto labeler = MakeLabeler(cfg, inputs, seed);
      aug = AugmentFromUtterances(utterances, *labeler, existing,
                                  cfg.synthetic_target, cfg.match);
      break;
    }
  }
  if (!aug.stages.Reconciles()) {
    throw std::logic_error("stage counts do not reconcile:\n" +
                           FormatStages(aug.stages));
  }
  cell.stages = aug.stages;
  for (LabeledExample &ex : aug.added) {
    cell.augmented.paired.push_back(std::move(ex));
  }

  for (const Violation &v : Validate(cell.augmented, inputs.ontology)) {
    if (v.severity == Severity::kError) {
      throw DataError("augmented corpus invalid: " + v.message);
    }
  }
  spdlog::info("{} seed {}: {} candidates, {} filtered, {} duplicates, {} added",
               ScenarioName(scenario), seed, cell.stages.candidates,
               cell.stages.filtered, cell.stages.deduplicated,
               cell.stages.added);
  cell.report = TrainAndEvaluate(cell.augmented.paired, inputs.dev, inputs.test,
                                 cfg.epochs, seed);
  return cell;
}

size_t MatrixResult::failures() const {
  return static_cast<size_t>(std::count_if(
      cells.begin(), cells.end(),
      [](const CellResult &c) { return c.error.has_value(); }));
}

std::optional<double> Median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

MatrixResult RunMatrix(const PipelineConfig &cfg,
                       const PipelineInputs &inputs) {
  cfg.Check();
  MatrixResult m;
  m.seeds = cfg.seeds;
  if (cfg.seeds.size() < 2) {
    m.warnings.push_back("single seed: significance tests skipped");
    spdlog::warn(m.warnings.back());
  }
  for (Scenario scenario : cfg.scenarios) {
    ScenarioRow row{scenario, {}, {}, std::nullopt, std::nullopt};
    std::vector<double> f1s;
    std::vector<double> accs;
    for (uint64_t seed : cfg.seeds) {
      CellResult cell;
      try {
        cell = RunCell(scenario, cfg, inputs, seed);
      } catch (const Error &e) {
        cell.error = e.what();
        cell.error_kind = e.kind();
      } catch (const std::exception &e) {
        cell.error = std::string("internal: ") + e.what();
      }
      cell.scenario = scenario;
      cell.seed = seed;
      if (cell.error) {
        spdlog::error("{} seed {} failed: {}", ScenarioName(scenario), seed,
                      *cell.error);
        row.slot_f1.push_back(std::nullopt);
        row.intent_accuracy.push_back(std::nullopt);
      } else {
        row.slot_f1.push_back(cell.report.slot_f1());
        row.intent_accuracy.push_back(cell.report.intent_accuracy);
        f1s.push_back(cell.report.slot_f1());
        if (cell.report.intent_accuracy) {
          accs.push_back(*cell.report.intent_accuracy);
        }
      }
      m.cells.push_back(std::move(cell));
    }
    row.median_slot_f1 = Median(f1s);
    row.median_intent_accuracy = Median(accs);
    m.rows.push_back(std::move(row));
  }

  if (cfg.seeds.size() < 2 || m.rows.size() < 2) return m;
  std::optional<size_t> best;
  for (size_t i = 0; i < m.rows.size(); ++i) {
    if (!m.rows[i].median_slot_f1) continue;
    if (!best || *m.rows[i].median_slot_f1 > *m.rows[*best].median_slot_f1) {
      best = i;
    }
  }
  if (!best) return m;
  for (size_t j = 0; j < m.rows.size(); ++j) {
    if (j == *best) continue;
    Comparison cmp{*best, j, std::nullopt, ""};
    std::vector<double> a;
    std::vector<double> b;
    for (size_t s = 0; s < m.seeds.size(); ++s) {
      if (m.rows[*best].slot_f1[s] && m.rows[j].slot_f1[s]) {
        a.push_back(*m.rows[*best].slot_f1[s]);
        b.push_back(*m.rows[j].slot_f1[s]);
      }
    }
    try {
      cmp.test = PairedTTest(a, b);
    } catch (const DegenerateInput &e) {
      cmp.note = e.what();
    }
    m.comparisons.push_back(std::move(cmp));
  }
  return m;
}

MatrixResult RunMatrix(const PipelineConfig &cfg) {
  cfg.Check();
  return RunMatrix(cfg, LoadInputs(cfg));
}

std::string FormatSummary(const MatrixResult &m) {
  std::string out = fmt::format("{:<20} {:>10} {:>12} {:>6}\n", "scenario",
                                "slot_f1", "intent_acc", "ok");
  for (const ScenarioRow &row : m.rows) {
    const size_t ok = static_cast<size_t>(std::count_if(
        row.slot_f1.begin(), row.slot_f1.end(),
        [](const auto &v) { return v.has_value(); }));
    out += fmt::format("{:<20} {:>10} {:>12} {:>6}\n",
                       ScenarioName(row.scenario), Percent(row.median_slot_f1),
                       Percent(row.median_intent_accuracy),
                       fmt::format("{}/{}", ok, row.slot_f1.size()));
  }
  out += "\nper-seed slot F1\n";
  for (const ScenarioRow &row : m.rows) {
    out += fmt::format("{:<20}", ScenarioName(row.scenario));
    for (size_t s = 0; s < m.seeds.size(); ++s) {
      out += fmt::format(" {}:{}", m.seeds[s], Percent(row.slot_f1[s]));
    }
    out += "\n";
  }
  if (!m.comparisons.empty()) {
    out += fmt::format("\npaired t-test on slot F1, best = {}\n",
                       ScenarioName(m.rows[m.comparisons[0].best_row].scenario));
    for (const Comparison &c : m.comparisons) {
      const std::string_view name = ScenarioName(m.rows[c.baseline_row].scenario);
      if (c.test) {
        out += fmt::format("  vs {:<20} t = {:.3f}  dof = {}  p = {:.4g}\n",
                           name, c.test->t, c.test->degrees_of_freedom,
                           c.test->p_value);
      } else {
        out += fmt::format("  vs {:<20} n/a ({})\n", name, c.note);
      }
    }
  }
  for (const std::string &w : m.warnings) out += "\nwarning: " + w + "\n";
  if (m.failures() > 0) {
    out += "\nfailed cells\n";
    for (const CellResult &c : m.cells) {
      if (c.error) {
        out += fmt::format("  {} seed {}: {}\n", ScenarioName(c.scenario),
                           c.seed, *c.error);
      }
    }
  }
  return out;
}

std::string FormatMatrixTsv(const MatrixResult &m) {
  std::string out = "scenario\tseed\tmetric\tvalue\n";
  for (const CellResult &c : m.cells) {
    auto line = [&](std::string_view metric, const auto &value) {
      out += fmt::format("{}\t{}\t{}\t{}\n", ScenarioName(c.scenario), c.seed,
                         metric, value);
    };
    if (c.error) {
      line("status", "failed");
      continue;
    }
    line("status", "ok");
    line("slot_precision", fmt::format("{:.6f}", c.report.slot_precision()));
    line("slot_recall", fmt::format("{:.6f}", c.report.slot_recall()));
    line("slot_f1", fmt::format("{:.6f}", c.report.slot_f1()));
    if (c.report.intent_accuracy) {
      line("intent_accuracy", fmt::format("{:.6f}", *c.report.intent_accuracy));
    }
    line("candidates", c.stages.candidates);
    line("filtered", c.stages.filtered);
    line("deduplicated", c.stages.deduplicated);
    line("kept", c.stages.kept);
    line("added", c.stages.added);
  }
  return out;
}

void WriteMatrix(const MatrixResult &m, const std::filesystem::path &out) {
  std::filesystem::create_directories(out);
  for (const CellResult &c : m.cells) {
    const std::filesystem::path dir =
        out / std::string(ScenarioName(c.scenario)) /
        fmt::format("seed-{}", c.seed);
    std::filesystem::create_directories(dir);
    if (c.error) {
      WriteText(dir / "error.txt", *c.error + "\n");
      continue;
    }
    SaveCorpus(c.augmented, dir / "augmented.txt");
    WriteText(dir / "report.tsv", FormatReportTsv(c.report));
    WriteText(dir / "stages.tsv", FormatStages(c.stages));
  }
  WriteText(out / "report.tsv", FormatMatrixTsv(m));
  WriteText(out / "summary.txt", FormatSummary(m));
}

}  // namespace sluaug
