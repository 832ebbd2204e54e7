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


// Writes the toy benchmark files. Training examples only use the "seen"
// share of each slot's values and mention each of them at least once;
// everything else draws from the full inventory.
//
// fixture.tsv is a recorded backend session for the same domain: three
// grammar renderings per ontology act (nlg) and the gold act of every
// unlabeled utterance (nlu), so external-backend runs can be replayed
// without a model.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sluaug/align.h"
#include "sluaug/corpus_io.h"
#include "sluaug/mr_format.h"
#include "sluaug/protocol.h"
#include "tools/toy_domain.h"

int main(int argc, char **argv) {
  CLI::App app{"Write the toy SLU benchmark files."};
  std::string out_dir;
  uint64_t seed = 20;
  size_t train_size = 40;
  size_t dev_size = 100;
  size_t test_size = 300;
  size_t unlabeled_size = 1000;
  size_t act_count = 500;
  double seen_share = 0.7;
  size_t fixture_samples = 3;
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--train", train_size, "Paired training examples");
  app.add_option("--dev", dev_size, "Development examples");
  app.add_option("--test", test_size, "Test examples");
  app.add_option("--unlabeled", unlabeled_size, "Unlabeled utterances");
  app.add_option("--acts", act_count, "Valid acts in the ontology");
  app.add_option("--seen-share", seen_share,
                 "Share of each slot's values allowed in training")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--fixture-samples", fixture_samples,
                 "Recorded outputs per fixture input")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    toy::ToyDomain domain(seed, seen_share);
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);

    sluaug::Corpus train;
    train.paired = domain.CoveringExamples(train_size);
    sluaug::Corpus dev;
    dev.paired = domain.Examples(dev_size, false);
    sluaug::Corpus test;
    test.paired = domain.Examples(test_size, false);
    sluaug::Corpus unlabeled;
    const std::vector<sluaug::LabeledExample> unlabeled_gold =
        domain.Examples(unlabeled_size, false);
    for (const sluaug::LabeledExample &ex : unlabeled_gold) {
      unlabeled.utterances_only.push_back(ex.utterance());
    }
    const std::vector<sluaug::DialogueAct> acts = domain.UniqueActs(act_count);
    sluaug::Ontology ontology = domain.MakeOntology(acts);

    sluaug::FixtureBackend fixture;
    for (const sluaug::DialogueAct &act : acts) {
      const std::string mr = sluaug::SerializeDa(act);
      for (size_t k = 0; k < fixture_samples; ++k) {
        fixture.Record(sluaug::Direction::kNlg, mr,
                       domain.Render(act).utterance().Text());
      }
    }
    for (const sluaug::LabeledExample &ex : unlabeled_gold) {
      const std::string mr = sluaug::SerializeDa(sluaug::DaFromLabeled(ex));
      for (size_t k = 0; k < fixture_samples; ++k) {
        fixture.Record(sluaug::Direction::kNlu, ex.utterance().Text(), mr);
      }
    }

    sluaug::SaveCorpus(train, out / "train.txt");
    sluaug::SaveCorpus(dev, out / "dev.txt");
    sluaug::SaveCorpus(test, out / "test.txt");
    sluaug::SaveCorpus(unlabeled, out / "unlabeled.txt");
    std::ofstream(out / "ontology.tsv", std::ios::binary)
        << sluaug::FormatOntology(ontology);
    std::ofstream(out / "fixture.tsv", std::ios::binary) << fixture.Format();
  } catch (const std::exception &e) {
    std::cerr << "make_toy_domain: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
