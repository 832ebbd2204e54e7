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

#ifndef SLUAUG_CORPUS_IO_H_
#define SLUAUG_CORPUS_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "sluaug/dialogue.h"

namespace sluaug {

// Corpus files are UTF-8 with LF line endings. Blocks are separated by blank
// lines and come in three kinds:
//
//   # intent = PlayMusic        labeled pair: header, then token<TAB>tag
//   play    O
//   queen   B-artist
//
//   # act = PlayMusic ( artist = queen )        act without utterance
//
//   play                         utterance without labels: one token per line
//   queen
//
// Loading throws FormatError(line, reason) on any deviation, including BIO
// violations in the tag column.
Corpus ParseCorpus(std::string_view text);
Corpus LoadCorpus(const std::filesystem::path &path);

// Inverse of ParseCorpus: paired blocks, then acts, then utterances.
std::string FormatCorpus(const Corpus &corpus);
void SaveCorpus(const Corpus &corpus, const std::filesystem::path &path);

// Ontology files hold one TAB-separated record per line:
//   intent<TAB>BookRestaurant
//   slot<TAB>city
//   value<TAB>city<TAB>new york
//   act<TAB>BookRestaurant ( city = new york )
// '#' lines and blank lines are ignored. The presence of any act record makes
// the valid-act list available.
Ontology ParseOntology(std::string_view text);
Ontology LoadOntology(const std::filesystem::path &path);
std::string FormatOntology(const Ontology &ontology);

struct SplitSpec {
  // Training fraction as a ratio, e.g. 1/40.
  uint64_t numerator = 1;
  uint64_t denominator = 1;
  uint64_t seed = 0;
  size_t dev_size = 0;
  // Per-intent proportional sampling instead of uniform over examples.
  bool stratified = false;

  // Throws ConfigError unless 0 < fraction <= 1.
  void Check() const;
};

// round(numerator * n / denominator), halves rounded up.
size_t RoundHalfUp(uint64_t numerator, uint64_t denominator, size_t n);

struct Split {
  Corpus train;
  Corpus dev;
};

// Seeded sampling without replacement. Selected examples keep their original
// relative order. Acts and bare utterances go to the train side untouched.
// Throws InsufficientData when the corpus cannot supply both sides.
Split SampleSplit(const Corpus &corpus, const SplitSpec &spec);

// slot -> value -> occurrence count.
using ValueInventory = std::map<std::string, std::map<std::string, size_t>>;

struct CorpusStats {
  size_t num_paired = 0;
  size_t num_acts = 0;
  size_t num_utterances = 0;
  size_t num_intents = 0;
  size_t num_slot_labels = 0;
  ValueInventory value_inventory;
};

// Intents and slot labels are counted over paired data and bare acts; the
// value inventory is collected from paired data only.
CorpusStats ComputeStats(const Corpus &corpus);

// `metric<TAB>value` lines.
std::string FormatStats(const CorpusStats &stats);

}  // namespace sluaug

#endif  // SLUAUG_CORPUS_IO_H_
