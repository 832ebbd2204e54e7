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

#ifndef SLUAUG_NLU_LABELING_H_
#define SLUAUG_NLU_LABELING_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sluaug/align.h"
#include "sluaug/corpus_io.h"
#include "sluaug/dialogue.h"

namespace sluaug {

// Anything that can rank intents for a token sequence.
class IntentScorer {
 public:
  virtual ~IntentScorer() = default;

  // One score per known intent, in intent-name order.
  virtual std::vector<std::pair<std::string, double>> Score(
      std::span<const std::string> tokens) const = 0;
};

struct PseudoLabelConfig {
  MatchPolicy policy;
  // An utterance with no value match is rejected unless the intent score
  // margin (best minus runner-up) exceeds this.
  double min_margin = 0.0;
};

// Assigns acts to unlabeled utterances by dictionary matching: known values
// (from the inventory and the ontology) are matched longest first, then by
// inventory frequency, slot and value, each claiming its leftmost free span.
// The intent comes from the scorer. Reusable across many utterances.
class PseudoLabeler {
 public:
  PseudoLabeler(const Ontology &ontology, const ValueInventory &inventory,
                const IntentScorer &scorer, PseudoLabelConfig cfg = {});

  // Throws NoEvidence when nothing matched and the intent margin is too small.
  DialogueAct Label(const Utterance &utterance) const;

 private:
  struct Candidate {
    std::string slot;
    std::string value;
    size_t length;
    size_t frequency;
  };

  const Ontology &ontology_;
  const IntentScorer &scorer_;
  PseudoLabelConfig cfg_;
  std::vector<Candidate> candidates_;
};

DialogueAct PseudoLabel(const Utterance &utterance, const Ontology &ontology,
                        const ValueInventory &inventory,
                        const IntentScorer &scorer,
                        const PseudoLabelConfig &cfg = {});

// Folds names for lookup: lowercase with '_', '-' and spaces removed.
std::string FoldName(std::string_view name);

// Maps free-form intent and slot names onto ontology identifiers (exact match
// first, then folded match) and snaps values onto a known value differing
// only in case or spacing. Pairs with unmatched slots are dropped. Throws
// UnknownIntent when the intent has no counterpart.
DialogueAct MapToOntology(const DialogueAct &act, const Ontology &ontology);

}  // namespace sluaug

#endif  // SLUAUG_NLU_LABELING_H_
