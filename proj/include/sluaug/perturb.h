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

#ifndef SLUAUG_PERTURB_H_
#define SLUAUG_PERTURB_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sluaug/corpus_io.h"
#include "sluaug/dialogue.h"
#include "sluaug/random.h"

namespace sluaug {

struct PerturbConfig {
  double replace_weight = 0.5;
  double insert_weight = 0.3;
  double delete_weight = 0.2;
  size_t min_slots = 1;
  size_t max_slots = 8;
  size_t target_count = 300;
  // 0 means 50 * target_count.
  size_t max_attempts = 0;
  uint64_t seed = 0;

  // Throws ConfigError on negative weights, weights not summing to 1, or
  // min_slots > max_slots.
  void Check() const;
  size_t EffectiveMaxAttempts() const;
};

enum class PerturbOp { kReplace, kInsert, kDelete };

// The slots each intent may carry and the values each slot may take, as seen
// in training acts plus whatever the ontology declares.
class ActSpace {
 public:
  ActSpace(const std::vector<DialogueAct> &training_acts,
           const ValueInventory &inventory, const Ontology &ontology);

  // Sorted; empty for unknown intents or slots.
  const std::vector<std::string> &SlotsFor(const std::string &intent) const;
  const std::vector<std::string> &ValuesFor(const std::string &slot) const;

 private:
  std::map<std::string, std::vector<std::string>> slots_by_intent_;
  std::map<std::string, std::vector<std::string>> values_by_slot_;
};

bool IsApplicable(PerturbOp op, const DialogueAct &act, const ActSpace &space,
                  const PerturbConfig &cfg);

// Applies `op` once. Throws NoValidPerturbation when it cannot apply.
DialogueAct ApplyPerturbation(const DialogueAct &act, PerturbOp op,
                              const ActSpace &space, Rng &rng,
                              const PerturbConfig &cfg);

// Draws one applicable operation by weight (renormalized over the applicable
// ones) and applies it. The intent never changes. Throws NoValidPerturbation
// when nothing applies.
DialogueAct PerturbDa(const DialogueAct &act, const ActSpace &space, Rng &rng,
                      const PerturbConfig &cfg);

struct ExpandResult {
  std::vector<DialogueAct> acts;
  size_t attempts = 0;
};

// Perturbs randomly drawn training acts (one or two chained operations) until
// target_count new acts exist or the attempt budget runs out. New means
// different, ignoring pair order and case, from every training act and every
// act already emitted.
ExpandResult ExpandActs(const Corpus &corpus, const Ontology &ontology,
                        const PerturbConfig &cfg);

}  // namespace sluaug

#endif  // SLUAUG_PERTURB_H_
