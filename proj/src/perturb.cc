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

#include "sluaug/perturb.h"

#include <array>
#include <cmath>
#include <set>
#include <unordered_set>
#include <utility>

#include "fmt/format.h"
#include "sluaug/align.h"
#include "sluaug/errors.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

const std::vector<std::string> &EmptyList() {
  static const std::vector<std::string> empty;
  return empty;
}

bool HasPair(const DialogueAct &act, const std::string &slot,
             const std::string &value) {
  for (const SlotValue &sv : act.slots()) {
    if (sv.slot() == slot && AsciiLower(sv.value()) == AsciiLower(value)) {
      return true;
    }
  }
  return false;
}

bool HasSlot(const DialogueAct &act, const std::string &slot) {
  for (const SlotValue &sv : act.slots()) {
    if (sv.slot() == slot) return true;
  }
  return false;
}

// Pair indices that have at least one alternative value.
std::vector<size_t> ReplaceableIndices(const DialogueAct &act,
                                       const ActSpace &space) {
  std::vector<size_t> out;
  for (size_t i = 0; i < act.slots().size(); ++i) {
    const std::string &slot = act.slots()[i].slot();
    for (const std::string &v : space.ValuesFor(slot)) {
      if (!HasPair(act, slot, v)) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> InsertableSlots(const DialogueAct &act,
                                         const ActSpace &space) {
  std::vector<std::string> out;
  for (const std::string &slot : space.SlotsFor(act.intent())) {
    if (!HasSlot(act, slot) && !space.ValuesFor(slot).empty()) {
      out.push_back(slot);
    }
  }
  return out;
}

}  // namespace

void PerturbConfig::Check() const {
  if (replace_weight < 0 || insert_weight < 0 || delete_weight < 0) {
    throw ConfigError("perturbation weights must be non-negative");
  }
  double sum = replace_weight + insert_weight + delete_weight;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError(fmt::format("perturbation weights sum to {}, not 1", sum));
  }
  if (min_slots > max_slots) {
    throw ConfigError("min_slots exceeds max_slots");
  }
}

size_t PerturbConfig::EffectiveMaxAttempts() const {
  return max_attempts != 0 ? max_attempts : 50 * target_count;
}

ActSpace::ActSpace(const std::vector<DialogueAct> &training_acts,
                   const ValueInventory &inventory, const Ontology &ontology) {
  std::map<std::string, std::set<std::string>> slots;
  for (const DialogueAct &act : training_acts) {
    auto &s = slots[act.intent()];
    for (const SlotValue &sv : act.slots()) s.insert(sv.slot());
  }
  if (ontology.valid_acts()) {
    for (const DialogueAct &act : *ontology.valid_acts()) {
      auto &s = slots[act.intent()];
      for (const SlotValue &sv : act.slots()) s.insert(sv.slot());
    }
  }
  for (auto &[intent, s] : slots) {
    slots_by_intent_[intent].assign(s.begin(), s.end());
  }

  std::map<std::string, std::set<std::string>> values;
  for (const auto &[slot, counts] : inventory) {
    for (const auto &[v, n] : counts) values[slot].insert(v);
  }
  for (const auto &[slot, vs] : ontology.known_values()) {
    values[slot].insert(vs.begin(), vs.end());
  }
  for (auto &[slot, vs] : values) {
    values_by_slot_[slot].assign(vs.begin(), vs.end());
  }
}

const std::vector<std::string> &ActSpace::SlotsFor(
    const std::string &intent) const {
  auto it = slots_by_intent_.find(intent);
  return it == slots_by_intent_.end() ? EmptyList() : it->second;
}

const std::vector<std::string> &ActSpace::ValuesFor(
    const std::string &slot) const {
  auto it = values_by_slot_.find(slot);
  return it == values_by_slot_.end() ? EmptyList() : it->second;
}

bool IsApplicable(PerturbOp op, const DialogueAct &act, const ActSpace &space,
                  const PerturbConfig &cfg) {
  switch (op) {
    case PerturbOp::kReplace:
      return !ReplaceableIndices(act, space).empty();
    case PerturbOp::kInsert:
      return act.slots().size() < cfg.max_slots &&
             !InsertableSlots(act, space).empty();
    case PerturbOp::kDelete:
      return act.slots().size() > cfg.min_slots;
  }
  return false;
}

DialogueAct ApplyPerturbation(const DialogueAct &act, PerturbOp op,
                              const ActSpace &space, Rng &rng,
                              const PerturbConfig &cfg) {
  if (!IsApplicable(op, act, space, cfg)) {
    throw NoValidPerturbation("operation not applicable to " +
                              CanonicalActKey(act));
  }
  std::vector<SlotValue> pairs = act.slots();
  switch (op) {
    case PerturbOp::kReplace: {
      std::vector<size_t> indices = ReplaceableIndices(act, space);
      size_t i = indices[rng.Uniform(indices.size())];
      const std::string &slot = pairs[i].slot();
      std::vector<std::string> alternatives;
      for (const std::string &v : space.ValuesFor(slot)) {
        if (!HasPair(act, slot, v)) alternatives.push_back(v);
      }
      pairs[i] = SlotValue(slot, alternatives[rng.Uniform(alternatives.size())]);
      break;
    }
    case PerturbOp::kInsert: {
      std::vector<std::string> candidates = InsertableSlots(act, space);
      const std::string &slot = candidates[rng.Uniform(candidates.size())];
      const std::vector<std::string> &values = space.ValuesFor(slot);
      pairs.emplace_back(slot, values[rng.Uniform(values.size())]);
      break;
    }
    case PerturbOp::kDelete:
      pairs.erase(pairs.begin() +
                  static_cast<std::ptrdiff_t>(rng.Uniform(pairs.size())));
      break;
  }
  return DialogueAct(act.intent(), std::move(pairs));
}

DialogueAct PerturbDa(const DialogueAct &act, const ActSpace &space, Rng &rng,
                      const PerturbConfig &cfg) {
  constexpr std::array<PerturbOp, 3> kOps = {
      PerturbOp::kReplace, PerturbOp::kInsert, PerturbOp::kDelete};
  const std::array<double, 3> base = {cfg.replace_weight, cfg.insert_weight,
                                      cfg.delete_weight};
  std::array<double, 3> weights{};
  bool any = false;
  for (size_t i = 0; i < kOps.size(); ++i) {
    if (base[i] > 0 && IsApplicable(kOps[i], act, space, cfg)) {
      weights[i] = base[i];
      any = true;
    }
  }
  if (!any) {
    throw NoValidPerturbation("no operation applies to " +
                              CanonicalActKey(act));
  }
  return ApplyPerturbation(act, kOps[rng.WeightedIndex(weights)], space, rng,
                           cfg);
}

ExpandResult ExpandActs(const Corpus &corpus, const Ontology &ontology,
                        const PerturbConfig &cfg) {
  cfg.Check();
  ExpandResult result;
  if (cfg.target_count == 0 || corpus.paired.empty()) return result;

  std::vector<DialogueAct> training;
  training.reserve(corpus.paired.size());
  std::unordered_set<std::string> seen;
  for (const LabeledExample &ex : corpus.paired) {
    training.push_back(DaFromLabeled(ex));
    seen.insert(CanonicalActKey(training.back()));
  }
  const ActSpace space(training, ComputeStats(corpus).value_inventory,
                       ontology);

  Rng rng(cfg.seed);
  const size_t budget = cfg.EffectiveMaxAttempts();
  while (result.acts.size() < cfg.target_count && result.attempts < budget) {
    ++result.attempts;
    DialogueAct current = training[rng.Uniform(training.size())];
    const size_t chain = 1 + rng.Uniform(2);
    size_t applied = 0;
    for (size_t k = 0; k < chain; ++k) {
      try {
        current = PerturbDa(current, space, rng, cfg);
        ++applied;
      } catch (const NoValidPerturbation &) {
        break;
      }
    }
    if (applied == 0) continue;
    if (seen.insert(CanonicalActKey(current)).second) {
      result.acts.push_back(std::move(current));
    }
  }
  return result;
}

}  // namespace sluaug
