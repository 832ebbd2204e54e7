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

#include "sluaug/nlu_labeling.h"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "sluaug/errors.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

std::optional<std::string> LookupName(const std::set<std::string> &names,
                                      const std::string &name) {
  if (names.count(name)) return name;
  const std::string folded = FoldName(name);
  for (const std::string &candidate : names) {
    if (FoldName(candidate) == folded) return candidate;
  }
  return std::nullopt;
}

}  // namespace

PseudoLabeler::PseudoLabeler(const Ontology &ontology,
                             const ValueInventory &inventory,
                             const IntentScorer &scorer, PseudoLabelConfig cfg)
    : ontology_(ontology), scorer_(scorer), cfg_(cfg) {
  std::map<std::pair<std::string, std::string>, size_t> merged;
  for (const auto &[slot, counts] : inventory) {
    for (const auto &[value, n] : counts) merged[{slot, value}] += n;
  }
  for (const auto &[slot, values] : ontology.known_values()) {
    for (const std::string &value : values) merged[{slot, value}] += 0;
  }
  for (const auto &[key, n] : merged) {
    candidates_.push_back(Candidate{key.first, key.second,
                                    SplitWhitespace(key.second).size(), n});
  }
  std::stable_sort(candidates_.begin(), candidates_.end(),
                   [](const Candidate &a, const Candidate &b) {
                     if (a.length != b.length) return a.length > b.length;
                     if (a.frequency != b.frequency) {
                       return a.frequency > b.frequency;
                     }
                     if (a.slot != b.slot) return a.slot < b.slot;
                     return a.value < b.value;
                   });
}

DialogueAct PseudoLabeler::Label(const Utterance &utterance) const {
  const std::vector<std::string> &tokens = utterance.tokens();
  std::vector<bool> claimed(tokens.size(), false);
  std::vector<std::pair<Span, SlotValue>> found;
  std::set<std::pair<std::string, std::string>> seen;

  for (const Candidate &c : candidates_) {
    if (c.length > tokens.size()) continue;
    if (seen.count({c.slot, AsciiLower(c.value)})) continue;
    for (const Span &span : FindAllSpans(tokens, c.value, cfg_.policy)) {
      bool free = true;
      for (size_t i = span.start; i < span.end; ++i) free = free && !claimed[i];
      if (!free) continue;
      for (size_t i = span.start; i < span.end; ++i) claimed[i] = true;
      seen.insert({c.slot, AsciiLower(c.value)});
      found.emplace_back(span, SlotValue(c.slot, c.value));
      break;
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });

  std::vector<std::pair<std::string, double>> scores = scorer_.Score(tokens);
  if (scores.empty()) throw NoEvidence("intent scorer knows no intents");
  size_t best = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].second > scores[best].second) best = i;
  }
  double runner_up = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < scores.size(); ++i) {
    if (i != best) runner_up = std::max(runner_up, scores[i].second);
  }
  const double margin = scores[best].second - runner_up;
  if (found.empty() && !(margin > cfg_.min_margin)) {
    throw NoEvidence("no known value in \"" + utterance.Text() +
                     "\" and no confident intent");
  }

  std::vector<SlotValue> pairs;
  pairs.reserve(found.size());
  for (auto &[span, sv] : found) pairs.push_back(std::move(sv));
  return MapToOntology(DialogueAct(scores[best].first, std::move(pairs)),
                       ontology_);
}

DialogueAct PseudoLabel(const Utterance &utterance, const Ontology &ontology,
                        const ValueInventory &inventory,
                        const IntentScorer &scorer,
                        const PseudoLabelConfig &cfg) {
  return PseudoLabeler(ontology, inventory, scorer, cfg).Label(utterance);
}

std::string FoldName(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : AsciiLower(name)) {
    if (c == '_' || c == '-' || c == ' ') continue;
    out.push_back(c);
  }
  return out;
}

DialogueAct MapToOntology(const DialogueAct &act, const Ontology &ontology) {
  std::optional<std::string> intent = LookupName(ontology.intents(),
                                                 act.intent());
  if (!intent) {
    throw UnknownIntent("intent '" + act.intent() + "' not in ontology");
  }
  std::vector<SlotValue> pairs;
  std::set<std::pair<std::string, std::string>> seen;
  for (const SlotValue &sv : act.slots()) {
    std::optional<std::string> slot = LookupName(ontology.slots(), sv.slot());
    if (!slot) continue;
    std::string value = sv.value();
    auto known = ontology.known_values().find(*slot);
    if (known != ontology.known_values().end() && !known->second.count(value)) {
      const std::string key = AsciiLower(value);
      for (const std::string &candidate : known->second) {
        if (AsciiLower(candidate) == key) {
          value = candidate;
          break;
        }
      }
    }
    if (!seen.emplace(*slot, value).second) continue;
    pairs.emplace_back(*slot, std::move(value));
  }
  return DialogueAct(*intent, std::move(pairs));
}

}  // namespace sluaug
