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

#include "sluaug/template_generator.h"

#include <algorithm>
#include <limits>
#include <utility>

#include "fmt/format.h"
#include "sluaug/errors.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

// |a \ b| + |b \ a| for sorted multisets.
size_t SymmetricDifference(const std::vector<std::string> &a,
                           const std::vector<std::string> &b) {
  std::vector<std::string> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  return diff.size();
}

size_t TotalFrequency(const TemplateModel::Bucket &bucket) {
  size_t total = 0;
  for (const auto &[t, n] : bucket) total += n;
  return total;
}

}  // namespace

void DecodingParams::Check() const {
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw ConfigError(fmt::format("top_p {} outside (0, 1]", top_p));
  }
  if (!(temperature > 0.0)) {
    throw ConfigError(fmt::format("temperature {} must be positive",
                                  temperature));
  }
  if (samples_per_input < 1) {
    throw ConfigError("samples_per_input must be at least 1");
  }
}

std::string FormatTemplate(const Template &t) {
  std::vector<std::string> parts;
  parts.reserve(t.size());
  for (const TemplateToken &tok : t) {
    parts.push_back(tok.is_slot ? "<" + tok.text + ">" : tok.text);
  }
  return Join(parts, " ");
}

void TemplateModel::Add(const TemplateKey &key, Template t) {
  ++buckets_[key][std::move(t)];
}

bool TemplateModel::HasIntent(const std::string &intent) const {
  auto it = buckets_.lower_bound(TemplateKey{intent, {}});
  return it != buckets_.end() && it->first.intent == intent;
}

const std::pair<const TemplateKey, TemplateModel::Bucket> &
TemplateModel::Select(const std::string &intent,
                      const std::vector<std::string> &signature) const {
  auto exact = buckets_.find(TemplateKey{intent, signature});
  if (exact != buckets_.end()) return *exact;

  const std::pair<const TemplateKey, Bucket> *best = nullptr;
  size_t best_diff = std::numeric_limits<size_t>::max();
  size_t best_freq = 0;
  for (auto it = buckets_.lower_bound(TemplateKey{intent, {}});
       it != buckets_.end() && it->first.intent == intent; ++it) {
    size_t diff = SymmetricDifference(it->first.signature, signature);
    size_t freq = TotalFrequency(it->second);
    // Buckets are visited in signature order, so strict comparisons keep the
    // lexicographically smallest signature among full ties.
    if (diff < best_diff || (diff == best_diff && freq > best_freq)) {
      best = &*it;
      best_diff = diff;
      best_freq = freq;
    }
  }
  if (best == nullptr) {
    throw NoTemplateForIntent("no template for intent '" + intent + "'");
  }
  return *best;
}

TemplateModel TrainTemplateGenerator(
    const std::vector<LabeledExample> &paired) {
  TemplateModel model;
  for (const LabeledExample &ex : paired) {
    std::vector<Chunk> chunks = ExtractChunks(ex.tags());
    Template t;
    std::vector<std::string> signature;
    size_t next = 0;
    for (size_t i = 0; i < ex.tokens().size();) {
      if (next < chunks.size() && chunks[next].start == i) {
        t.push_back(TemplateToken{true, chunks[next].label});
        signature.push_back(chunks[next].label);
        i = chunks[next].end;
        ++next;
      } else {
        t.push_back(TemplateToken{false, ex.tokens()[i]});
        ++i;
      }
    }
    std::sort(signature.begin(), signature.end());
    model.Add(TemplateKey{ex.intent(), std::move(signature)}, std::move(t));
  }
  return model;
}

Utterance Relexicalize(const Template &t, const DialogueAct &act) {
  std::map<std::string, size_t> used;
  std::vector<std::string> tokens;
  for (const TemplateToken &tok : t) {
    if (!tok.is_slot) {
      tokens.push_back(tok.text);
      continue;
    }
    size_t &n = used[tok.text];
    size_t seen = 0;
    for (const SlotValue &sv : act.slots()) {
      if (sv.slot() != tok.text) continue;
      if (seen++ == n) {
        for (std::string &v : SplitWhitespace(sv.value())) {
          tokens.push_back(std::move(v));
        }
        break;
      }
    }
    ++n;
  }
  if (tokens.empty()) return Utterance(FormatTemplate(t));
  return Utterance::FromTokens(std::move(tokens));
}

std::vector<Utterance> Generate(const TemplateModel &model,
                                const DialogueAct &act,
                                const DecodingParams &params, Rng &rng) {
  if (!model.HasIntent(act.intent())) {
    throw NoTemplateForIntent("no template for intent '" + act.intent() + "'");
  }
  const auto &[key, bucket] = model.Select(act.intent(), SlotSignature(act));
  std::vector<const Template *> templates;
  std::vector<double> weights;
  for (const auto &[t, n] : bucket) {
    templates.push_back(&t);
    weights.push_back(static_cast<double>(n));
  }
  std::vector<Utterance> out;
  out.reserve(params.samples_per_input);
  for (size_t s = 0; s < params.samples_per_input; ++s) {
    out.push_back(Relexicalize(*templates[rng.WeightedIndex(weights)], act));
  }
  return out;
}

}  // namespace sluaug
