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

#ifndef SLUAUG_TEMPLATE_GENERATOR_H_
#define SLUAUG_TEMPLATE_GENERATOR_H_

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "sluaug/dialogue.h"
#include "sluaug/random.h"

namespace sluaug {

// Decoding knobs. External backends receive them verbatim; the template
// backend only honors samples_per_input and samples by template frequency.
struct DecodingParams {
  double top_p = 0.9;
  double temperature = 1.0;
  size_t samples_per_input = 3;

  // Throws ConfigError when out of range.
  void Check() const;
};

// One element of a delexicalized utterance: a literal token or a `<slot>`
// placeholder.
struct TemplateToken {
  bool is_slot = false;
  std::string text;  // token text, or slot name for placeholders

  auto operator<=>(const TemplateToken &) const = default;
};
using Template = std::vector<TemplateToken>;

// Renders a template with `<slot>` placeholders, e.g. "book a table in <city>".
std::string FormatTemplate(const Template &t);

struct TemplateKey {
  std::string intent;
  std::vector<std::string> signature;  // sorted slot names, with repeats

  auto operator<=>(const TemplateKey &) const = default;
};

// Delexicalized training utterances grouped by (intent, slot signature).
// Each template carries its observed frequency.
class TemplateModel {
 public:
  using Bucket = std::map<Template, size_t>;

  void Add(const TemplateKey &key, Template t);

  const std::map<TemplateKey, Bucket> &buckets() const { return buckets_; }
  bool HasIntent(const std::string &intent) const;

  // Bucket for the exact key, else the same-intent bucket whose signature has
  // the smallest multiset symmetric difference (ties: larger total frequency,
  // then smaller signature). Throws NoTemplateForIntent for unseen intents.
  const std::pair<const TemplateKey, Bucket> &Select(
      const std::string &intent, const std::vector<std::string> &signature) const;

 private:
  std::map<TemplateKey, Bucket> buckets_;
};

// Replaces every chunk of every example with its slot placeholder.
TemplateModel TrainTemplateGenerator(const std::vector<LabeledExample> &paired);

// Fills a template with the act's values: the n-th `<slot>` placeholder takes
// the n-th value of that slot in act order. Placeholders without a value are
// dropped; act values without a placeholder are simply absent, which the
// coverage filter later rejects.
Utterance Relexicalize(const Template &t, const DialogueAct &act);

// Draws exactly samples_per_input templates (with replacement, weighted by
// frequency) from the selected bucket and relexicalizes each one.
std::vector<Utterance> Generate(const TemplateModel &model,
                                const DialogueAct &act,
                                const DecodingParams &params, Rng &rng);

}  // namespace sluaug

#endif  // SLUAUG_TEMPLATE_GENERATOR_H_
