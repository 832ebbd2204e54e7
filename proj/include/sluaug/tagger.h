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

#ifndef SLUAUG_TAGGER_H_
#define SLUAUG_TAGGER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sluaug/dialogue.h"
#include "sluaug/perceptron.h"

namespace sluaug {

struct TrainOptions {
  size_t epochs = 10;
  uint64_t seed = 0;
};

// Token features that do not depend on the previous tag: cased and lowercased
// word, 1-3 character prefixes and suffixes, neighbouring words, word shape
// and a bias.
std::vector<std::string> TaggerTokenFeatures(
    std::span<const std::string> tokens, size_t i);

std::string PrevTagFeature(std::string_view prev_tag);

// Digit/capitalization pattern with repeats collapsed: "Boston" -> "Xx",
// "10:30" -> "d:d".
std::string WordShape(std::string_view token);

// Whether `tag` may follow `prev` (an empty prev means sentence start).
bool AllowedTransition(std::string_view prev, std::string_view tag);

// "O" followed by B-/I- for every slot seen, in sorted order.
std::vector<std::string> TagSetFor(const std::vector<LabeledExample> &examples);

// Greedy left-to-right BIO tagger over a linear model.
class TaggerModel {
 public:
  TaggerModel() : TaggerModel(LinearModel({std::string(kOutsideTag)})) {}
  explicit TaggerModel(LinearModel weights);

  const std::vector<std::string> &tags() const { return weights_.labels(); }
  const LinearModel &weights() const { return weights_; }

  // Highest-scoring allowed tag at each position given the previous
  // decision; ties go to the earlier tag in tags(), so "O" wins them.
  std::vector<std::string> Tag(std::span<const std::string> tokens) const;

  std::string Format() const { return weights_.Format(); }
  static TaggerModel Parse(std::string_view text);

 private:
  LinearModel weights_;
};

// Averaged structured perceptron with greedy decoding. Examples are put in a
// canonical order, then shuffled per epoch from `seed`. With a dev set the
// epoch with the best dev slot F1 is kept, otherwise the last one.
TaggerModel TrainTagger(const std::vector<LabeledExample> &examples,
                        const TrainOptions &options,
                        const std::vector<LabeledExample> *dev = nullptr);

}  // namespace sluaug

#endif  // SLUAUG_TAGGER_H_
