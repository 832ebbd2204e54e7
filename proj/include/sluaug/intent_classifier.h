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

#ifndef SLUAUG_INTENT_CLASSIFIER_H_
#define SLUAUG_INTENT_CLASSIFIER_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sluaug/dialogue.h"
#include "sluaug/nlu_labeling.h"
#include "sluaug/perceptron.h"
#include "sluaug/tagger.h"

namespace sluaug {

// Bias, lowercased unigrams and bigrams (with sentence boundary markers).
std::vector<std::string> IntentFeatures(std::span<const std::string> tokens);

class IntentModel : public IntentScorer {
 public:
  IntentModel() = default;
  explicit IntentModel(LinearModel weights);

  const std::vector<std::string> &intents() const { return weights_.labels(); }
  const LinearModel &weights() const { return weights_; }

  std::vector<std::pair<std::string, double>> Score(
      std::span<const std::string> tokens) const override;

  // Highest score; ties go to the intent that sorts first.
  std::string Classify(std::span<const std::string> tokens) const;

  std::string Format() const { return weights_.Format(); }
  static IntentModel Parse(std::string_view text);

 private:
  LinearModel weights_;
};

// Multiclass averaged perceptron, same ordering, shuffling and dev-selection
// rules as TrainTagger (dev selection by intent accuracy).
IntentModel TrainIntent(const std::vector<LabeledExample> &examples,
                        const TrainOptions &options,
                        const std::vector<LabeledExample> *dev = nullptr);

}  // namespace sluaug

#endif  // SLUAUG_INTENT_CLASSIFIER_H_
