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

#include "sluaug/intent_classifier.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "sluaug/errors.h"
#include "sluaug/metrics.h"
#include "sluaug/random.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

size_t Argmax(const std::vector<double> &scores) {
  size_t best = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::vector<double> RawScores(const LinearModel &model,
                              const std::vector<std::string> &features) {
  std::vector<double> scores(model.num_labels(), 0.0);
  for (const std::string &f : features) {
    if (auto id = model.Find(f)) model.AddScores(*id, scores);
  }
  return scores;
}

}  // namespace

std::vector<std::string> IntentFeatures(std::span<const std::string> tokens) {
  std::vector<std::string> f;
  f.reserve(2 * tokens.size() + 2);
  f.push_back("bias");
  std::string prev = "<s>";
  for (const std::string &t : tokens) {
    std::string lower = AsciiLower(t);
    f.push_back("u=" + lower);
    f.push_back("b=" + prev + "_" + lower);
    prev = std::move(lower);
  }
  f.push_back("b=" + prev + "_</s>");
  return f;
}

IntentModel::IntentModel(LinearModel weights) : weights_(std::move(weights)) {}

std::vector<std::pair<std::string, double>> IntentModel::Score(
    std::span<const std::string> tokens) const {
  std::vector<double> scores = RawScores(weights_, IntentFeatures(tokens));
  std::vector<std::pair<std::string, double>> out;
  out.reserve(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    out.emplace_back(weights_.labels()[i], scores[i]);
  }
  return out;
}

std::string IntentModel::Classify(std::span<const std::string> tokens) const {
  if (weights_.num_labels() == 0) throw DataError("intent model is empty");
  return weights_.labels()[Argmax(RawScores(weights_, IntentFeatures(tokens)))];
}

IntentModel IntentModel::Parse(std::string_view text) {
  return IntentModel(LinearModel::Parse(text));
}

IntentModel TrainIntent(const std::vector<LabeledExample> &examples,
                        const TrainOptions &options,
                        const std::vector<LabeledExample> *dev) {
  std::vector<LabeledExample> data = examples;
  std::stable_sort(data.begin(), data.end(),
                   [](const LabeledExample &a, const LabeledExample &b) {
                     if (a.intent() != b.intent()) return a.intent() < b.intent();
                     if (a.tokens() != b.tokens()) return a.tokens() < b.tokens();
                     return a.tags() < b.tags();
                   });
  std::set<std::string> intent_set;
  for (const LabeledExample &ex : data) intent_set.insert(ex.intent());
  std::vector<std::string> intents(intent_set.begin(), intent_set.end());
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < intents.size(); ++i) index[intents[i]] = i;

  std::vector<std::vector<std::string>> features;
  features.reserve(data.size());
  for (const LabeledExample &ex : data) {
    features.push_back(IntentFeatures(ex.tokens()));
  }

  AveragedPerceptron trainer(intents);
  Rng rng(options.seed);
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  std::optional<IntentModel> best;
  double best_acc = -1.0;
  for (size_t epoch = 0; epoch < options.epochs; ++epoch) {
    rng.Shuffle(order);
    for (size_t k : order) {
      const size_t gold = index.at(data[k].intent());
      const size_t pred = Argmax(RawScores(trainer.current(), features[k]));
      if (pred != gold) {
        for (const std::string &f : features[k]) {
          trainer.Update(f, gold, 1.0);
          trainer.Update(f, pred, -1.0);
        }
      }
      trainer.Tick();
    }
    if (dev != nullptr && !dev->empty()) {
      IntentModel candidate(trainer.Averaged());
      std::vector<std::string> gold;
      std::vector<std::string> predicted;
      for (const LabeledExample &ex : *dev) {
        gold.push_back(ex.intent());
        predicted.push_back(candidate.Classify(ex.tokens()));
      }
      double acc = IntentAccuracy(gold, predicted);
      if (acc > best_acc) {
        best_acc = acc;
        best = std::move(candidate);
      }
    }
  }
  if (best) return *best;
  return IntentModel(trainer.Averaged());
}

}  // namespace sluaug
