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

#include "sluaug/tagger.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "sluaug/metrics.h"
#include "sluaug/random.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

using FeatureTable = std::vector<std::vector<std::string>>;

FeatureTable Featurize(std::span<const std::string> tokens) {
  FeatureTable table;
  table.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    table.push_back(TaggerTokenFeatures(tokens, i));
  }
  return table;
}

std::vector<std::string> Decode(const LinearModel &model,
                                const FeatureTable &features) {
  const std::vector<std::string> &tags = model.labels();
  std::vector<std::string> out;
  out.reserve(features.size());
  std::vector<double> scores(tags.size());
  std::string prev;
  for (const std::vector<std::string> &token_features : features) {
    std::fill(scores.begin(), scores.end(), 0.0);
    for (const std::string &f : token_features) {
      if (auto id = model.Find(f)) model.AddScores(*id, scores);
    }
    if (auto id = model.Find(PrevTagFeature(prev))) {
      model.AddScores(*id, scores);
    }
    std::optional<size_t> best;
    for (size_t t = 0; t < tags.size(); ++t) {
      if (!AllowedTransition(prev, tags[t])) continue;
      if (!best || scores[t] > scores[*best]) best = t;
    }
    out.push_back(tags[*best]);
    prev = out.back();
  }
  return out;
}

// Canonical ordering key so training does not depend on input order.
bool ExampleLess(const LabeledExample &a, const LabeledExample &b) {
  if (a.intent() != b.intent()) return a.intent() < b.intent();
  if (a.tokens() != b.tokens()) return a.tokens() < b.tokens();
  return a.tags() < b.tags();
}

}  // namespace

std::string WordShape(std::string_view token) {
  std::string shape;
  for (char c : token) {
    char k;
    if (c >= 'A' && c <= 'Z') {
      k = 'X';
    } else if (c >= 'a' && c <= 'z') {
      k = 'x';
    } else if (c >= '0' && c <= '9') {
      k = 'd';
    } else {
      k = c;
    }
    if (shape.empty() || shape.back() != k) shape.push_back(k);
  }
  return shape;
}

std::vector<std::string> TaggerTokenFeatures(
    std::span<const std::string> tokens, size_t i) {
  const std::string &word = tokens[i];
  const std::string lower = AsciiLower(word);
  std::vector<std::string> f;
  f.reserve(13);
  f.push_back("bias");
  f.push_back("w=" + word);
  f.push_back("lw=" + lower);
  for (size_t k = 1; k <= 3 && k <= lower.size(); ++k) {
    f.push_back("p" + std::to_string(k) + "=" + lower.substr(0, k));
    f.push_back("s" + std::to_string(k) + "=" + lower.substr(lower.size() - k));
  }
  f.push_back("pw=" + (i == 0 ? std::string("<s>") : AsciiLower(tokens[i - 1])));
  f.push_back("nw=" + (i + 1 == tokens.size() ? std::string("</s>")
                                              : AsciiLower(tokens[i + 1])));
  f.push_back("sh=" + WordShape(word));
  return f;
}

std::string PrevTagFeature(std::string_view prev_tag) {
  return "pt=" + (prev_tag.empty() ? std::string("<s>") : std::string(prev_tag));
}

bool AllowedTransition(std::string_view prev, std::string_view tag) {
  if (tag.size() < 2 || tag[0] != 'I') return true;
  if (prev.size() < 2 || prev[0] == 'O') return false;
  return prev.substr(2) == tag.substr(2);
}

std::vector<std::string> TagSetFor(
    const std::vector<LabeledExample> &examples) {
  std::set<std::string> tags;
  for (const LabeledExample &ex : examples) {
    for (const std::string &tag : ex.tags()) {
      if (tag == kOutsideTag) continue;
      std::string slot = tag.substr(2);
      tags.insert("B-" + slot);
      tags.insert("I-" + slot);
    }
  }
  std::vector<std::string> out = {std::string(kOutsideTag)};
  out.insert(out.end(), tags.begin(), tags.end());
  return out;
}

TaggerModel::TaggerModel(LinearModel weights) : weights_(std::move(weights)) {}

std::vector<std::string> TaggerModel::Tag(
    std::span<const std::string> tokens) const {
  return Decode(weights_, Featurize(tokens));
}

TaggerModel TaggerModel::Parse(std::string_view text) {
  return TaggerModel(LinearModel::Parse(text));
}

TaggerModel TrainTagger(const std::vector<LabeledExample> &examples,
                        const TrainOptions &options,
                        const std::vector<LabeledExample> *dev) {
  std::vector<LabeledExample> data = examples;
  std::stable_sort(data.begin(), data.end(), ExampleLess);
  std::vector<FeatureTable> features;
  features.reserve(data.size());
  for (const LabeledExample &ex : data) features.push_back(Featurize(ex.tokens()));

  std::vector<std::string> tag_set = TagSetFor(data);
  std::map<std::string, size_t> tag_index;
  for (size_t i = 0; i < tag_set.size(); ++i) tag_index[tag_set[i]] = i;

  AveragedPerceptron trainer(tag_set);
  Rng rng(options.seed);
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  std::optional<TaggerModel> best;
  double best_f1 = -1.0;
  for (size_t epoch = 0; epoch < options.epochs; ++epoch) {
    rng.Shuffle(order);
    for (size_t k : order) {
      const std::vector<std::string> &gold = data[k].tags();
      std::vector<std::string> pred = Decode(trainer.current(), features[k]);
      if (pred != gold) {
        for (size_t i = 0; i < gold.size(); ++i) {
          const std::string gold_prev = i == 0 ? "" : gold[i - 1];
          const std::string pred_prev = i == 0 ? "" : pred[i - 1];
          if (gold[i] == pred[i] && gold_prev == pred_prev) continue;
          const size_t g = tag_index.at(gold[i]);
          const size_t p = tag_index.at(pred[i]);
          for (const std::string &f : features[k][i]) {
            trainer.Update(f, g, 1.0);
            trainer.Update(f, p, -1.0);
          }
          trainer.Update(PrevTagFeature(gold_prev), g, 1.0);
          trainer.Update(PrevTagFeature(pred_prev), p, -1.0);
        }
      }
      trainer.Tick();
    }
    if (dev != nullptr && !dev->empty()) {
      TaggerModel candidate(trainer.Averaged());
      std::vector<std::vector<std::string>> predicted;
      predicted.reserve(dev->size());
      for (const LabeledExample &ex : *dev) {
        predicted.push_back(candidate.Tag(ex.tokens()));
      }
      double f1 = SlotF1(*dev, predicted).slot_f1();
      if (f1 > best_f1) {
        best_f1 = f1;
        best = std::move(candidate);
      }
    }
  }
  if (best) return *best;
  return TaggerModel(trainer.Averaged());
}

}  // namespace sluaug
