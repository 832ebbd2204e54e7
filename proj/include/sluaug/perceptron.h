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

#ifndef SLUAUG_PERCEPTRON_H_
#define SLUAUG_PERCEPTRON_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sluaug {

// Sparse-feature linear scorer: one weight per (feature, label).
class LinearModel {
 public:
  LinearModel() = default;
  explicit LinearModel(std::vector<std::string> labels);

  const std::vector<std::string> &labels() const { return labels_; }
  size_t num_labels() const { return labels_.size(); }
  size_t num_features() const { return names_.size(); }

  std::optional<uint32_t> Find(std::string_view feature) const;
  uint32_t Intern(const std::string &feature);
  const std::string &FeatureName(uint32_t id) const { return names_[id]; }

  double Weight(uint32_t feature, size_t label) const {
    return weights_[feature * labels_.size() + label];
  }
  double &MutableWeight(uint32_t feature, size_t label) {
    return weights_[feature * labels_.size() + label];
  }

  // Adds this feature's weights into scores (one slot per label).
  void AddScores(uint32_t feature, std::span<double> scores) const;

  // Sorted `feature<TAB>label<TAB>weight` lines with shortest round-trip
  // decimal weights. Zero weights are omitted. Each label appears once under
  // the reserved feature `__label__` with its index as the weight, so the
  // label set and order survive.
  std::string Format() const;

  // Throws FormatError.
  static LinearModel Parse(std::string_view text);

  bool operator==(const LinearModel &other) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, uint32_t> ids_;
  std::vector<std::string> names_;
  std::vector<double> weights_;
};

// Perceptron updates with weight averaging over training steps. The averaged
// model is the mean of the weight vectors observed after each step.
class AveragedPerceptron {
 public:
  explicit AveragedPerceptron(std::vector<std::string> labels);

  const LinearModel &current() const { return current_; }

  void Update(const std::string &feature, size_t label, double delta);

  // Ends one training step (one example).
  void Tick() { ++steps_; }
  uint64_t steps() const { return steps_; }

  LinearModel Averaged() const;

 private:
  LinearModel current_;
  // Sum over updates of (steps before the update) * delta.
  std::vector<double> accum_;
  uint64_t steps_ = 0;
};

}  // namespace sluaug

#endif  // SLUAUG_PERCEPTRON_H_
