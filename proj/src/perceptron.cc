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

#include "sluaug/perceptron.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>

#include "fmt/format.h"
#include "sluaug/errors.h"

namespace sluaug {
namespace {

constexpr std::string_view kLabelFeature = "__label__";

std::string RenderDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

LinearModel::LinearModel(std::vector<std::string> labels)
    : labels_(std::move(labels)) {}

std::optional<uint32_t> LinearModel::Find(std::string_view feature) const {
  auto it = ids_.find(std::string(feature));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

uint32_t LinearModel::Intern(const std::string &feature) {
  auto [it, inserted] =
      ids_.emplace(feature, static_cast<uint32_t>(names_.size()));
  if (inserted) {
    names_.push_back(feature);
    weights_.resize(weights_.size() + labels_.size(), 0.0);
  }
  return it->second;
}

void LinearModel::AddScores(uint32_t feature, std::span<double> scores) const {
  const double *row = &weights_[feature * labels_.size()];
  for (size_t l = 0; l < labels_.size(); ++l) scores[l] += row[l];
}

std::string LinearModel::Format() const {
  std::vector<std::tuple<std::string, std::string, double>> rows;
  for (size_t l = 0; l < labels_.size(); ++l) {
    rows.emplace_back(std::string(kLabelFeature), labels_[l],
                      static_cast<double>(l));
  }
  for (uint32_t f = 0; f < names_.size(); ++f) {
    for (size_t l = 0; l < labels_.size(); ++l) {
      double w = Weight(f, l);
      if (w != 0.0) rows.emplace_back(names_[f], labels_[l], w);
    }
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto &[feature, label, w] : rows) {
    out += feature;
    out += '\t';
    out += label;
    out += '\t';
    out += RenderDouble(w);
    out += '\n';
  }
  return out;
}

LinearModel LinearModel::Parse(std::string_view text) {
  std::vector<std::tuple<std::string, std::string, double>> rows;
  std::vector<std::pair<double, std::string>> labels_by_index;
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    ++line_no;
    size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, (nl == std::string_view::npos ? text.size() : nl) - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    if (line.empty()) continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) {
      throw FormatError(line_no, "expected feature<TAB>label<TAB>weight");
    }
    std::string_view wtext = line.substr(t2 + 1);
    double w = 0.0;
    auto [ptr, ec] = std::from_chars(wtext.data(), wtext.data() + wtext.size(), w);
    if (ec != std::errc() || ptr != wtext.data() + wtext.size()) {
      throw FormatError(line_no, "bad weight");
    }
    std::string feature(line.substr(0, t1));
    std::string label(line.substr(t1 + 1, t2 - t1 - 1));
    if (feature == kLabelFeature) {
      labels_by_index.emplace_back(w, label);
    } else {
      rows.emplace_back(std::move(feature), std::move(label), w);
    }
  }
  std::sort(labels_by_index.begin(), labels_by_index.end());
  std::vector<std::string> labels;
  for (auto &[index, label] : labels_by_index) labels.push_back(label);
  LinearModel model(labels);
  std::map<std::string, size_t> label_index;
  for (size_t i = 0; i < labels.size(); ++i) label_index[labels[i]] = i;
  for (const auto &[feature, label, w] : rows) {
    auto it = label_index.find(label);
    if (it == label_index.end()) {
      throw FormatError(0, "weight for undeclared label " + label);
    }
    model.MutableWeight(model.Intern(feature), it->second) = w;
  }
  return model;
}

bool LinearModel::operator==(const LinearModel &other) const {
  return Format() == other.Format();
}

AveragedPerceptron::AveragedPerceptron(std::vector<std::string> labels)
    : current_(std::move(labels)) {}

void AveragedPerceptron::Update(const std::string &feature, size_t label,
                                double delta) {
  uint32_t id = current_.Intern(feature);
  accum_.resize(current_.num_features() * current_.num_labels(), 0.0);
  current_.MutableWeight(id, label) += delta;
  accum_[id * current_.num_labels() + label] +=
      static_cast<double>(steps_) * delta;
}

LinearModel AveragedPerceptron::Averaged() const {
  LinearModel avg = current_;
  if (steps_ == 0) return avg;
  for (uint32_t f = 0; f < avg.num_features(); ++f) {
    for (size_t l = 0; l < avg.num_labels(); ++l) {
      size_t k = f * avg.num_labels() + l;
      double acc = k < accum_.size() ? accum_[k] : 0.0;
      avg.MutableWeight(f, l) =
          current_.Weight(f, l) - acc / static_cast<double>(steps_);
    }
  }
  return avg;
}

}  // namespace sluaug
