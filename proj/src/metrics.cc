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

#include "sluaug/metrics.h"

#include <cmath>
#include <limits>
#include <set>

#include "fmt/format.h"
#include "sluaug/errors.h"

namespace sluaug {

double F1Score(double precision, double recall) {
  double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

double ChunkCounts::precision() const {
  return predicted == 0 ? 0.0 : static_cast<double>(correct) / predicted;
}

double ChunkCounts::recall() const {
  return gold == 0 ? 0.0 : static_cast<double>(correct) / gold;
}

namespace {

void CheckArity(const std::vector<LabeledExample> &gold,
                const std::vector<std::vector<std::string>> &predicted) {
  if (gold.size() != predicted.size()) {
    throw ArityMismatch(fmt::format("{} gold examples but {} predictions",
                                    gold.size(), predicted.size()));
  }
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].tags().size() != predicted[i].size()) {
      throw ArityMismatch(fmt::format("example {}: {} gold tags, {} predicted",
                                      i, gold[i].tags().size(),
                                      predicted[i].size()));
    }
  }
}

}  // namespace

EvalReport SlotF1(const std::vector<LabeledExample> &gold,
                  const std::vector<std::vector<std::string>> &predicted) {
  CheckArity(gold, predicted);
  EvalReport report;
  for (size_t i = 0; i < gold.size(); ++i) {
    std::vector<Chunk> g = ExtractChunks(gold[i].tags());
    std::vector<Chunk> p = ExtractChunks(predicted[i]);
    std::set<Chunk> gold_set(g.begin(), g.end());
    for (const Chunk &c : g) ++report.per_label[c.label].gold;
    for (const Chunk &c : p) {
      ++report.per_label[c.label].predicted;
      if (gold_set.count(c)) {
        ++report.per_label[c.label].correct;
        ++report.chunks.correct;
      }
    }
    report.chunks.gold += g.size();
    report.chunks.predicted += p.size();
  }
  return report;
}

double TokenF1(const std::vector<LabeledExample> &gold,
               const std::vector<std::vector<std::string>> &predicted) {
  CheckArity(gold, predicted);
  ChunkCounts counts;
  auto label = [](const std::string &tag) {
    return tag.size() > 2 ? tag.substr(2) : std::string();
  };
  for (size_t i = 0; i < gold.size(); ++i) {
    for (size_t t = 0; t < predicted[i].size(); ++t) {
      std::string g = label(gold[i].tags()[t]);
      std::string p = label(predicted[i][t]);
      if (!g.empty()) ++counts.gold;
      if (!p.empty()) ++counts.predicted;
      if (!g.empty() && g == p) ++counts.correct;
    }
  }
  return counts.f1();
}

double IntentAccuracy(const std::vector<std::string> &gold,
                      const std::vector<std::string> &predicted) {
  if (gold.size() != predicted.size() || gold.empty()) {
    throw ArityMismatch(fmt::format("{} gold intents, {} predicted",
                                    gold.size(), predicted.size()));
  }
  size_t hits = 0;
  for (size_t i = 0; i < gold.size(); ++i) hits += gold[i] == predicted[i];
  return static_cast<double>(hits) / gold.size();
}

TTestResult PairedTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ArityMismatch(fmt::format("{} vs {} paired scores", a.size(),
                                    b.size()));
  }
  const size_t n = a.size();
  if (n < 2) throw DegenerateInput("paired t-test needs at least two pairs");
  double mean = 0.0;
  for (size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= n;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1));
  if (!(sd > 0.0)) {
    throw DegenerateInput("differences have zero variance");
  }
  TTestResult result;
  result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  result.degrees_of_freedom = n - 1;
  result.p_value = StudentTwoSidedP(result.t, static_cast<double>(n - 1));
  return result;
}

namespace {

// Continued fraction for I_x(a, b), modified Lentz.
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fast for x < (a + 1) / (a + b + 2); use the
  // symmetry I_x(a, b) = 1 - I_{1-x}(b, a) elsewhere.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTwoSidedP(double t, double dof) {
  if (std::isinf(t)) return 0.0;
  const double x = dof / (dof + t * t);
  return RegularizedIncompleteBeta(dof / 2.0, 0.5, x);
}

std::string FormatReport(const EvalReport &report) {
  std::string out;
  out += fmt::format("{:<24} {:>9} {:>9} {:>9} {:>7} {:>7} {:>7}\n", "label",
                     "precision", "recall", "f1", "gold", "pred", "correct");
  auto row = [&](const std::string &name, const ChunkCounts &c) {
    out += fmt::format("{:<24} {:>9.4f} {:>9.4f} {:>9.4f} {:>7} {:>7} {:>7}\n",
                       name, c.precision(), c.recall(), c.f1(), c.gold,
                       c.predicted, c.correct);
  };
  for (const auto &[label, counts] : report.per_label) row(label, counts);
  row("ALL", report.chunks);
  if (report.intent_accuracy) {
    out += fmt::format("intent accuracy: {:.4f}\n", *report.intent_accuracy);
  }
  if (report.token_f1) {
    out += fmt::format("token f1: {:.4f}\n", *report.token_f1);
  }
  return out;
}

std::string FormatReportTsv(const EvalReport &report) {
  std::string out;
  out += fmt::format("slot_precision\t{:.6f}\n", report.slot_precision());
  out += fmt::format("slot_recall\t{:.6f}\n", report.slot_recall());
  out += fmt::format("slot_f1\t{:.6f}\n", report.slot_f1());
  if (report.intent_accuracy) {
    out += fmt::format("intent_accuracy\t{:.6f}\n", *report.intent_accuracy);
  }
  if (report.token_f1) {
    out += fmt::format("token_f1\t{:.6f}\n", *report.token_f1);
  }
  out += fmt::format("gold_chunks\t{}\n", report.chunks.gold);
  out += fmt::format("predicted_chunks\t{}\n", report.chunks.predicted);
  out += fmt::format("correct_chunks\t{}\n", report.chunks.correct);
  for (const auto &[label, c] : report.per_label) {
    out += fmt::format("slot_f1.{}\t{:.6f}\n", label, c.f1());
  }
  return out;
}

}  // namespace sluaug
