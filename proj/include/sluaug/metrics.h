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

#ifndef SLUAUG_METRICS_H_
#define SLUAUG_METRICS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sluaug/dialogue.h"

namespace sluaug {

// 2PR / (P + R), with 0/0 taken as 0.
double F1Score(double precision, double recall);

struct ChunkCounts {
  size_t gold = 0;
  size_t predicted = 0;
  size_t correct = 0;

  double precision() const;
  double recall() const;
  double f1() const { return F1Score(precision(), recall()); }
};

struct EvalReport {
  ChunkCounts chunks;
  std::map<std::string, ChunkCounts> per_label;
  std::optional<double> intent_accuracy;
  // Token-level micro F1 over non-O tags; only filled on request.
  std::optional<double> token_f1;

  double slot_precision() const { return chunks.precision(); }
  double slot_recall() const { return chunks.recall(); }
  double slot_f1() const { return chunks.f1(); }
};

// Micro-averaged exact-chunk (label, start, end) matching, conlleval style.
// Throws ArityMismatch when the corpora or any tag sequences differ in length.
EvalReport SlotF1(const std::vector<LabeledExample> &gold,
                  const std::vector<std::vector<std::string>> &predicted);

double TokenF1(const std::vector<LabeledExample> &gold,
               const std::vector<std::vector<std::string>> &predicted);

// Fraction of exact matches. Throws ArityMismatch on unequal or empty input.
double IntentAccuracy(const std::vector<std::string> &gold,
                      const std::vector<std::string> &predicted);

struct TTestResult {
  double t = 0.0;
  double p_value = 1.0;
  size_t degrees_of_freedom = 0;
};

// Paired t-test on matched scores, two-sided. Throws ArityMismatch on unequal
// lengths and DegenerateInput for fewer than two pairs or zero variance of
// the differences (which includes all differences being zero).
TTestResult PairedTTest(std::span<const double> a, std::span<const double> b);

// I_x(a, b) by Lentz's continued fraction; absolute error below 1e-10 over
// the ranges used here.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double StudentTwoSidedP(double t, double dof);

// Human-readable table.
std::string FormatReport(const EvalReport &report);

// `metric<TAB>value` lines.
std::string FormatReportTsv(const EvalReport &report);

}  // namespace sluaug

#endif  // SLUAUG_METRICS_H_
