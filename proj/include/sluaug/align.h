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

#ifndef SLUAUG_ALIGN_H_
#define SLUAUG_ALIGN_H_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sluaug/dialogue.h"

namespace sluaug {

// How utterance tokens are compared against slot values. Matching is always
// token-level: a value never matches part of a token.
struct MatchPolicy {
  bool case_insensitive = true;
  // Strip trailing '.', ',', '!' and '?' from each token before comparing.
  bool punctuation_stripping = true;
};

// Token interval [start, end).
struct Span {
  size_t start = 0;
  size_t end = 0;

  auto operator<=>(const Span &) const = default;
};

std::string NormalizeToken(std::string_view token, const MatchPolicy &policy);

// Leftmost span whose normalized tokens equal the normalized value tokens.
std::optional<Span> FindSpan(std::span<const std::string> tokens,
                             std::string_view value,
                             const MatchPolicy &policy = {});

// Every matching span, ordered by start.
std::vector<Span> FindAllSpans(std::span<const std::string> tokens,
                               std::string_view value,
                               const MatchPolicy &policy = {});

// Places every value of `act` on a distinct, non-overlapping span. Values are
// visited longest first (ties: slot name, then value text) and each tries its
// occurrences leftmost first, backtracking only when a later value cannot be
// placed. The first complete placement in that order is returned, indexed like
// act.slots(); nullopt when no placement exists.
std::optional<std::vector<Span>> AssignSpans(
    std::span<const std::string> tokens, const DialogueAct &act,
    const MatchPolicy &policy = {});

// Coverage filter: true iff every slot value can be placed without overlap.
bool ContainsAllValues(const Utterance &utterance, const DialogueAct &act,
                       const MatchPolicy &policy = {});

// BIO-tags the utterance from AssignSpans. Throws AlignmentFailed naming the
// values that could not be placed.
LabeledExample LabelWithDa(const Utterance &utterance, const DialogueAct &act,
                           const MatchPolicy &policy = {});

// One pair per chunk, value = original-cased token span. Repeated identical
// pairs collapse to the first.
DialogueAct DaFromLabeled(const LabeledExample &example);

}  // namespace sluaug

#endif  // SLUAUG_ALIGN_H_
