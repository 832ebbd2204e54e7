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

#include "sluaug/align.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "sluaug/errors.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

std::vector<std::string> NormalizeAll(std::span<const std::string> tokens,
                                      const MatchPolicy &policy) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string &t : tokens) out.push_back(NormalizeToken(t, policy));
  return out;
}

std::vector<Span> Occurrences(const std::vector<std::string> &haystack,
                              const std::vector<std::string> &needle) {
  std::vector<Span> out;
  if (needle.empty() || needle.size() > haystack.size()) return out;
  for (size_t s = 0; s + needle.size() <= haystack.size(); ++s) {
    if (std::equal(needle.begin(), needle.end(), haystack.begin() + s)) {
      out.push_back(Span{s, s + needle.size()});
    }
  }
  return out;
}

class Placer {
 public:
  Placer(std::vector<std::vector<Span>> candidates, size_t num_tokens)
      : candidates_(std::move(candidates)),
        claimed_(num_tokens, false),
        chosen_(candidates_.size()) {}

  bool Run() { return Place(0); }
  const std::vector<Span> &chosen() const { return chosen_; }

 private:
  bool Place(size_t k) {
    if (k == candidates_.size()) return true;
    for (const Span &span : candidates_[k]) {
      if (!Free(span)) continue;
      Mark(span, true);
      chosen_[k] = span;
      if (Place(k + 1)) return true;
      Mark(span, false);
    }
    return false;
  }

  bool Free(const Span &span) const {
    for (size_t i = span.start; i < span.end; ++i) {
      if (claimed_[i]) return false;
    }
    return true;
  }

  void Mark(const Span &span, bool value) {
    for (size_t i = span.start; i < span.end; ++i) claimed_[i] = value;
  }

  std::vector<std::vector<Span>> candidates_;
  std::vector<bool> claimed_;
  std::vector<Span> chosen_;
};

}  // namespace

std::string NormalizeToken(std::string_view token, const MatchPolicy &policy) {
  std::string out = policy.case_insensitive ? AsciiLower(token)
                                            : std::string(token);
  if (policy.punctuation_stripping) {
    while (!out.empty() && (out.back() == '.' || out.back() == ',' ||
                            out.back() == '!' || out.back() == '?')) {
      out.pop_back();
    }
  }
  return out;
}

std::vector<Span> FindAllSpans(std::span<const std::string> tokens,
                               std::string_view value,
                               const MatchPolicy &policy) {
  std::vector<std::string> value_tokens = SplitWhitespace(value);
  return Occurrences(NormalizeAll(tokens, policy),
                     NormalizeAll(value_tokens, policy));
}

std::optional<Span> FindSpan(std::span<const std::string> tokens,
                             std::string_view value,
                             const MatchPolicy &policy) {
  std::vector<Span> all = FindAllSpans(tokens, value, policy);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<std::vector<Span>> AssignSpans(
    std::span<const std::string> tokens, const DialogueAct &act,
    const MatchPolicy &policy) {
  const std::vector<SlotValue> &slots = act.slots();
  const std::vector<std::string> normalized = NormalizeAll(tokens, policy);

  std::vector<std::vector<std::string>> value_tokens;
  value_tokens.reserve(slots.size());
  for (const SlotValue &sv : slots) {
    value_tokens.push_back(NormalizeAll(SplitWhitespace(sv.value()), policy));
  }

  std::vector<size_t> order(slots.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (value_tokens[a].size() != value_tokens[b].size()) {
      return value_tokens[a].size() > value_tokens[b].size();
    }
    if (slots[a].slot() != slots[b].slot()) {
      return slots[a].slot() < slots[b].slot();
    }
    return slots[a].value() < slots[b].value();
  });

  std::vector<std::vector<Span>> candidates;
  candidates.reserve(order.size());
  for (size_t k : order) {
    candidates.push_back(Occurrences(normalized, value_tokens[k]));
    if (candidates.back().empty()) return std::nullopt;
  }

  Placer placer(std::move(candidates), tokens.size());
  if (!placer.Run()) return std::nullopt;

  std::vector<Span> result(slots.size());
  for (size_t i = 0; i < order.size(); ++i) {
    result[order[i]] = placer.chosen()[i];
  }
  return result;
}

bool ContainsAllValues(const Utterance &utterance, const DialogueAct &act,
                       const MatchPolicy &policy) {
  return AssignSpans(utterance.tokens(), act, policy).has_value();
}

LabeledExample LabelWithDa(const Utterance &utterance, const DialogueAct &act,
                           const MatchPolicy &policy) {
  std::optional<std::vector<Span>> spans =
      AssignSpans(utterance.tokens(), act, policy);
  if (!spans) {
    std::vector<std::string> missing;
    for (const SlotValue &sv : act.slots()) {
      if (!FindSpan(utterance.tokens(), sv.value(), policy)) {
        missing.push_back(sv.slot() + " = " + sv.value());
      }
    }
    std::string detail =
        missing.empty() ? "values overlap; no disjoint placement exists"
                        : "missing " + Join(missing, ", ");
    throw AlignmentFailed("cannot align \"" + utterance.Text() + "\" with " +
                          act.intent() + ": " + detail);
  }
  std::vector<std::string> tags(utterance.size(), std::string(kOutsideTag));
  for (size_t i = 0; i < spans->size(); ++i) {
    const Span &span = (*spans)[i];
    const std::string &slot = act.slots()[i].slot();
    tags[span.start] = "B-" + slot;
    for (size_t t = span.start + 1; t < span.end; ++t) tags[t] = "I-" + slot;
  }
  return LabeledExample(utterance, act.intent(), std::move(tags));
}

DialogueAct DaFromLabeled(const LabeledExample &example) {
  std::vector<SlotValue> pairs;
  std::set<std::pair<std::string, std::string>> seen;
  for (const Chunk &c : ExtractChunks(example.tags())) {
    std::vector<std::string> span(example.tokens().begin() + c.start,
                                  example.tokens().begin() + c.end);
    std::string value = Join(span, " ");
    if (!seen.emplace(c.label, value).second) continue;
    pairs.emplace_back(c.label, std::move(value));
  }
  return DialogueAct(example.intent(), std::move(pairs));
}

}  // namespace sluaug
