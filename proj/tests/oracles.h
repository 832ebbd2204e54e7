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


// Slow, direct reimplementations used as test oracles. Nothing here calls
// the library routine it checks.

#ifndef SLUAUG_TESTS_ORACLES_H_
#define SLUAUG_TESTS_ORACLES_H_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sluaug/align.h"
#include "sluaug/dialogue.h"
#include "sluaug/perceptron.h"
#include "sluaug/tagger.h"

namespace oracle {

// Case folding plus trailing .,!? removal, written out longhand.
inline std::string Normalize(const std::string &token) {
  std::string out;
  for (char c : token) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  while (!out.empty() && std::string(".,!?").find(out.back()) !=
                             std::string::npos) {
    out.pop_back();
  }
  return out;
}

inline std::vector<std::string> Words(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// Every start offset where `value` occurs, scanning token by token.
inline std::vector<sluaug::Span> Occurrences(
    const std::vector<std::string> &tokens, const std::string &value) {
  std::vector<std::string> needle = Words(value);
  std::vector<sluaug::Span> out;
  for (size_t s = 0; s + needle.size() <= tokens.size(); ++s) {
    bool match = true;
    for (size_t k = 0; k < needle.size() && match; ++k) {
      match = Normalize(tokens[s + k]) == Normalize(needle[k]);
    }
    if (match) out.push_back(sluaug::Span{s, s + needle.size()});
  }
  return out;
}

// Enumerates the full cartesian product of occurrence choices. Values are
// visited longest first, then by slot and value; within a value, leftmost
// occurrence first. Returns the first pairwise-disjoint choice, in act order.
inline std::optional<std::vector<sluaug::Span>> BruteForceSpans(
    const std::vector<std::string> &tokens, const sluaug::DialogueAct &act) {
  const auto &pairs = act.slots();
  std::vector<size_t> order(pairs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const size_t la = Words(pairs[a].value()).size();
    const size_t lb = Words(pairs[b].value()).size();
    return std::make_tuple(-static_cast<long>(la), pairs[a].slot(),
                           pairs[a].value()) <
           std::make_tuple(-static_cast<long>(lb), pairs[b].slot(),
                           pairs[b].value());
  });
  std::vector<std::vector<sluaug::Span>> choices;
  for (size_t k : order) {
    choices.push_back(Occurrences(tokens, pairs[k].value()));
    if (choices.back().empty()) return std::nullopt;
  }
  std::vector<size_t> digit(choices.size(), 0);
  for (;;) {
    std::vector<int> used(tokens.size(), 0);
    bool disjoint = true;
    for (size_t k = 0; k < choices.size() && disjoint; ++k) {
      const sluaug::Span &s = choices[k][digit[k]];
      for (size_t t = s.start; t < s.end; ++t) {
        if (used[t]++) disjoint = false;
      }
    }
    if (disjoint) {
      std::vector<sluaug::Span> out(pairs.size());
      for (size_t k = 0; k < order.size(); ++k) {
        out[order[k]] = choices[k][digit[k]];
      }
      return out;
    }
    // Odometer with the first value as the most significant digit.
    size_t k = choices.size();
    while (k > 0) {
      --k;
      if (++digit[k] < choices[k].size()) break;
      digit[k] = 0;
      if (k == 0) return std::nullopt;
    }
    if (choices.empty()) return std::nullopt;
  }
}

// conlleval chunk boundaries, transcribed from its start/end rules.
struct ChunkKey {
  size_t sentence;
  size_t start;
  size_t end;
  std::string type;
  auto operator<=>(const ChunkKey &) const = default;
};

inline void SplitTag(const std::string &tag, std::string &prefix,
                     std::string &type) {
  if (tag == "O" || tag.size() < 2) {
    prefix = "O";
    type = "";
  } else {
    prefix = tag.substr(0, 1);
    type = tag.substr(2);
  }
}

inline bool EndOfChunk(const std::string &prev_tag, const std::string &tag,
                       const std::string &prev_type, const std::string &type) {
  bool end = false;
  if (prev_tag == "B" && tag == "B") end = true;
  if (prev_tag == "B" && tag == "O") end = true;
  if (prev_tag == "I" && tag == "B") end = true;
  if (prev_tag == "I" && tag == "O") end = true;
  if (prev_tag != "O" && prev_type != type) end = true;
  return end;
}

inline bool StartOfChunk(const std::string &prev_tag, const std::string &tag,
                         const std::string &prev_type,
                         const std::string &type) {
  bool start = false;
  if (prev_tag == "B" && tag == "B") start = true;
  if (prev_tag == "I" && tag == "B") start = true;
  if (prev_tag == "O" && tag == "B") start = true;
  if (prev_tag == "O" && tag == "I") start = true;
  if (tag != "O" && prev_type != type) start = true;
  return start;
}

inline std::set<ChunkKey> ConllChunks(size_t sentence,
                                      const std::vector<std::string> &tags) {
  std::set<ChunkKey> out;
  std::string prev_tag = "O";
  std::string prev_type;
  std::optional<ChunkKey> open;
  for (size_t i = 0; i <= tags.size(); ++i) {
    std::string tag = "O";
    std::string type;
    if (i < tags.size()) SplitTag(tags[i], tag, type);
    if (open && EndOfChunk(prev_tag, tag, prev_type, type)) {
      open->end = i;
      out.insert(*open);
      open.reset();
    }
    if (i < tags.size() && StartOfChunk(prev_tag, tag, prev_type, type)) {
      open = ChunkKey{sentence, i, i, type};
    }
    prev_tag = tag;
    prev_type = type;
  }
  return out;
}

struct PrfCounts {
  size_t gold = 0;
  size_t predicted = 0;
  size_t correct = 0;
};

inline PrfCounts ChunkSetCounts(
    const std::vector<std::vector<std::string>> &gold,
    const std::vector<std::vector<std::string>> &predicted) {
  std::set<ChunkKey> g;
  std::set<ChunkKey> p;
  for (size_t s = 0; s < gold.size(); ++s) {
    for (const ChunkKey &c : ConllChunks(s, gold[s])) g.insert(c);
    for (const ChunkKey &c : ConllChunks(s, predicted[s])) p.insert(c);
  }
  PrfCounts counts{g.size(), p.size(), 0};
  for (const ChunkKey &c : p) counts.correct += g.count(c);
  return counts;
}

inline double F1(const PrfCounts &c) {
  if (c.correct == 0) return 0.0;
  const double p = static_cast<double>(c.correct) / c.predicted;
  const double r = static_cast<double>(c.correct) / c.gold;
  return 2 * p * r / (p + r);
}

// Greedy decoding done longhand: score every tag by summing the weights of
// the token's features and the previous-tag feature, skip tags that would
// put I-x after anything other than B-x or I-x, keep the first maximum.
inline std::vector<std::string> NaiveGreedyDecode(
    const sluaug::LinearModel &model, const std::vector<std::string> &tokens) {
  std::vector<std::string> out;
  std::string prev;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::vector<std::string> feats = sluaug::TaggerTokenFeatures(tokens, i);
    feats.push_back(sluaug::PrevTagFeature(prev));
    double best_score = 0.0;
    std::optional<size_t> best;
    for (size_t t = 0; t < model.labels().size(); ++t) {
      const std::string &tag = model.labels()[t];
      if (tag.rfind("I-", 0) == 0) {
        const std::string slot = tag.substr(2);
        if (prev != "B-" + slot && prev != "I-" + slot) continue;
      }
      double score = 0.0;
      for (const std::string &f : feats) {
        if (auto id = model.Find(f)) score += model.Weight(*id, t);
      }
      if (!best || score > best_score) {
        best = t;
        best_score = score;
      }
    }
    out.push_back(model.labels()[*best]);
    prev = out.back();
  }
  return out;
}

struct ReferenceRow {
  std::string mr;
  std::string utterance;
  std::vector<std::pair<std::string, sluaug::Span>> spans;
};

inline std::vector<ReferenceRow> LoadReferenceAlignments(const std::string &path) {
  std::ifstream in(path);
  std::vector<ReferenceRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    ReferenceRow row;
    std::string spans;
    std::getline(fields, row.mr, '\t');
    std::getline(fields, row.utterance, '\t');
    std::getline(fields, spans, '\t');
    std::istringstream items(spans);
    std::string item;
    while (std::getline(items, item, ',')) {
      const size_t eq = item.find('=');
      const size_t colon = item.find(':', eq);
      row.spans.emplace_back(
          item.substr(0, eq),
          sluaug::Span{std::stoul(item.substr(eq + 1, colon - eq - 1)),
                       std::stoul(item.substr(colon + 1))});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace oracle

#endif  // SLUAUG_TESTS_ORACLES_H_
