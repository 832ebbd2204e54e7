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

#include "sluaug/corpus_io.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "fmt/format.h"
#include "sluaug/errors.h"
#include "sluaug/mr_format.h"
#include "sluaug/random.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

constexpr std::string_view kIntentHeader = "# intent = ";
constexpr std::string_view kActHeader = "# act = ";

struct Line {
  size_t number;  // 1-based
  std::string_view text;
};

std::vector<Line> SplitLines(std::string_view text) {
  std::vector<Line> lines;
  size_t number = 1;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(start, end - start);
    if (line.find('\r') != std::string_view::npos) {
      throw FormatError(number, "carriage return in line");
    }
    lines.push_back(Line{number, line});
    ++number;
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path &path, const std::string &data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << data;
  if (!out) throw DataError("write failed for " + path.string());
}

void CheckToken(const Line &line, std::string_view token) {
  if (token.empty()) throw FormatError(line.number, "empty token");
  for (char c : token) {
    if (IsSpace(c)) throw FormatError(line.number, "whitespace inside token");
  }
}

void ParseBlock(const std::vector<Line> &block, Corpus &corpus) {
  const Line &first = block.front();
  if (StartsWith(first.text, kActHeader)) {
    if (block.size() != 1) {
      throw FormatError(block[1].number, "act block has extra lines");
    }
    try {
      corpus.acts_only.push_back(ParseDa(first.text.substr(kActHeader.size())));
    } catch (const MalformedMr &e) {
      throw FormatError(first.number, e.what());
    }
    return;
  }

  if (StartsWith(first.text, kIntentHeader)) {
    std::string intent(Trim(first.text.substr(kIntentHeader.size())));
    if (block.size() < 2) {
      throw FormatError(first.number, "intent header without tokens");
    }
    std::vector<std::string> tokens;
    std::vector<std::string> tags;
    for (size_t i = 1; i < block.size(); ++i) {
      const Line &line = block[i];
      size_t tab = line.text.find('\t');
      if (tab == std::string_view::npos ||
          line.text.find('\t', tab + 1) != std::string_view::npos) {
        throw FormatError(line.number, "expected token<TAB>tag");
      }
      std::string_view token = line.text.substr(0, tab);
      std::string_view tag = line.text.substr(tab + 1);
      CheckToken(line, token);
      if (tag.empty()) throw FormatError(line.number, "empty tag");
      tokens.emplace_back(token);
      tags.emplace_back(tag);
    }
    // Report the first offending tag at its own line.
    for (size_t i = 0; i < tags.size(); ++i) {
      std::vector<std::string> head(tags.begin(), tags.begin() + i + 1);
      std::vector<std::string> problems = BioViolations(head.size(), head);
      if (!problems.empty()) {
        throw FormatError(block[i + 1].number, problems.front());
      }
    }
    try {
      corpus.paired.emplace_back(Utterance::FromTokens(std::move(tokens)),
                                 std::move(intent), std::move(tags));
    } catch (const ValidationError &e) {
      throw FormatError(first.number, e.what());
    }
    return;
  }

  std::vector<std::string> tokens;
  for (const Line &line : block) {
    if (StartsWith(line.text, "# ")) {
      throw FormatError(line.number, "unknown header");
    }
    if (line.text.find('\t') != std::string_view::npos) {
      throw FormatError(line.number, "tagged line in block without header");
    }
    CheckToken(line, line.text);
    tokens.emplace_back(line.text);
  }
  corpus.utterances_only.push_back(Utterance::FromTokens(std::move(tokens)));
}

}  // namespace

Corpus ParseCorpus(std::string_view text) {
  Corpus corpus;
  std::vector<Line> block;
  for (const Line &line : SplitLines(text)) {
    if (line.text.empty()) {
      if (!block.empty()) ParseBlock(block, corpus);
      block.clear();
    } else {
      block.push_back(line);
    }
  }
  if (!block.empty()) ParseBlock(block, corpus);
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path &path) {
  try {
    return ParseCorpus(ReadFile(path));
  } catch (const FormatError &e) {
    throw FormatError(path.string(), e.line_no(), e.reason());
  }
}

std::string FormatCorpus(const Corpus &corpus) {
  std::vector<std::string> blocks;
  for (const LabeledExample &ex : corpus.paired) {
    std::string b = std::string(kIntentHeader) + ex.intent() + "\n";
    for (size_t i = 0; i < ex.tokens().size(); ++i) {
      b += ex.tokens()[i] + "\t" + ex.tags()[i] + "\n";
    }
    blocks.push_back(std::move(b));
  }
  for (const DialogueAct &act : corpus.acts_only) {
    blocks.push_back(std::string(kActHeader) + SerializeDa(act) + "\n");
  }
  for (const Utterance &u : corpus.utterances_only) {
    blocks.push_back(Join(u.tokens(), "\n") + "\n");
  }
  return Join(blocks, "\n");
}

void SaveCorpus(const Corpus &corpus, const std::filesystem::path &path) {
  WriteFile(path, FormatCorpus(corpus));
}

Ontology ParseOntology(std::string_view text) {
  std::set<std::string> intents;
  std::set<std::string> slots;
  std::map<std::string, std::set<std::string>> values;
  std::optional<std::vector<DialogueAct>> acts;
  for (const Line &line : SplitLines(text)) {
    if (Trim(line.text).empty() || line.text.front() == '#') continue;
    std::vector<std::string_view> fields;
    size_t start = 0;
    for (;;) {
      size_t tab = line.text.find('\t', start);
      fields.push_back(line.text.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    const std::string_view kind = fields[0];
    if (kind == "intent" && fields.size() == 2) {
      intents.emplace(Trim(fields[1]));
    } else if (kind == "slot" && fields.size() == 2) {
      slots.emplace(Trim(fields[1]));
    } else if (kind == "value" && fields.size() == 3) {
      std::string value = NormalizeWhitespace(fields[2]);
      if (value.empty()) throw FormatError(line.number, "empty value");
      values[std::string(Trim(fields[1]))].insert(std::move(value));
    } else if (kind == "act" && fields.size() == 2) {
      if (!acts) acts.emplace();
      try {
        acts->push_back(ParseDa(fields[1]));
      } catch (const MalformedMr &e) {
        throw FormatError(line.number, e.what());
      }
    } else {
      throw FormatError(line.number, "unrecognized ontology record");
    }
  }
  try {
    return Ontology(std::move(intents), std::move(slots), std::move(values),
                    std::move(acts));
  } catch (const ValidationError &e) {
    throw FormatError(0, e.what());
  }
}

Ontology LoadOntology(const std::filesystem::path &path) {
  try {
    return ParseOntology(ReadFile(path));
  } catch (const FormatError &e) {
    throw FormatError(path.string(), e.line_no(), e.reason());
  }
}

std::string FormatOntology(const Ontology &ontology) {
  std::string out;
  for (const std::string &intent : ontology.intents()) {
    out += "intent\t" + intent + "\n";
  }
  for (const std::string &slot : ontology.slots()) {
    out += "slot\t" + slot + "\n";
  }
  for (const auto &[slot, vs] : ontology.known_values()) {
    for (const std::string &v : vs) out += "value\t" + slot + "\t" + v + "\n";
  }
  if (ontology.valid_acts()) {
    for (const DialogueAct &act : *ontology.valid_acts()) {
      out += "act\t" + SerializeDa(act) + "\n";
    }
  }
  return out;
}

void SplitSpec::Check() const {
  if (denominator == 0 || numerator == 0 || numerator > denominator) {
    throw ConfigError(fmt::format("split fraction {}/{} outside (0, 1]",
                                  numerator, denominator));
  }
}

size_t RoundHalfUp(uint64_t numerator, uint64_t denominator, size_t n) {
  // floor((2 * num * n + den) / (2 * den)) computed without overflow for the
  // corpus sizes we handle.
  unsigned __int128 scaled = static_cast<unsigned __int128>(numerator) * n * 2;
  scaled += denominator;
  return static_cast<size_t>(scaled / (static_cast<unsigned __int128>(2) *
                                       denominator));
}

Split SampleSplit(const Corpus &corpus, const SplitSpec &spec) {
  spec.Check();
  const size_t n = corpus.paired.size();
  if (n < spec.dev_size + 1) {
    throw InsufficientData(fmt::format(
        "{} paired examples cannot supply dev size {} plus training data", n,
        spec.dev_size));
  }
  Rng rng(spec.seed);
  std::vector<size_t> train_idx;
  std::vector<size_t> rest;

  if (!spec.stratified) {
    const size_t train_size = RoundHalfUp(spec.numerator, spec.denominator, n);
    if (train_size == 0 || train_size + spec.dev_size > n) {
      throw InsufficientData(fmt::format(
          "train size {} plus dev size {} does not fit {} examples",
          train_size, spec.dev_size, n));
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    train_idx.assign(order.begin(), order.begin() + train_size);
    rest.assign(order.begin() + train_size, order.end());
  } else {
    std::map<std::string, std::vector<size_t>> by_intent;
    for (size_t i = 0; i < n; ++i) {
      by_intent[corpus.paired[i].intent()].push_back(i);
    }
    for (auto &[intent, members] : by_intent) {
      rng.Shuffle(members);
      size_t take =
          RoundHalfUp(spec.numerator, spec.denominator, members.size());
      train_idx.insert(train_idx.end(), members.begin(),
                       members.begin() + take);
      rest.insert(rest.end(), members.begin() + take, members.end());
    }
    if (train_idx.empty() || train_idx.size() + spec.dev_size > n) {
      throw InsufficientData("stratified split leaves no room for dev data");
    }
    std::sort(rest.begin(), rest.end());
    rng.Shuffle(rest);
  }

  std::vector<size_t> dev_idx(rest.begin(), rest.begin() + spec.dev_size);
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(dev_idx.begin(), dev_idx.end());

  Split split;
  for (size_t i : train_idx) split.train.paired.push_back(corpus.paired[i]);
  for (size_t i : dev_idx) split.dev.paired.push_back(corpus.paired[i]);
  split.train.acts_only = corpus.acts_only;
  split.train.utterances_only = corpus.utterances_only;
  return split;
}

CorpusStats ComputeStats(const Corpus &corpus) {
  CorpusStats stats;
  stats.num_paired = corpus.paired.size();
  stats.num_acts = corpus.acts_only.size();
  stats.num_utterances = corpus.utterances_only.size();
  std::set<std::string> intents;
  std::set<std::string> slots;
  for (const LabeledExample &ex : corpus.paired) {
    intents.insert(ex.intent());
    for (const Chunk &c : ExtractChunks(ex.tags())) {
      slots.insert(c.label);
      std::vector<std::string> span(ex.tokens().begin() + c.start,
                                    ex.tokens().begin() + c.end);
      ++stats.value_inventory[c.label][Join(span, " ")];
    }
  }
  for (const DialogueAct &act : corpus.acts_only) {
    intents.insert(act.intent());
    for (const SlotValue &sv : act.slots()) slots.insert(sv.slot());
  }
  stats.num_intents = intents.size();
  stats.num_slot_labels = slots.size();
  return stats;
}

std::string FormatStats(const CorpusStats &stats) {
  std::string out;
  out += fmt::format("num_paired\t{}\n", stats.num_paired);
  out += fmt::format("num_acts\t{}\n", stats.num_acts);
  out += fmt::format("num_utterances\t{}\n", stats.num_utterances);
  out += fmt::format("num_intents\t{}\n", stats.num_intents);
  out += fmt::format("num_slot_labels\t{}\n", stats.num_slot_labels);
  for (const auto &[slot, values] : stats.value_inventory) {
    size_t total = 0;
    for (const auto &[v, count] : values) total += count;
    out += fmt::format("values.{}\t{}\n", slot, total);
  }
  return out;
}

}  // namespace sluaug
