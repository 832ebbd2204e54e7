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

#include "sluaug/mr_format.h"

#include <cctype>
#include <set>
#include <utility>
#include <vector>

#include "fmt/format.h"
#include "sluaug/errors.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

// Offset of the first non-space character at or after `from`.
size_t SkipSpace(std::string_view s, size_t from) {
  while (from < s.size() && IsSpace(s[from])) ++from;
  return from;
}

}  // namespace

void MrGrammarConfig::Check() const {
  const char chars[] = {pair_separator, kv_separator, open, close};
  std::set<char> distinct(std::begin(chars), std::end(chars));
  if (distinct.size() != 4) {
    throw ConfigError("MR delimiters must be distinct");
  }
  for (char c : chars) {
    if (std::isalnum(static_cast<unsigned char>(c)) || IsSpace(c) ||
        c == '_') {
      throw ConfigError(fmt::format("invalid MR delimiter '{}'", c));
    }
  }
}

std::string SerializeDa(const DialogueAct &act, const MrGrammarConfig &cfg) {
  const std::string reserved{cfg.pair_separator, cfg.kv_separator, cfg.open,
                             cfg.close};
  auto check = [&](const std::string &field, bool allow_kv) {
    for (char c : field) {
      if (c == cfg.kv_separator && allow_kv) continue;
      if (reserved.find(c) != std::string::npos) {
        throw MalformedMr(0, fmt::format("'{}' contains delimiter '{}'",
                                         field, c));
      }
    }
  };
  check(act.intent(), false);
  std::string out = act.intent();
  out += ' ';
  out += cfg.open;
  for (size_t i = 0; i < act.slots().size(); ++i) {
    const SlotValue &sv = act.slots()[i];
    check(sv.slot(), false);
    check(sv.value(), true);
    if (i > 0) {
      out += ' ';
      out += cfg.pair_separator;
    }
    out += ' ';
    out += sv.slot();
    out += ' ';
    out += cfg.kv_separator;
    out += ' ';
    out += sv.value();
  }
  out += ' ';
  out += cfg.close;
  return out;
}

DialogueAct ParseDa(std::string_view text, const MrGrammarConfig &cfg) {
  const size_t open = text.find(cfg.open);
  if (open == std::string_view::npos) {
    throw MalformedMr(text.size(), "missing opening delimiter");
  }
  const size_t close = text.find(cfg.close, open + 1);
  if (close == std::string_view::npos) {
    throw MalformedMr(text.size(), "missing closing delimiter");
  }
  const size_t trailing = SkipSpace(text, close + 1);
  if (trailing != text.size()) {
    throw MalformedMr(trailing, "text after closing delimiter");
  }
  const size_t nested = text.find(cfg.open, open + 1);
  if (nested != std::string_view::npos && nested < close) {
    throw MalformedMr(nested, "nested opening delimiter");
  }
  const size_t stray_close = text.find(cfg.close);
  if (stray_close < open) {
    throw MalformedMr(stray_close, "closing delimiter before opening");
  }

  std::string_view intent_text = Trim(text.substr(0, open));
  if (intent_text.empty()) throw MalformedMr(open, "empty intent");
  for (size_t i = 0; i < intent_text.size(); ++i) {
    char c = intent_text[i];
    if (c == cfg.pair_separator || c == cfg.kv_separator || c == ';' ||
        c == '=' || c == '\t' || c == '\n' || c == '\r') {
      throw MalformedMr(i, "reserved character in intent");
    }
  }

  std::vector<SlotValue> pairs;
  std::set<std::pair<std::string, std::string>> seen;
  const size_t body_begin = open + 1;
  std::string_view body = text.substr(body_begin, close - body_begin);
  if (!Trim(body).empty()) {
    size_t start = 0;
    for (;;) {
      size_t sep = body.find(cfg.pair_separator, start);
      size_t end = sep == std::string_view::npos ? body.size() : sep;
      std::string_view pair = body.substr(start, end - start);
      const size_t at = body_begin + start;
      if (Trim(pair).empty()) throw MalformedMr(at, "empty pair");
      size_t kv = pair.find(cfg.kv_separator);
      if (kv == std::string_view::npos) {
        throw MalformedMr(at, "missing key-value separator");
      }
      std::string slot(Trim(pair.substr(0, kv)));
      std::string value = NormalizeWhitespace(pair.substr(kv + 1));
      if (slot.empty()) throw MalformedMr(at, "empty slot name");
      if (value.empty()) throw MalformedMr(at + kv, "empty value");
      if (!seen.emplace(slot, value).second) {
        throw MalformedMr(at, "duplicate pair " + slot + " = " + value);
      }
      try {
        pairs.emplace_back(std::move(slot), std::move(value));
      } catch (const ValidationError &e) {
        throw MalformedMr(at, e.what());
      }
      if (sep == std::string_view::npos) break;
      start = sep + 1;
    }
  }
  try {
    return DialogueAct(std::string(intent_text), std::move(pairs));
  } catch (const ValidationError &e) {
    throw MalformedMr(0, e.what());
  }
}

}  // namespace sluaug
