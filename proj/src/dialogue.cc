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

#include "sluaug/dialogue.h"

#include <algorithm>
#include <utility>

#include "fmt/format.h"
#include "sluaug/errors.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

bool HasAnyOf(std::string_view s, std::string_view chars) {
  return s.find_first_of(chars) != std::string_view::npos;
}

// Identifiers keep internal spaces (external backends emit e.g.
// "restaurant type"), but no control whitespace or surrounding blanks.
void CheckIdentifier(std::string_view what, const std::string &id) {
  if (id.empty()) throw ValidationError(fmt::format("empty {}", what));
  if (Trim(id) != id) {
    throw ValidationError(fmt::format("{} '{}' has surrounding whitespace",
                                      what, id));
  }
  if (HasAnyOf(id, "();=\t\n\r")) {
    throw ValidationError(
        fmt::format("{} '{}' contains a reserved character", what, id));
  }
}

std::string Quote(const Utterance &u) { return "\"" + u.Text() + "\""; }

}  // namespace

SlotValue::SlotValue(std::string slot, std::string value)
    : slot_(std::move(slot)), value_(NormalizeWhitespace(value)) {
  CheckIdentifier("slot", slot_);
  if (value_.empty()) {
    throw ValidationError(fmt::format("empty value for slot '{}'", slot_));
  }
  if (HasAnyOf(value_, ";()")) {
    throw ValidationError(fmt::format(
        "value '{}' of slot '{}' contains a reserved character", value_,
        slot_));
  }
}

DialogueAct::DialogueAct(std::string intent, std::vector<SlotValue> slots)
    : intent_(std::move(intent)), slots_(std::move(slots)) {
  CheckIdentifier("intent", intent_);
  std::set<std::pair<std::string, std::string>> seen;
  for (const SlotValue &sv : slots_) {
    if (!seen.emplace(sv.slot(), sv.value()).second) {
      throw ValidationError(fmt::format("duplicate pair {} = {} in act {}",
                                        sv.slot(), sv.value(), intent_));
    }
  }
}

std::string CanonicalActKey(const DialogueAct &act) {
  std::vector<std::string> pairs;
  pairs.reserve(act.slots().size());
  for (const SlotValue &sv : act.slots()) {
    pairs.push_back(AsciiLower(sv.slot()) + "=" + AsciiLower(sv.value()));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return AsciiLower(act.intent()) + "(" + Join(pairs, ";") + ")";
}

std::vector<std::string> SlotSignature(const DialogueAct &act) {
  std::vector<std::string> sig;
  sig.reserve(act.slots().size());
  for (const SlotValue &sv : act.slots()) sig.push_back(sv.slot());
  std::sort(sig.begin(), sig.end());
  return sig;
}

Utterance::Utterance(std::string_view raw)
    : tokens_(SplitWhitespace(raw)), raw_(raw) {
  if (tokens_.empty()) throw ValidationError("utterance has no tokens");
}

Utterance Utterance::FromTokens(std::vector<std::string> tokens) {
  if (tokens.empty()) throw ValidationError("utterance has no tokens");
  for (const std::string &t : tokens) {
    if (t.empty()) throw ValidationError("empty token");
    for (char c : t) {
      if (IsSpace(c)) {
        throw ValidationError(fmt::format("token '{}' contains whitespace", t));
      }
    }
  }
  Utterance u;
  u.raw_ = Join(tokens, " ");
  u.tokens_ = std::move(tokens);
  return u;
}

std::string Utterance::Text() const { return Join(tokens_, " "); }

std::optional<TagParts> ParseTag(std::string_view tag) {
  if (tag == kOutsideTag) return TagParts{'O', ""};
  if (tag.size() < 3 || tag[1] != '-') return std::nullopt;
  if (tag[0] != 'B' && tag[0] != 'I') return std::nullopt;
  std::string slot(tag.substr(2));
  if (Trim(slot) != slot || HasAnyOf(slot, "();=\t\n\r")) return std::nullopt;
  return TagParts{tag[0], std::move(slot)};
}

std::vector<std::string> BioViolations(size_t num_tokens,
                                       const std::vector<std::string> &tags) {
  std::vector<std::string> out;
  if (tags.size() != num_tokens) {
    out.push_back(fmt::format("{} tags for {} tokens", tags.size(), num_tokens));
  }
  std::optional<TagParts> prev;
  for (size_t i = 0; i < tags.size(); ++i) {
    std::optional<TagParts> cur = ParseTag(tags[i]);
    if (!cur) {
      out.push_back(fmt::format("invalid tag '{}' at token {}", tags[i], i));
    } else if (cur->prefix == 'I' &&
               (!prev || prev->prefix == 'O' || prev->slot != cur->slot)) {
      out.push_back(fmt::format("I- without B-: '{}' at token {}", tags[i], i));
    }
    prev = std::move(cur);
  }
  return out;
}

std::vector<Chunk> ExtractChunks(const std::vector<std::string> &tags) {
  std::vector<Chunk> chunks;
  bool open = false;
  for (size_t i = 0; i < tags.size(); ++i) {
    std::optional<TagParts> cur = ParseTag(tags[i]);
    bool continues = open && cur && cur->prefix == 'I' &&
                     cur->slot == chunks.back().label;
    if (continues) {
      chunks.back().end = i + 1;
      continue;
    }
    open = false;
    if (cur && cur->prefix != 'O') {
      chunks.push_back(Chunk{cur->slot, i, i + 1});
      open = true;
    }
  }
  return chunks;
}

LabeledExample::LabeledExample(Utterance utterance, std::string intent,
                               std::vector<std::string> tags)
    : LabeledExample(UncheckedTag{}, std::move(utterance), std::move(intent),
                     std::move(tags)) {
  CheckIdentifier("intent", intent_);
  std::vector<std::string> problems =
      BioViolations(utterance_.size(), tags_);
  if (!problems.empty()) {
    throw ValidationError(fmt::format("{}: {}", Quote(utterance_),
                                      Join(problems, "; ")));
  }
}

LabeledExample::LabeledExample(UncheckedTag, Utterance utterance,
                               std::string intent,
                               std::vector<std::string> tags)
    : utterance_(std::move(utterance)),
      intent_(std::move(intent)),
      tags_(std::move(tags)) {}

LabeledExample LabeledExample::Unchecked(Utterance utterance,
                                         std::string intent,
                                         std::vector<std::string> tags) {
  return LabeledExample(UncheckedTag{}, std::move(utterance),
                        std::move(intent), std::move(tags));
}

Ontology::Ontology(std::set<std::string> intents, std::set<std::string> slots,
                   std::map<std::string, std::set<std::string>> known_values,
                   std::optional<std::vector<DialogueAct>> valid_acts)
    : intents_(std::move(intents)),
      slots_(std::move(slots)),
      known_values_(std::move(known_values)),
      valid_acts_(std::move(valid_acts)) {
  for (const auto &[slot, values] : known_values_) {
    if (!slots_.count(slot)) {
      throw ValidationError(
          fmt::format("known values given for undeclared slot '{}'", slot));
    }
  }
  if (valid_acts_) {
    for (const DialogueAct &act : *valid_acts_) {
      if (!intents_.count(act.intent())) {
        throw ValidationError(fmt::format(
            "valid act uses undeclared intent '{}'", act.intent()));
      }
      for (const SlotValue &sv : act.slots()) {
        if (!slots_.count(sv.slot())) {
          throw ValidationError(fmt::format(
              "valid act uses undeclared slot '{}'", sv.slot()));
        }
      }
    }
  }
}

std::vector<Violation> Validate(const Corpus &corpus,
                                const Ontology &ontology) {
  std::vector<Violation> out;
  auto error = [&](std::string msg) {
    out.push_back(Violation{Severity::kError, std::move(msg)});
  };
  auto info = [&](std::string msg) {
    out.push_back(Violation{Severity::kInfo, std::move(msg)});
  };

  for (const LabeledExample &ex : corpus.paired) {
    const std::string where = "paired example " + Quote(ex.utterance());
    if (!ontology.intents().count(ex.intent())) {
      error(fmt::format("{}: unknown intent '{}'", where, ex.intent()));
    }
    for (const std::string &p : BioViolations(ex.tokens().size(), ex.tags())) {
      error(fmt::format("{}: {}", where, p));
    }
    bool any_slot = false;
    std::set<std::string> reported;
    for (const std::string &tag : ex.tags()) {
      std::optional<TagParts> parts = ParseTag(tag);
      if (!parts || parts->prefix == 'O') continue;
      any_slot = true;
      if (!ontology.slots().count(parts->slot) &&
          reported.insert(parts->slot).second) {
        error(fmt::format("{}: unknown slot '{}'", where, parts->slot));
      }
    }
    if (!any_slot) info(fmt::format("{}: no slots", where));
  }

  for (const DialogueAct &act : corpus.acts_only) {
    const std::string where = "act " + CanonicalActKey(act);
    if (!ontology.intents().count(act.intent())) {
      error(fmt::format("{}: unknown intent '{}'", where, act.intent()));
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const SlotValue &sv : act.slots()) {
      if (!ontology.slots().count(sv.slot())) {
        error(fmt::format("{}: unknown slot '{}'", where, sv.slot()));
      }
      if (!seen.emplace(sv.slot(), sv.value()).second) {
        error(fmt::format("{}: duplicate pair {} = {}", where, sv.slot(),
                          sv.value()));
      }
    }
    if (act.slots().empty()) info(fmt::format("{}: no slots", where));
  }

  std::sort(out.begin(), out.end());
  return out;
}

size_t CountErrors(const std::vector<Violation> &violations) {
  return static_cast<size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [](const Violation &v) {
                      return v.severity == Severity::kError;
                    }));
}

Ontology OntologyFromCorpus(const Corpus &corpus) {
  std::set<std::string> intents;
  std::set<std::string> slots;
  std::map<std::string, std::set<std::string>> values;
  for (const LabeledExample &ex : corpus.paired) {
    intents.insert(ex.intent());
    for (const Chunk &c : ExtractChunks(ex.tags())) {
      slots.insert(c.label);
      std::vector<std::string> span(ex.tokens().begin() + c.start,
                                    ex.tokens().begin() + c.end);
      values[c.label].insert(Join(span, " "));
    }
  }
  for (const DialogueAct &act : corpus.acts_only) {
    intents.insert(act.intent());
    for (const SlotValue &sv : act.slots()) {
      slots.insert(sv.slot());
      values[sv.slot()].insert(sv.value());
    }
  }
  return Ontology(std::move(intents), std::move(slots), std::move(values));
}

Ontology MergeOntologies(const Ontology &a, const Ontology &b) {
  std::set<std::string> intents = a.intents();
  intents.insert(b.intents().begin(), b.intents().end());
  std::set<std::string> slots = a.slots();
  slots.insert(b.slots().begin(), b.slots().end());
  std::map<std::string, std::set<std::string>> values = a.known_values();
  for (const auto &[slot, vs] : b.known_values()) {
    values[slot].insert(vs.begin(), vs.end());
  }
  std::optional<std::vector<DialogueAct>> acts;
  if (a.valid_acts() || b.valid_acts()) {
    acts.emplace();
    if (a.valid_acts()) {
      acts->insert(acts->end(), a.valid_acts()->begin(), a.valid_acts()->end());
    }
    if (b.valid_acts()) {
      acts->insert(acts->end(), b.valid_acts()->begin(), b.valid_acts()->end());
    }
  }
  return Ontology(std::move(intents), std::move(slots), std::move(values),
                  std::move(acts));
}

}  // namespace sluaug
