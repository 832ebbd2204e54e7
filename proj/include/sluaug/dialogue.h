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

#ifndef SLUAUG_DIALOGUE_H_
#define SLUAUG_DIALOGUE_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sluaug {

// One slot-value pair of a dialogue act. The value is stored
// whitespace-normalized with its original casing.
class SlotValue {
 public:
  // Throws ValidationError on an empty or delimiter-bearing slot or value.
  SlotValue(std::string slot, std::string value);

  const std::string &slot() const { return slot_; }
  const std::string &value() const { return value_; }

  auto operator<=>(const SlotValue &) const = default;

 private:
  std::string slot_;
  std::string value_;
};

// An intent plus an ordered list of slot-value pairs. Exact duplicate pairs
// are rejected; repeated slots with different values are allowed.
class DialogueAct {
 public:
  explicit DialogueAct(std::string intent, std::vector<SlotValue> slots = {});

  const std::string &intent() const { return intent_; }
  const std::vector<SlotValue> &slots() const { return slots_; }

  bool operator==(const DialogueAct &) const = default;

 private:
  std::string intent_;
  std::vector<SlotValue> slots_;
};

// Key for act identity that ignores pair order and casing. Two acts with the
// same key are the same combination for deduplication purposes.
std::string CanonicalActKey(const DialogueAct &act);

// Sorted slot-name multiset of an act, e.g. {"city", "date", "date"}.
std::vector<std::string> SlotSignature(const DialogueAct &act);

class Utterance {
 public:
  // Tokenizes on whitespace. Throws ValidationError if no tokens result.
  explicit Utterance(std::string_view raw);

  // Throws ValidationError on empty input or tokens holding whitespace.
  static Utterance FromTokens(std::vector<std::string> tokens);

  const std::vector<std::string> &tokens() const { return tokens_; }
  const std::string &raw() const { return raw_; }
  size_t size() const { return tokens_.size(); }

  // Tokens joined with single spaces.
  std::string Text() const;

  bool operator==(const Utterance &) const = default;

 private:
  Utterance() = default;

  std::vector<std::string> tokens_;
  std::string raw_;
};

inline constexpr std::string_view kOutsideTag = "O";

// A tag split into its prefix ('O', 'B' or 'I') and slot label. Returns
// nullopt if the string is not of the form O, B-<slot> or I-<slot>.
struct TagParts {
  char prefix;
  std::string slot;
};
std::optional<TagParts> ParseTag(std::string_view tag);

// Every BIO problem in a tag sequence, one description each. Empty when the
// sequence is well formed for the given token count.
std::vector<std::string> BioViolations(size_t num_tokens,
                                       const std::vector<std::string> &tags);

// A labeled span [start, end) of a tag sequence.
struct Chunk {
  std::string label;
  size_t start;
  size_t end;

  auto operator<=>(const Chunk &) const = default;
};

// Maximal B/I runs with a consistent label, left to right. An I- tag that
// does not continue a chunk of its label opens a new one (conlleval
// convention), so ill-formed predictions still yield chunks.
std::vector<Chunk> ExtractChunks(const std::vector<std::string> &tags);

class LabeledExample {
 public:
  // Throws ValidationError when tags are malformed or the wrong length.
  LabeledExample(Utterance utterance, std::string intent,
                 std::vector<std::string> tags);

  // Skips the BIO checks. Meant for staging external data that will be
  // passed through Validate() before use.
  static LabeledExample Unchecked(Utterance utterance, std::string intent,
                                  std::vector<std::string> tags);

  const Utterance &utterance() const { return utterance_; }
  const std::vector<std::string> &tokens() const { return utterance_.tokens(); }
  const std::string &intent() const { return intent_; }
  const std::vector<std::string> &tags() const { return tags_; }

  bool operator==(const LabeledExample &) const = default;

 private:
  struct UncheckedTag {};
  LabeledExample(UncheckedTag, Utterance utterance, std::string intent,
                 std::vector<std::string> tags);

  Utterance utterance_;
  std::string intent_;
  std::vector<std::string> tags_;
};

class Ontology {
 public:
  Ontology() = default;

  // Throws ValidationError when known values or valid acts mention slots or
  // intents missing from the inventories.
  Ontology(std::set<std::string> intents, std::set<std::string> slots,
           std::map<std::string, std::set<std::string>> known_values,
           std::optional<std::vector<DialogueAct>> valid_acts = std::nullopt);

  const std::set<std::string> &intents() const { return intents_; }
  const std::set<std::string> &slots() const { return slots_; }
  const std::map<std::string, std::set<std::string>> &known_values() const {
    return known_values_;
  }
  const std::optional<std::vector<DialogueAct>> &valid_acts() const {
    return valid_acts_;
  }

  bool empty() const { return intents_.empty() && slots_.empty(); }

 private:
  std::set<std::string> intents_;
  std::set<std::string> slots_;
  std::map<std::string, std::set<std::string>> known_values_;
  std::optional<std::vector<DialogueAct>> valid_acts_;
};

// The three data shapes a run can receive: labeled pairs, bare dialogue acts
// and bare utterances.
struct Corpus {
  std::vector<LabeledExample> paired;
  std::vector<DialogueAct> acts_only;
  std::vector<Utterance> utterances_only;

  bool operator==(const Corpus &) const = default;
};

enum class Severity { kError, kInfo };

struct Violation {
  Severity severity;
  std::string message;

  auto operator<=>(const Violation &) const = default;
};

// Checks corpus contents against the ontology. The result is sorted, so it
// does not depend on example order.
std::vector<Violation> Validate(const Corpus &corpus, const Ontology &ontology);

size_t CountErrors(const std::vector<Violation> &violations);

// Ontology holding exactly the intents, slots and values seen in a corpus.
Ontology OntologyFromCorpus(const Corpus &corpus);

// Union of two ontologies; valid acts are concatenated when either has them.
Ontology MergeOntologies(const Ontology &a, const Ontology &b);

}  // namespace sluaug

#endif  // SLUAUG_DIALOGUE_H_
