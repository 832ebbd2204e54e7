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


#include "tools/toy_domain.h"

#include <algorithm>
#include <set>
#include <utility>

#include "sluaug/text.h"

namespace toy {

using sluaug::DialogueAct;
using sluaug::LabeledExample;
using sluaug::Rng;
using sluaug::SlotValue;

namespace {

struct IntentGrammar {
  std::string name;
  std::vector<std::string> heads;
  // Per slot, phrase frames where "{}" marks the value.
  std::map<std::string, std::vector<std::string>> frames;
  size_t min_slots;
  size_t max_slots;
};

const std::vector<IntentGrammar> &Grammar() {
  static const auto *grammar = new std::vector<IntentGrammar>{
      {"BookRestaurant",
       {"book a table", "i need a reservation", "reserve a spot",
        "can you book a restaurant", "find me a table", "get us a table",
        "make a reservation", "i would like to eat out",
        "please book dinner", "we want a table"},
       {{"cuisine",
         {"at a {} restaurant", "serving {} food", "with {} dishes",
          "that does {}", "at some {} place"}},
        {"party_size",
         {"for {} people", "for a party of {}", "for {} of us", "for {} guests",
          "with {} seats"}},
        {"city", {"in {}", "near {}", "around {}", "somewhere in {}"}},
        {"date", {"{}", "on {}", "for {}", "sometime {}"}}},
       1,
       4},
      {"GetWeather",
       {"what is the weather", "will it rain", "how cold will it be",
        "show me the forecast", "is it going to be sunny", "weather report",
        "tell me the weather", "do i need an umbrella", "how hot is it",
        "give me the forecast"},
       {{"city", {"in {}", "for {}", "at {}", "over {}"}},
        {"date", {"{}", "on {}", "for {}", "by {}"}}},
       0,
       2},
      {"PlayMusic",
       {"play", "put on", "i want to hear", "queue up", "start playing",
        "can you play", "let me hear", "blast", "shuffle", "throw on"},
       {{"artist",
         {"something by {}", "{}", "songs from {}", "the latest from {}",
          "music by {}", "a track by {}"}},
        {"genre",
         {"some {}", "{} music", "a {} playlist", "{} tracks", "a bit of {}"}}},
       1,
       2},
  };
  return *grammar;
}

const std::map<std::string, std::vector<std::string>> &Values() {
  static const auto *values = new std::map<std::string, std::vector<std::string>>{
      {"cuisine",
       {"italian", "thai", "mexican", "sushi", "indian", "french", "greek",
        "dim sum", "middle eastern", "barbecue"}},
      {"party_size",
       {"2", "3", "4", "6", "8", "two", "three", "four", "six", "ten"}},
      {"city",
       {"boston", "chicago", "denver", "seattle", "new york", "san diego",
        "los angeles", "miami", "salt lake city", "las vegas"}},
      {"date",
       {"today", "tomorrow", "tonight", "this weekend", "next friday",
        "monday", "saturday", "next week", "tomorrow night",
        "christmas eve"}},
      {"artist",
       {"adele", "drake", "miles davis", "taylor swift", "metallica",
        "the beatles", "pink floyd", "coldplay", "daft punk", "norah jones"}},
      {"genre",
       {"jazz", "rock", "pop", "hip hop", "classical", "blues", "country",
        "reggae", "techno", "soul"}},
  };
  return *values;
}

const std::vector<std::string> kTails = {"", "", "", "please", "thanks",
                                         "right away", "for me"};

}  // namespace

ToyDomain::ToyDomain(uint64_t seed, double seen_share) : rng_(seed) {
  for (const auto &[slot, values] : Values()) {
    std::vector<std::string> shuffled = values;
    rng_.Shuffle(shuffled);
    const size_t n_seen = static_cast<size_t>(
        seen_share * static_cast<double>(values.size()) + 0.5);
    seen_[slot].assign(shuffled.begin(), shuffled.begin() + n_seen);
    all_[slot] = values;
  }
}

DialogueAct ToyDomain::SampleAct(bool seen_only) {
  const IntentGrammar &g = Grammar()[rng_.Uniform(Grammar().size())];
  std::vector<std::string> slots;
  for (const auto &[slot, frames] : g.frames) slots.push_back(slot);
  rng_.Shuffle(slots);
  const size_t n =
      g.min_slots + rng_.Uniform(g.max_slots - g.min_slots + 1);
  slots.resize(n);
  std::vector<SlotValue> pairs;
  for (const std::string &slot : slots) {
    const auto &pool = seen_only ? seen_.at(slot) : all_.at(slot);
    pairs.emplace_back(slot, pool[rng_.Uniform(pool.size())]);
  }
  return DialogueAct(g.name, std::move(pairs));
}

LabeledExample ToyDomain::Render(const DialogueAct &act) {
  const IntentGrammar *g = nullptr;
  for (const IntentGrammar &candidate : Grammar()) {
    if (candidate.name == act.intent()) g = &candidate;
  }
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  auto emit_plain = [&](const std::string &phrase) {
    for (std::string &t : sluaug::SplitWhitespace(phrase)) {
      tokens.push_back(std::move(t));
      tags.emplace_back("O");
    }
  };
  emit_plain(g->heads[rng_.Uniform(g->heads.size())]);
  for (const SlotValue &sv : act.slots()) {
    const auto &frames = g->frames.at(sv.slot());
    for (const std::string &piece :
         sluaug::SplitWhitespace(frames[rng_.Uniform(frames.size())])) {
      if (piece != "{}") {
        tokens.push_back(piece);
        tags.emplace_back("O");
        continue;
      }
      bool first = true;
      for (std::string &t : sluaug::SplitWhitespace(sv.value())) {
        tokens.push_back(std::move(t));
        tags.push_back((first ? "B-" : "I-") + sv.slot());
        first = false;
      }
    }
  }
  emit_plain(kTails[rng_.Uniform(kTails.size())]);
  return LabeledExample(sluaug::Utterance::FromTokens(std::move(tokens)),
                        act.intent(), std::move(tags));
}

std::vector<LabeledExample> ToyDomain::Examples(size_t n,
                                              bool seen_only) {
  std::vector<LabeledExample> out;
  while (out.size() < n) out.push_back(Render(SampleAct(seen_only)));
  return out;
}

std::vector<LabeledExample> ToyDomain::CoveringExamples(size_t n) {
  std::map<std::string, std::vector<std::string>> missing = seen_;
  auto has_missing = [&](const std::string &slot) {
    return !missing.at(slot).empty();
  };
  std::vector<LabeledExample> out;
  while (out.size() < n) {
    std::vector<const IntentGrammar *> useful;
    for (const IntentGrammar &g : Grammar()) {
      for (const auto &[slot, frames] : g.frames) {
        if (has_missing(slot)) {
          useful.push_back(&g);
          break;
        }
      }
    }
    if (useful.empty()) {
      out.push_back(Render(SampleAct(/*seen_only=*/true)));
      continue;
    }
    const IntentGrammar &g = *useful[rng_.Uniform(useful.size())];
    // Slots still owing a value go first.
    std::vector<std::string> owing;
    std::vector<std::string> rest;
    for (const auto &[slot, frames] : g.frames) {
      (has_missing(slot) ? owing : rest).push_back(slot);
    }
    rng_.Shuffle(owing);
    rng_.Shuffle(rest);
    const size_t n_slots = std::max<size_t>(
        1, g.min_slots + rng_.Uniform(g.max_slots - g.min_slots + 1));
    std::vector<std::string> slots = owing;
    slots.insert(slots.end(), rest.begin(), rest.end());
    slots.resize(std::min(n_slots, slots.size()));
    rng_.Shuffle(slots);
    std::vector<SlotValue> pairs;
    for (const std::string &slot : slots) {
      std::vector<std::string> &pool = missing.at(slot);
      if (!pool.empty()) {
        const size_t i = rng_.Uniform(pool.size());
        pairs.emplace_back(slot, pool[i]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        const auto &seen = seen_.at(slot);
        pairs.emplace_back(slot, seen[rng_.Uniform(seen.size())]);
      }
    }
    out.push_back(Render(DialogueAct(g.name, std::move(pairs))));
  }
  rng_.Shuffle(out);
  return out;
}

std::vector<DialogueAct> ToyDomain::UniqueActs(size_t n) {
  std::set<std::string> keys;
  std::vector<DialogueAct> out;
  while (out.size() < n) {
    DialogueAct act = SampleAct(false);
    if (keys.insert(sluaug::CanonicalActKey(act)).second) {
      out.push_back(std::move(act));
    }
  }
  return out;
}

sluaug::Ontology ToyDomain::MakeOntology(
  std::vector<DialogueAct> valid_acts) const {
  std::set<std::string> intents;
  std::set<std::string> slots;
  std::map<std::string, std::set<std::string>> known;
  for (const IntentGrammar &g : Grammar()) intents.insert(g.name);
  for (const auto &[slot, values] : all_) {
    slots.insert(slot);
    known[slot].insert(values.begin(), values.end());
  }
  return sluaug::Ontology(std::move(intents), std::move(slots),
                          std::move(known), std::move(valid_acts));
}

}  // namespace toy
