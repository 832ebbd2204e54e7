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


#ifndef SLUAUG_TOOLS_TOY_DOMAIN_H_
#define SLUAUG_TOOLS_TOY_DOMAIN_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sluaug/dialogue.h"
#include "sluaug/random.h"

namespace toy {

// A three-intent domain rendered from a fixed phrase grammar. A seeded share
// of each slot's values is marked "seen"; the rest only appear when sampling
// from the full inventory.
class ToyDomain {
 public:
  ToyDomain(uint64_t seed, double seen_share);

  sluaug::DialogueAct SampleAct(bool seen_only);
  // Renders the act in slot order with gold tags.
  sluaug::LabeledExample Render(const sluaug::DialogueAct &act);
  std::vector<sluaug::LabeledExample> Examples(size_t n, bool seen_only);
  // n seen-only examples that together mention every seen value, when n is
  // large enough for that; shuffled.
  std::vector<sluaug::LabeledExample> CoveringExamples(size_t n);
  // n distinct acts over the full inventory.
  std::vector<sluaug::DialogueAct> UniqueActs(size_t n);
  sluaug::Ontology MakeOntology(
      std::vector<sluaug::DialogueAct> valid_acts) const;

  const std::map<std::string, std::vector<std::string>> &seen_values() const {
    return seen_;
  }
  const std::map<std::string, std::vector<std::string>> &all_values() const {
    return all_;
  }

 private:
  sluaug::Rng rng_;
  std::map<std::string, std::vector<std::string>> seen_;
  std::map<std::string, std::vector<std::string>> all_;
};

}  // namespace toy

#endif  // SLUAUG_TOOLS_TOY_DOMAIN_H_
