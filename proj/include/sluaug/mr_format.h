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

#ifndef SLUAUG_MR_FORMAT_H_
#define SLUAUG_MR_FORMAT_H_

#include <string>
#include <string_view>

#include "sluaug/dialogue.h"

namespace sluaug {

// Delimiters of the textual act form `Intent ( slot = value ; ... )`.
struct MrGrammarConfig {
  char pair_separator = ';';
  char kv_separator = '=';
  char open = '(';
  char close = ')';

  // Throws ConfigError unless the four delimiters are distinct,
  // non-alphanumeric, non-whitespace characters.
  void Check() const;
};

// Canonical form, single spaces around every delimiter:
//   RateBook ( best_rating = 6 ; rating_value = 3 )
//   Greet ( )
// Throws MalformedMr if a field contains one of the configured delimiters,
// which can only happen with a non-default grammar.
std::string SerializeDa(const DialogueAct &act,
                        const MrGrammarConfig &cfg = {});

// Accepts any whitespace around delimiters. A pair splits at the first
// key-value separator, so values may contain it. Throws MalformedMr.
DialogueAct ParseDa(std::string_view text, const MrGrammarConfig &cfg = {});

}  // namespace sluaug

#endif  // SLUAUG_MR_FORMAT_H_
