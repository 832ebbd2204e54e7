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

#ifndef SLUAUG_TEXT_H_
#define SLUAUG_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace sluaug {

// Small ASCII-oriented string helpers. Bytes >= 0x80 pass through untouched,
// so UTF-8 text survives every function here.

bool IsSpace(char c);

std::string_view Trim(std::string_view s);

// Splits on runs of ASCII whitespace; never yields empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Trim plus collapse of internal whitespace runs to a single space.
std::string NormalizeWhitespace(std::string_view s);

std::string AsciiLower(std::string_view s);

}  // namespace sluaug

#endif  // SLUAUG_TEXT_H_
