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


#ifndef SLUAUG_CONFORMANCE_H_
#define SLUAUG_CONFORMANCE_H_

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sluaug/protocol.h"

namespace sluaug {

// Scripted protocol sessions used to check a backend endpoint frame by frame.
// One step per line:
//
//   > text        send text plus '\n'
//   < text        the next line must equal text
//   <? comment    the next line may be anything
//   <* prefix     the next line must start with prefix
//   ! samples N   outputs per request the endpoint is configured for
//
// Blank lines and lines starting with '#' are ignored. Responses are only
// read at '<' steps, so a script can pipeline several requests.
struct ConformanceStep {
  enum class Kind { kSend, kExpect, kExpectAny, kExpectPrefix };

  Kind kind = Kind::kSend;
  std::string text;
  size_t line_no = 0;
};

struct ConformanceScript {
  size_t samples = 3;
  std::vector<ConformanceStep> steps;
};

// Throws FormatError.
ConformanceScript ParseConformanceScript(std::string_view text);
ConformanceScript LoadConformanceScript(const std::filesystem::path &path);

struct ConformanceResult {
  bool passed = true;
  // Script line and what went wrong, for the first failing step.
  std::string failure;
};

// Runs the script over an open channel. Each expectation gets `timeout` to
// arrive. After the last step nothing further is read.
ConformanceResult RunConformance(const ConformanceScript &script,
                                 LineChannel &channel,
                                 std::chrono::milliseconds timeout);

// Opens the endpoint with samples_per_input taken from the script and runs
// it. Throws ConfigError for builtin or fixture specs.
ConformanceResult RunConformance(const ConformanceScript &script,
                                 const EndpointSpec &spec,
                                 std::chrono::milliseconds timeout);

}  // namespace sluaug

#endif  // SLUAUG_CONFORMANCE_H_
