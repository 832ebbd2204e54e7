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


#include "sluaug/conformance.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "sluaug/errors.h"

namespace sluaug {
namespace {

std::string_view Rest(std::string_view line, size_t marker) {
  line.remove_prefix(marker);
  if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  return line;
}

}  // namespace

ConformanceScript ParseConformanceScript(std::string_view text) {
  ConformanceScript script;
  size_t line_no = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    ConformanceStep step;
    step.line_no = line_no;
    if (line.rfind("<?", 0) == 0) {
      step.kind = ConformanceStep::Kind::kExpectAny;
    } else if (line.rfind("<*", 0) == 0) {
      step.kind = ConformanceStep::Kind::kExpectPrefix;
      step.text = std::string(Rest(line, 2));
    } else if (line.front() == '<') {
      step.kind = ConformanceStep::Kind::kExpect;
      step.text = std::string(Rest(line, 1));
    } else if (line.front() == '>') {
      step.kind = ConformanceStep::Kind::kSend;
      step.text = std::string(Rest(line, 1));
    } else if (line.rfind("! samples ", 0) == 0) {
      std::string_view n = line.substr(10);
      size_t value = 0;
      auto [end, ec] = std::from_chars(n.data(), n.data() + n.size(), value);
      if (ec != std::errc() || end != n.data() + n.size() || value == 0) {
        throw FormatError(line_no, "bad samples directive");
      }
      script.samples = value;
      continue;
    } else {
      throw FormatError(line_no, "unknown step '" + std::string(line) + "'");
    }
    script.steps.push_back(std::move(step));
  }
  return script;
}

ConformanceScript LoadConformanceScript(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConformanceScript(text.str());
}

ConformanceResult RunConformance(const ConformanceScript &script,
                                 LineChannel &channel,
                                 std::chrono::milliseconds timeout) {
  ConformanceResult result;
  auto fail = [&](const ConformanceStep &step, const std::string &what) {
    result.passed = false;
    result.failure = fmt::format("line {}: {}", step.line_no, what);
    return result;
  };
  for (const ConformanceStep &step : script.steps) {
    if (step.kind == ConformanceStep::Kind::kSend) {
      try {
        channel.Write(step.text + "\n");
      } catch (const BackendError &e) {
        return fail(step, e.what());
      }
      continue;
    }
    std::optional<std::string> line;
    try {
      line = channel.ReadLine(Clock::now() + timeout);
    } catch (const BackendError &e) {
      return fail(step, e.what());
    }
    if (!line) return fail(step, "endpoint closed the stream");
    switch (step.kind) {
      case ConformanceStep::Kind::kExpect:
        if (*line != step.text) {
          return fail(step, fmt::format("expected \"{}\", got \"{}\"",
                                        step.text, *line));
        }
        break;
      case ConformanceStep::Kind::kExpectPrefix:
        if (line->rfind(step.text, 0) != 0) {
          return fail(step, fmt::format("expected a line starting \"{}\", got "
                                        "\"{}\"", step.text, *line));
        }
        break;
      case ConformanceStep::Kind::kExpectAny:
      case ConformanceStep::Kind::kSend:
        break;
    }
  }
  return result;
}

ConformanceResult RunConformance(const ConformanceScript &script,
                                 const EndpointSpec &spec,
                                 std::chrono::milliseconds timeout) {
  DecodingParams params;
  params.samples_per_input = script.samples;
  std::unique_ptr<LineChannel> channel = OpenChannel(spec, params);
  return RunConformance(script, *channel, timeout);
}

}  // namespace sluaug
