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


// Minimal protocol endpoint on standard input/output, used to exercise the
// external backend path.
//
//   echo      every request answered with the payload, repeated
//   partial   one output fewer than requested
//   error     an ERR frame for every request
//   fixture   outputs looked up in a recorded table (--fixture FILE)
//
// The repeat count comes from --samples, else SLUAUG_SAMPLES_PER_INPUT,
// else 3.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sluaug/protocol.h"

int main(int argc, char **argv) {
  CLI::App app{"Stub generator backend."};
  std::string mode = "echo";
  std::string fixture_path;
  std::optional<size_t> samples;
  app.add_option("--mode", mode, "echo | partial | error | fixture")
      ->check(CLI::IsMember({"echo", "partial", "error", "fixture"}));
  app.add_option("--fixture", fixture_path, "Recorded table for fixture mode");
  app.add_option("--samples", samples, "Outputs per request");
  CLI11_PARSE(app, argc, argv);

  size_t k = 3;
  if (samples) {
    k = *samples;
  } else if (const char *env = std::getenv("SLUAUG_SAMPLES_PER_INPUT")) {
    k = std::stoul(env);
  }

  std::optional<sluaug::FixtureBackend> fixture;
  if (mode == "fixture") {
    if (fixture_path.empty()) {
      std::cerr << "stub_backend: fixture mode needs --fixture\n";
      return 1;
    }
    fixture = sluaug::FixtureBackend::Load(fixture_path);
  }

  sluaug::ProtocolServer server(
      [&](sluaug::Direction d,
          const std::string &payload) -> std::vector<std::string> {
        if (mode == "error") throw std::runtime_error("stub refuses");
        if (mode == "fixture") {
          return fixture->Request(d, payload, sluaug::Clock::time_point::max());
        }
        const size_t n = mode == "partial" && k > 0 ? k - 1 : k;
        return std::vector<std::string>(n, payload);
      });
  server.Serve(std::cin, std::cout);
  return 0;
}
