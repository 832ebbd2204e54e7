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


#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell, capturing standard output.
Outcome Augment(const std::string &args) {
  const std::string cmd = std::string(SLUAUG_AUGMENT) + " " + args + " 2>/dev/null";
  Outcome result;
  FILE *pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  const int status = ::pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

const std::string kToy = SLUAUG_SOURCE_DIR "/data/toy/";
const std::string kStub = SLUAUG_STUB_BACKEND;

fs::path Scratch(const std::string &name) {
  fs::path dir = fs::temp_directory_path() /
                 ("sluaug_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(CliTest, UsageErrorsAreConfigErrors) {
  EXPECT_EQ(Augment("").code, 1);
  EXPECT_EQ(Augment("frobnicate").code, 1);
  EXPECT_EQ(Augment("run --config /nonexistent.cfg").code, 1);
  EXPECT_EQ(Augment("run --config " + kToy + "toy.cfg --scenario bogus").code, 1);
  EXPECT_EQ(Augment("--help").code, 0);
}

TEST(CliTest, PrintConfigAppliesOverrides) {
  Outcome r = Augment("run --config " + kToy +
                      "toy.cfg --scenario no_da --seed 4 --backend fixture:f.tsv "
                      "--print-config");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("scenarios = no_da\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("seeds = 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("backend = fixture:f.tsv\n"), std::string::npos);
  EXPECT_EQ(Augment("run --print-config").code, 0);
}

TEST(CliTest, ValidateReportsDataErrors) {
  const fs::path dir = Scratch("validate");
  std::ofstream(dir / "bad.txt") << "# intent = Play\nplay\tO\nadele\tI-artist\n";
  std::ofstream(dir / "broken.txt") << "# intent = Play\nplay O\n";
  EXPECT_EQ(Augment("validate " + kToy + "train.txt --ontology " + kToy + "ontology.tsv").code,
            0);
  Outcome bad = Augment("validate " + (dir / "bad.txt").string());
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(Augment("validate " + (dir / "broken.txt").string()).code, 2);
  EXPECT_EQ(Augment("validate " + (dir / "missing.txt").string()).code, 2);
  fs::remove_all(dir);
}

TEST(CliTest, EvalAndStats) {
  Outcome r = Augment("eval --gold " + kToy + "dev.txt --pred " + kToy + "dev.txt --tsv");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("slot_f1\t1.000000\n"), std::string::npos) << r.out;
  EXPECT_EQ(Augment("eval --gold " + kToy + "dev.txt --pred " + kToy + "test.txt").code, 2);
  Outcome s = Augment("stats " + kToy + "train.txt");
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("num_paired\t40\n"), std::string::npos);
}

TEST(CliTest, RunWritesOutputsAndMapsBackendFailures) {
  const fs::path out = Scratch("run");
  Outcome ok = Augment("run --config " + kToy + "toy.cfg --scenario no_da --scenario "
                       "paired_only --seed 1 --out " + out.string());
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(fs::exists(out / "summary.txt"));
  EXPECT_TRUE(fs::exists(out / "paired_only" / "seed-1" / "augmented.txt"));
  EXPECT_TRUE(fs::exists(out / "paired_only" / "seed-1" / "stages.tsv"));

  Outcome partial = Augment("run --config " + kToy +
                            "toy.cfg --scenario paired_only --seed 1 --backend 'exec:" +
                            kStub + " --mode partial' --out " + (out / "p").string());
  EXPECT_EQ(partial.code, 3);
  EXPECT_TRUE(fs::exists(out / "p" / "paired_only" / "seed-1" / "error.txt"));
  fs::remove_all(out);
}

TEST(CliTest, ConformanceSubcommand) {
  const std::string suites = SLUAUG_SOURCE_DIR "/tests/conformance/";
  Outcome ok = Augment("conformance " + suites + "session.txt " + suites +
                       "echo.txt --backend 'exec:" + kStub + " --mode echo'");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out.rfind("PASS ", 0), 0u) << ok.out;
  Outcome bad = Augment("conformance " + suites + "session.txt --backend 'exec:" + kStub +
                        " --mode partial'");
  EXPECT_EQ(bad.code, 3);
  EXPECT_EQ(bad.out.rfind("FAIL ", 0), 0u);
  EXPECT_EQ(Augment("conformance " + suites + "session.txt --backend builtin").code, 1);
}

}  // namespace
