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


#include "sluaug/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sluaug/errors.h"
#include "sluaug/text.h"

namespace sluaug {
namespace {

constexpr std::pair<Scenario, std::string_view> kScenarioNames[] = {
    {Scenario::kNoDa, "no_da"},
    {Scenario::kPairedOnly, "paired_only"},
    {Scenario::kRichInOntology, "rich_in_ontology"},
    {Scenario::kRichInUtterance, "rich_in_utterance"},
};

template <typename T>
T ParseNumber(const std::string &key, const std::string &text) {
  T out{};
  const char *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(fmt::format("{}: bad number '{}'", key, text));
  }
  return out;
}

bool ParseBool(const std::string &key, const std::string &text) {
  const std::string v = AsciiLower(text);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(fmt::format("{}: bad boolean '{}'", key, text));
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

using Setter = std::function<void(PipelineConfig &, const std::string &key,
                                  const std::string &value,
                                  const std::filesystem::path &base)>;

Setter PathSetter(std::filesystem::path DataPaths::*field) {
  return [field](PipelineConfig &cfg, const std::string &,
                 const std::string &value, const std::filesystem::path &base) {
    if (value.empty()) {
      cfg.paths.*field = std::filesystem::path();
      return;
    }
    std::filesystem::path p(value);
    cfg.paths.*field = p.is_absolute() ? p : (base / p).lexically_normal();
  };
}

template <typename Owner, typename T>
Setter NumberSetter(Owner PipelineConfig::*owner, T Owner::*field) {
  return [owner, field](PipelineConfig &cfg, const std::string &key,
                        const std::string &value,
                        const std::filesystem::path &) {
    cfg.*owner.*field = ParseNumber<T>(key, value);
  };
}

template <typename T>
Setter TopSetter(T PipelineConfig::*field) {
  return [field](PipelineConfig &cfg, const std::string &key,
                 const std::string &value, const std::filesystem::path &) {
    cfg.*field = ParseNumber<T>(key, value);
  };
}

const std::map<std::string, Setter> &Setters() {
  static const auto *setters = new std::map<std::string, Setter>{
      {"data.train", PathSetter(&DataPaths::train)},
      {"data.dev", PathSetter(&DataPaths::dev)},
      {"data.test", PathSetter(&DataPaths::test)},
      {"data.ontology", PathSetter(&DataPaths::ontology)},
      {"data.unlabeled", PathSetter(&DataPaths::unlabeled)},
      {"run.scenarios",
       [](PipelineConfig &cfg, const std::string &key, const std::string &v,
          const std::filesystem::path &) {
         cfg.scenarios.clear();
         for (const std::string &name : SplitList(v)) {
           std::optional<Scenario> s = ParseScenario(name);
           if (!s) {
             throw ConfigError(fmt::format("{}: unknown scenario '{}'", key,
                                           name));
           }
           cfg.scenarios.push_back(*s);
         }
       }},
      {"run.seeds",
       [](PipelineConfig &cfg, const std::string &key, const std::string &v,
          const std::filesystem::path &) {
         cfg.seeds.clear();
         for (const std::string &item : SplitList(v)) {
           cfg.seeds.push_back(ParseNumber<uint64_t>(key, item));
         }
       }},
      {"run.backend",
       [](PipelineConfig &cfg, const std::string &, const std::string &v,
          const std::filesystem::path &) {
         cfg.backend = EndpointSpec::Parse(v);
       }},
      {"run.epochs", TopSetter(&PipelineConfig::epochs)},
      {"run.acts_to_use", TopSetter(&PipelineConfig::acts_to_use)},
      {"run.utterances_to_use", TopSetter(&PipelineConfig::utterances_to_use)},
      {"run.synthetic_target", TopSetter(&PipelineConfig::synthetic_target)},
      {"run.timeout_ms",
       [](PipelineConfig &cfg, const std::string &key, const std::string &v,
          const std::filesystem::path &) {
         cfg.timeout = std::chrono::milliseconds(ParseNumber<uint64_t>(key, v));
       }},
      {"perturb.replace_weight",
       NumberSetter(&PipelineConfig::perturb, &PerturbConfig::replace_weight)},
      {"perturb.insert_weight",
       NumberSetter(&PipelineConfig::perturb, &PerturbConfig::insert_weight)},
      {"perturb.delete_weight",
       NumberSetter(&PipelineConfig::perturb, &PerturbConfig::delete_weight)},
      {"perturb.min_slots",
       NumberSetter(&PipelineConfig::perturb, &PerturbConfig::min_slots)},
      {"perturb.max_slots",
       NumberSetter(&PipelineConfig::perturb, &PerturbConfig::max_slots)},
      {"perturb.target_count",
       NumberSetter(&PipelineConfig::perturb, &PerturbConfig::target_count)},
      {"perturb.max_attempts",
       NumberSetter(&PipelineConfig::perturb, &PerturbConfig::max_attempts)},
      {"decoding.top_p",
       NumberSetter(&PipelineConfig::decoding, &DecodingParams::top_p)},
      {"decoding.temperature",
       NumberSetter(&PipelineConfig::decoding, &DecodingParams::temperature)},
      {"decoding.samples_per_input",
       NumberSetter(&PipelineConfig::decoding,
                    &DecodingParams::samples_per_input)},
      {"match.case_insensitive",
       [](PipelineConfig &cfg, const std::string &key, const std::string &v,
          const std::filesystem::path &) {
         cfg.match.case_insensitive = ParseBool(key, v);
       }},
      {"match.punctuation_stripping",
       [](PipelineConfig &cfg, const std::string &key, const std::string &v,
          const std::filesystem::path &) {
         cfg.match.punctuation_stripping = ParseBool(key, v);
       }},
      {"match.min_margin", TopSetter(&PipelineConfig::min_margin)},
  };
  return *setters;
}

}  // namespace

std::string_view ScenarioName(Scenario s) {
  for (const auto &[value, name] : kScenarioNames) {
    if (value == s) return name;
  }
  return "?";
}

std::optional<Scenario> ParseScenario(std::string_view name) {
  for (const auto &[value, n] : kScenarioNames) {
    if (n == name) return value;
  }
  return std::nullopt;
}

void PipelineConfig::Check() const {
  perturb.Check();
  decoding.Check();
  if (scenarios.empty()) throw ConfigError("no scenarios selected");
  if (seeds.empty()) throw ConfigError("no seeds given");
  if (epochs == 0) throw ConfigError("epochs must be positive");
  if (paths.train.empty()) throw ConfigError("data.train is required");
  if (paths.test.empty()) throw ConfigError("data.test is required");
  for (Scenario s : scenarios) {
    if (s == Scenario::kRichInOntology && paths.ontology.empty()) {
      throw ConfigError("rich_in_ontology needs data.ontology");
    }
    if (s == Scenario::kRichInUtterance && paths.unlabeled.empty()) {
      throw ConfigError("rich_in_utterance needs data.unlabeled");
    }
  }
}

PipelineConfig ParseConfig(std::string_view text,
                           const std::filesystem::path &base_dir) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
  }
  PipelineConfig cfg;
  for (const auto &[section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(fmt::format("key '{}' outside any section", section));
    }
    for (const auto &[name, leaf] : body) {
      const std::string key = section + "." + name;
      auto it = Setters().find(key);
      if (it == Setters().end()) {
        throw ConfigError(fmt::format("unknown key '{}'", key));
      }
      it->second(cfg, key, std::string(Trim(leaf.data())), base_dir);
    }
  }
  return cfg;
}

PipelineConfig LoadConfig(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), path.parent_path());
}

std::string FormatConfig(const PipelineConfig &cfg) {
  std::vector<std::string_view> scenarios;
  for (Scenario s : cfg.scenarios) scenarios.push_back(ScenarioName(s));
  std::string out;
  auto line = [&out](std::string_view key, const auto &value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  out += "[data]\n";
  line("train", cfg.paths.train.string());
  line("dev", cfg.paths.dev.string());
  line("test", cfg.paths.test.string());
  line("ontology", cfg.paths.ontology.string());
  line("unlabeled", cfg.paths.unlabeled.string());
  out += "\n[run]\n";
  line("scenarios", fmt::format("{}", fmt::join(scenarios, ", ")));
  line("seeds", fmt::format("{}", fmt::join(cfg.seeds, ", ")));
  line("backend", cfg.backend.ToString());
  line("epochs", cfg.epochs);
  line("acts_to_use", cfg.acts_to_use);
  line("utterances_to_use", cfg.utterances_to_use);
  line("synthetic_target", cfg.synthetic_target);
  line("timeout_ms", cfg.timeout.count());
  out += "\n[perturb]\n";
  line("replace_weight", cfg.perturb.replace_weight);
  line("insert_weight", cfg.perturb.insert_weight);
  line("delete_weight", cfg.perturb.delete_weight);
  line("min_slots", cfg.perturb.min_slots);
  line("max_slots", cfg.perturb.max_slots);
  line("target_count", cfg.perturb.target_count);
  line("max_attempts", cfg.perturb.max_attempts);
  out += "\n[decoding]\n";
  line("top_p", cfg.decoding.top_p);
  line("temperature", cfg.decoding.temperature);
  line("samples_per_input", cfg.decoding.samples_per_input);
  out += "\n[match]\n";
  line("case_insensitive", cfg.match.case_insensitive);
  line("punctuation_stripping", cfg.match.punctuation_stripping);
  line("min_margin", cfg.min_margin);
  return out;
}

}  // namespace sluaug
