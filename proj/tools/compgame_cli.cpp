// Copyright 2026 The Compgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: one subcommand per experiment. Flags map onto the
// keys of compgame::ExperimentConfig; a --config JSON file overrides them.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compgame/errors.hpp"
#include "compgame/experiment.hpp"

namespace {

struct FlagSpec {
  std::string flag;
  std::string key;
  std::string help;
};

const std::map<std::string, std::vector<FlagSpec>>& flag_table() {
  static const std::map<std::string, std::vector<FlagSpec>> table = {
      {"verify-pennies",
       {{"--T", "T", "step budget T (> 2)"},
        {"--epsilon", "epsilon", "epsilon as p/q"},
        {"--sample-cost", "sample_cost", "steps per random bit"},
        {"--emit-cost", "emit_cost", "steps per hardwired bit"},
        {"--print-cost", "print_cost", "steps per printed character"},
        {"--halt-cost", "halt_cost", "steps charged at halt"},
        {"--biases", "biases", "comma separated bias grid"}}},
      {"arms-race",
       {{"--n", "n", "game index n"},
        {"--owf-kind", "owf_kind", "hash_truncate or random_table"},
        {"--seed", "seed", "seed"},
        {"--ladder", "ladder", "comma separated budget ladder"},
        {"--max-rounds", "max_rounds", "round limit"},
        {"--samples", "samples", "Monte Carlo samples per estimate"},
        {"--max-key-len", "max_key_len", "drop puzzle entries with longer keys"},
        {"--b", "b", "output length exponent"}}},
      {"owf-security",
       {{"--k", "k", "key length"},
        {"--budgets", "budgets", "comma separated inverter budgets"},
        {"--trials", "trials", "trials per budget"},
        {"--seed", "seed", "trial seed"},
        {"--table-seed", "table_seed", "random_table seed"}}},
      {"single-puzzle-ne",
       {{"--n", "n", "secret length"},
        {"--owf-kind", "owf_kind", "hash_truncate or random_table"},
        {"--seed", "seed", "seed"},
        {"--family", "family", "comma separated inverter budgets"},
        {"--samples", "samples", "Monte Carlo samples per estimate"},
        {"--epsilon", "epsilon", "tolerated gain as p/q"}}},
      {"expected-utility",
       {{"--game", "game", "game JSON file"}, {"--profile", "profile", "profile JSON file"}}},
  };
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw compgame::ArgumentError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computational games: equilibrium verification and arms-race experiments"};
  app.require_subcommand(1);

  struct Bound {
    CLI::App* sub;
    std::map<std::string, std::string> values;
    std::string config;
    std::string format;
    std::string out;
    bool check = false;
    bool check_exists = false;
  };
  std::map<std::string, Bound> bound;
  for (const auto& [name, flags] : flag_table()) {
    Bound& b = bound[name];
    b.sub = app.add_subcommand(name);
    for (const auto& f : flags) b.sub->add_option(f.flag, b.values[f.key], f.help);
    b.sub->add_option("--config", b.config, "JSON config file; its keys override flags");
    b.sub->add_option("--format", b.format, "json or csv");
    b.sub->add_option("--out", b.out, "output file");
    if (name != "expected-utility" && name != "owf-security") {
      b.sub->add_flag("--check", b.check, "exit 2 when the expected verdict fails");
    }
    if (name == "verify-pennies") {
      b.sub->add_flag("--check-exists", b.check_exists, "exit 2 when no equilibrium exists");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? compgame::kExitOk : compgame::kExitInvalidConfig;
  }

  for (auto& [name, b] : bound) {
    if (!b.sub->parsed()) continue;
    compgame::ExperimentConfig flags;
    flags.subcommand = name;
    for (const auto& f : flag_table().at(name)) {
      if (b.sub->count(f.flag) > 0) flags.params[f.key] = b.values[f.key];
    }
    if (b.sub->count("--format") > 0) flags.params["format"] = b.format;
    if (b.sub->count("--out") > 0) flags.params["out"] = b.out;
    if (b.check) flags.params["check"] = "true";
    if (b.check_exists) flags.params["check_exists"] = "true";

    compgame::ExperimentConfig config = flags;
    if (!b.config.empty()) {
      try {
        const auto file = compgame::config_from_json_text(read_file(b.config));
        if (!file.subcommand.empty() && file.subcommand != name) {
          throw compgame::ArgumentError("config is for '" + file.subcommand +
                                        "', not '" + name + "'");
        }
        config = compgame::merge_configs(flags, file);
      } catch (const compgame::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return compgame::kExitInvalidConfig;
      }
    }
    return compgame::run_experiment(config, std::cout, std::cerr);
  }
  return compgame::kExitInvalidConfig;
}
