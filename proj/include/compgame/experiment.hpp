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

#ifndef COMPGAME_EXPERIMENT_HPP_
#define COMPGAME_EXPERIMENT_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace compgame {

// Exit codes of run_experiment.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 1;
inline constexpr int kExitCheckFailed = 2;

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "COMPGAME_OUT_DIR";

// One experiment run: a subcommand plus a flat key -> value map. Values are
// strings; rationals are "p/q", lists are comma separated, flags are
// "true"/"false".
struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
};

std::vector<std::string> experiment_subcommands();
// Accepted keys for a subcommand (without defaults applied).
std::vector<std::string> experiment_keys(std::string_view subcommand);

// Parses a JSON config file body: {"subcommand": ..., "<key>": value, ...}.
// Numbers and booleans are accepted and stringified.
ExperimentConfig config_from_json_text(std::string_view text);

// Keys in `overrides` replace those in `base`.
ExperimentConfig merge_configs(ExperimentConfig base, const ExperimentConfig& overrides);

// Runs the experiment and writes its artifact to params["out"] (or to
// $COMPGAME_OUT_DIR/<subcommand>.<format>, or to `out`). A short
// human-readable summary goes to `log`.
int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

}  // namespace compgame

#endif  // COMPGAME_EXPERIMENT_HPP_
