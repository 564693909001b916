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

#include "compgame/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "compgame/dynamics.hpp"
#include "compgame/errors.hpp"
#include "compgame/games.hpp"
#include "compgame/linalg.hpp"
#include "compgame/machine.hpp"
#include "compgame/owf.hpp"
#include "compgame/serialization.hpp"
#include "compgame/verifier.hpp"

namespace compgame {

namespace {

using nlohmann::json;

constexpr const char* kSecuritySchema = "compgame.owf-security/v1";
constexpr const char* kSinglePuzzleSchema = "compgame.single-puzzle/v1";
constexpr const char* kUtilitySchema = "compgame.expected-utility/v1";
constexpr const char* kPenniesCsvHeader =
    "a_index,a_label,b_index,b_label,is_ne,player,machine,gain\n";

const std::map<std::string, std::vector<std::string>>& key_table() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"verify-pennies",
       {"T", "epsilon", "sample_cost", "emit_cost", "print_cost", "halt_cost", "biases",
        "check", "check_exists", "format", "out"}},
      {"arms-race",
       {"n", "owf_kind", "seed", "ladder", "max_rounds", "samples", "max_key_len", "b",
        "check", "format", "out"}},
      {"owf-security", {"k", "budgets", "trials", "seed", "table_seed", "format", "out"}},
      {"single-puzzle-ne",
       {"n", "owf_kind", "seed", "family", "samples", "epsilon", "check", "format", "out"}},
      {"expected-utility", {"game", "profile", "format", "out"}},
  };
  return table;
}

std::string describe(const std::string& key) { return "'" + key + "'"; }

// Typed access to a config's parameters; keys were validated up front.
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& values) : values_(values) {}

  bool has(const std::string& key) const { return values_.contains(key); }

  std::string str(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  std::uint64_t uint(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_uint(key, it->second);
  }

  Rational rational(const std::string& key, const Rational& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      return Rational::parse(it->second);
    } catch (const Error& e) {
      throw ArgumentError("bad rational for " + describe(key) + ": " + e.what());
    }
  }

  bool flag(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return false;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ArgumentError("bad boolean for " + describe(key) + ": '" + it->second + "'");
  }

  std::vector<std::string> list(const std::string& key, const std::string& fallback) const {
    std::vector<std::string> out;
    std::stringstream ss(str(key, fallback));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (item.empty()) throw ArgumentError("empty item in list " + describe(key));
      out.push_back(item);
    }
    return out;
  }

  std::vector<std::uint64_t> uint_list(const std::string& key,
                                       const std::string& fallback) const {
    std::vector<std::uint64_t> out;
    for (const auto& s : list(key, fallback)) out.push_back(parse_uint(key, s));
    return out;
  }

  std::vector<Rational> rational_list(const std::string& key,
                                      const std::string& fallback) const {
    std::vector<Rational> out;
    for (const auto& s : list(key, fallback)) {
      try {
        out.push_back(Rational::parse(s));
      } catch (const Error& e) {
        throw ArgumentError("bad rational in " + describe(key) + ": " + e.what());
      }
    }
    return out;
  }

 private:
  static std::uint64_t parse_uint(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) {
      throw ArgumentError("bad non-negative integer for " + describe(key) + ": '" + text +
                          "'");
    }
    return v;
  }

  const std::map<std::string, std::string>& values_;
};

struct Artifact {
  std::string body;
  std::string format;
  int exit_code = kExitOk;
};

std::string format_of(const Params& p) {
  const std::string f = p.str("format", "json");
  if (f != "json" && f != "csv") throw ArgumentError("format must be json or csv");
  return f;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ---------------------------------------------------------------- verify-pennies

Artifact run_verify_pennies(const Params& p, std::ostream& log) {
  const auto budget = static_cast<std::int64_t>(p.uint("T", 3));
  const Rational epsilon = p.rational("epsilon", Rational(9, 10));
  StepCostTable costs;
  costs.emit_hardwired_bit = static_cast<std::int64_t>(p.uint("emit_cost", 1));
  costs.sample_random_bit = static_cast<std::int64_t>(p.uint("sample_cost", 1));
  costs.print_char = static_cast<std::int64_t>(p.uint("print_cost", 1));
  costs.halt = static_cast<std::int64_t>(p.uint("halt_cost", 0));
  const auto biases = p.rational_list("biases", "0,1/4,1/2,3/4,1");
  const bool check = p.flag("check");
  const bool check_exists = p.flag("check_exists");
  const std::string format = format_of(p);

  const PenniesGame game = build_pennies_game(budget, costs, biases);
  const auto& family = game.family();
  const NeVerificationReport report = verify_ne_exhaustive(game, family, epsilon);

  Artifact a;
  a.format = format;
  if (format == "json") {
    json j = io::report_to_json(report);
    json bias_json = json::array();
    for (const auto& b : game.biases()) bias_json.push_back(io::to_json(b));
    j["parameters"] = {{"T", budget}, {"costs", io::costs_to_json(costs)}, {"biases", bias_json}};
    a.body = dump(j);
  } else {
    std::ostringstream os;
    os << kPenniesCsvHeader;
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t k = 0; k < family.size(); ++k) {
        os << i << ',' << csv_field(family[i].label) << ',' << k << ','
           << csv_field(family[k].label) << ',';
        auto it = report.deviations.find({i, k});
        if (it == report.deviations.end()) {
          os << "true,,,\n";
        } else {
          os << "false," << it->second.player << ',' << it->second.machine_index << ','
             << it->second.gain.str() << '\n';
        }
      }
    }
    a.body = os.str();
  }

  log << "verify-pennies: T=" << budget << " epsilon=" << epsilon << " family=" << family.size()
      << " profiles=" << report.profiles_checked << " equilibria=" << report.equilibria.size()
      << '\n';
  for (const auto& [i, k] : report.equilibria) {
    log << "  NE  A=" << family[i].label << "  B=" << family[k].label << '\n';
  }
  std::map<Rational, std::size_t> by_gain;
  for (const auto& [profile, d] : report.deviations) ++by_gain[d.gain];
  for (const auto& [gain, count] : by_gain) {
    log << "  witness gain " << gain << ": " << count << " profiles\n";
  }

  if (check && !report.equilibria.empty()) {
    log << "check failed: " << report.equilibria.size() << " equilibria found\n";
    a.exit_code = kExitCheckFailed;
  }
  if (check_exists && report.equilibria.empty()) {
    log << "check failed: no equilibrium found\n";
    a.exit_code = kExitCheckFailed;
  }
  return a;
}

// ---------------------------------------------------------------- arms-race

OwfInstance make_instance(const Params& p, const std::string& default_kind) {
  const OwfKind kind = parse_owf_kind(p.str("owf_kind", default_kind));
  const Rational b = p.rational("b", Rational(1));
  return kind == OwfKind::kHashTruncate ? OwfInstance::hash_truncate(b)
                                        : OwfInstance::random_table(p.uint("seed", 1), b);
}

Artifact run_arms_race(const Params& p, std::ostream& log) {
  const std::size_t n = p.uint("n", 16);
  const std::uint64_t seed = p.uint("seed", 1);
  const std::size_t max_rounds = p.uint("max_rounds", 10);
  const std::size_t samples = p.uint("samples", 1000);
  const bool check = p.flag("check");
  const std::string format = format_of(p);
  const OwfInstance inst = make_instance(p, "random_table");
  ArmsRaceOptions options;
  options.max_key_len = p.uint("max_key_len", 20);

  std::vector<std::uint64_t> ladder;
  if (p.has("ladder")) {
    ladder = p.uint_list("ladder", "");
  } else {
    const PuzzleLayout layout = owf_game_layout(n, inst, options.max_key_len);
    std::size_t entries = 0;
    while (entries < layout.entries() && layout.key_lengths[entries] <= 16) ++entries;
    ladder = full_search_ladder(layout, entries);
  }
  const ArmsRaceTrace trace = arms_race(n, inst, ladder, max_rounds, samples, seed, options);

  Artifact a;
  a.format = format;
  a.body = format == "json" ? dump(io::trace_to_json(trace)) : io::trace_to_csv(trace);

  log << "arms-race: n=" << n << " owf=" << to_string(inst.kind()) << " rounds="
      << trace.rounds.size() << " reached_top=" << (trace.reached_top ? "yes" : "no") << '\n';
  bool escalating = true;
  for (const auto& r : trace.rounds) {
    log << "  round " << r.round << " player " << r.mover << ": " << r.old_budget << " -> "
        << r.new_budget << " (opponent " << r.opponent_budget << ") value " << num(r.value)
        << " gain " << num(r.gain) << " +/- " << num(r.half_width) << '\n';
    if (r.new_budget < r.old_budget) escalating = false;
  }
  if (check && (!trace.reached_top || !escalating)) {
    log << "check failed: the trace does not escalate to the top rung\n";
    a.exit_code = kExitCheckFailed;
  }
  return a;
}

// ---------------------------------------------------------------- owf-security

Artifact run_owf_security(const Params& p, std::ostream& log) {
  const std::size_t k = p.uint("k", 12);
  const std::size_t trials = p.uint("trials", 2000);
  const std::uint64_t seed = p.uint("seed", 1);
  const OwfInstance inst = OwfInstance::random_table(p.uint("table_seed", 1));
  const auto budgets = p.uint_list("budgets", "64,1024,4096");
  const std::string format = format_of(p);
  if (!inst.supports(k)) throw ArgumentError("k must be in [1, 24]");

  const double width = hoeffding_half_width(1.0, trials);
  const double domain = std::ldexp(1.0, static_cast<int>(k));
  json rows = json::array();
  std::ostringstream csv;
  csv << "budget,rate,reference,half_width\n";
  log << "owf-security: k=" << k << " trials=" << trials << '\n';
  for (auto t : budgets) {
    const double rate = measure_security(inst, k, t, trials, seed);
    const double reference = static_cast<double>(t) / domain;
    rows.push_back({{"budget", t}, {"rate", rate}, {"reference", reference},
                    {"half_width", width}});
    csv << t << ',' << num(rate) << ',' << num(reference) << ',' << num(width) << '\n';
    log << "  t=" << t << " rate " << num(rate) << " (t/2^k = " << num(reference) << ")\n";
  }
  Artifact a;
  a.format = format;
  a.body = format == "json" ? dump({{"schema", kSecuritySchema},
                                    {"k", k},
                                    {"trials", trials},
                                    {"seed", seed},
                                    {"rows", rows}})
                            : csv.str();
  return a;
}

// ---------------------------------------------------------------- single-puzzle-ne

Artifact run_single_puzzle(const Params& p, std::ostream& log) {
  const std::size_t n = p.uint("n", 40);
  const std::uint64_t seed = p.uint("seed", 1);
  const std::size_t samples = p.uint("samples", 10000);
  const Rational epsilon = p.rational("epsilon", Rational(1, 20));
  const bool check = p.flag("check");
  const std::string format = format_of(p);
  const OwfInstance inst = make_instance(p, "hash_truncate");
  const auto budgets = p.uint_list("family", "0,1024,32768,1048576");

  const OwfGame game = build_single_puzzle_game(n, inst);
  auto cache = std::make_shared<SearchIndexCache>(inst);
  std::vector<OwfStrategy> family;
  for (auto b : budgets) family.push_back(exhaustive_inverter(b, cache));
  const OwfStrategy guess = random_guess_strategy(derive_seed(seed, 1));
  const OwfStrategy other = random_guess_strategy(derive_seed(seed, 2));

  json rows = json::array();
  std::ostringstream csv;
  csv << "player,index,label,budget,baseline,value,gain,half_width\n";
  double worst = -std::numeric_limits<double>::infinity();
  log << "single-puzzle-ne: n=" << n << " owf=" << to_string(inst.kind()) << " samples="
      << samples << '\n';
  for (std::size_t mover = 0; mover < 2; ++mover) {
    const auto gains = deviation_gains(game, mover, mover == 0 ? guess : other,
                                       mover == 0 ? other : guess, family, samples,
                                       derive_seed(seed, 10 + mover));
    for (const auto& g : gains) {
      worst = std::max(worst, g.gain);
      rows.push_back({{"player", mover},
                      {"index", g.index},
                      {"label", g.label},
                      {"budget", g.budget},
                      {"baseline", g.baseline},
                      {"value", g.value},
                      {"gain", g.gain},
                      {"half_width", g.half_width}});
      csv << mover << ',' << g.index << ',' << csv_field(g.label) << ',' << g.budget << ','
          << num(g.baseline) << ',' << num(g.value) << ',' << num(g.gain) << ','
          << num(g.half_width) << '\n';
      log << "  player " << mover << " -> " << g.label << ": gain " << num(g.gain) << '\n';
    }
  }

  Artifact a;
  a.format = format;
  a.body = format == "json" ? dump({{"schema", kSinglePuzzleSchema},
                                    {"n", n},
                                    {"owf_kind", std::string(to_string(inst.kind()))},
                                    {"samples", samples},
                                    {"epsilon", io::to_json(epsilon)},
                                    {"max_gain", worst},
                                    {"rows", rows}})
                            : csv.str();
  if (check && worst > epsilon.to_double()) {
    log << "check failed: a deviation gains " << num(worst) << " > " << epsilon << '\n';
    a.exit_code = kExitCheckFailed;
  }
  return a;
}

// ---------------------------------------------------------------- expected-utility

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ArgumentError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Artifact run_expected_utility(const Params& p, std::ostream& log) {
  if (!p.has("game") || !p.has("profile")) {
    throw ArgumentError("expected-utility needs 'game' and 'profile'");
  }
  const std::string format = format_of(p);
  const BayesianGame game = io::game_from_json(read_json_file(p.str("game", "")));
  const auto profile = io::profile_from_json(read_json_file(p.str("profile", "")));
  const auto values = expected_utility(game, profile);

  json arr = json::array();
  std::ostringstream csv;
  csv << "player,value\n";
  log << "expected-utility: " << (game.name().empty() ? "game" : game.name()) << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    arr.push_back(io::to_json(values[i]));
    csv << i << ',' << values[i].str() << '\n';
    log << "  V_" << i << " = " << values[i] << '\n';
  }
  Artifact a;
  a.format = format;
  a.body = format == "json" ? dump({{"schema", kUtilitySchema}, {"values", arr}}) : csv.str();
  return a;
}

}  // namespace

std::vector<std::string> experiment_subcommands() {
  std::vector<std::string> out;
  for (const auto& [name, keys] : key_table()) out.push_back(name);
  return out;
}

std::vector<std::string> experiment_keys(std::string_view subcommand) {
  auto it = key_table().find(std::string(subcommand));
  if (it == key_table().end()) {
    throw ArgumentError("unknown subcommand '" + std::string(subcommand) + "'");
  }
  return it->second;
}

ExperimentConfig config_from_json_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [raw_key, value] : j.items()) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '-', '_');
    std::string text_value;
    if (value.is_string()) {
      text_value = value.get<std::string>();
    } else if (value.is_boolean()) {
      text_value = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      text_value = value.dump();
    } else if (value.is_array()) {
      for (const auto& item : value) {
        if (!item.is_string() && !item.is_number_integer() && !item.is_number_unsigned()) {
          throw ArgumentError("config list " + describe(raw_key) +
                              " may hold only integers and strings");
        }
        if (!text_value.empty()) text_value += ',';
        text_value += item.is_string() ? item.get<std::string>() : item.dump();
      }
    } else {
      throw ArgumentError("config value for " + describe(raw_key) +
                          " must be a string, integer, boolean or list");
    }
    if (key == "subcommand") {
      cfg.subcommand = text_value;
    } else {
      cfg.params[key] = text_value;
    }
  }
  return cfg;
}

ExperimentConfig merge_configs(ExperimentConfig base, const ExperimentConfig& overrides) {
  if (!overrides.subcommand.empty()) base.subcommand = overrides.subcommand;
  for (const auto& [k, v] : overrides.params) base.params[k] = v;
  return base;
}

int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
  try {
    const auto keys = experiment_keys(config.subcommand);
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : config.params) {
      if (!allowed.contains(k)) {
        throw ArgumentError("unknown key " + describe(k) + " for " + config.subcommand);
      }
    }
    const Params params(config.params);

    Artifact artifact;
    if (config.subcommand == "verify-pennies") {
      artifact = run_verify_pennies(params, log);
    } else if (config.subcommand == "arms-race") {
      artifact = run_arms_race(params, log);
    } else if (config.subcommand == "owf-security") {
      artifact = run_owf_security(params, log);
    } else if (config.subcommand == "single-puzzle-ne") {
      artifact = run_single_puzzle(params, log);
    } else {
      artifact = run_expected_utility(params, log);
    }

    std::string path = params.str("out", "");
    if (path.empty()) {
      if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        std::filesystem::create_directories(dir);
        path = (std::filesystem::path(dir) / (config.subcommand + "." + artifact.format))
                   .string();
      }
    }
    if (path.empty()) {
      out << artifact.body;
      out.flush();
    } else {
      std::ofstream file(path, std::ios::binary);
      if (!file) throw ArgumentError("cannot write '" + path + "'");
      file << artifact.body;
      if (!file) throw ArgumentError("failed writing '" + path + "'");
      log << "wrote " << path << '\n';
    }
    return artifact.exit_code;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
}

}  // namespace compgame
