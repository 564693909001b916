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

#include "compgame/serialization.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "compgame/errors.hpp"

namespace compgame::io {

namespace {

void expect_schema(const json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema")) {
    throw ArgumentError(std::string("missing schema field, expected ") + schema);
  }
  const auto& s = j.at("schema");
  if (!s.is_string() || s.get<std::string>() != schema) {
    throw ArgumentError("unsupported schema " + s.dump() + ", expected " + schema);
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ArgumentError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad field '") + key + "': " + e.what());
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ArgumentError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

json space_to_json(const Space& space) {
  json arr = json::array();
  for (const auto& s : space.elements()) arr.push_back(to_json(s));
  return arr;
}

Space space_from_json(const json& j) {
  if (!j.is_array()) throw ArgumentError("space must be an array of bitstrings");
  std::vector<BitString> elements;
  for (const auto& e : j) elements.push_back(bitstring_from_json(e));
  return Space::listed(std::move(elements));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

json to_json(const BitString& s) { return json{{"len", s.size()}, {"hex", s.to_hex()}}; }

BitString bitstring_from_json(const json& j) {
  return BitString::from_hex(field<std::string>(j, "hex"), field<std::size_t>(j, "len"));
}

json to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw ArgumentError("rational must be a \"p/q\" string");
  return Rational::parse(j.get<std::string>());
}

// ---------------------------------------------------------------- games

json game_to_json(const BayesianGame& game) {
  if (!game.is_enumerable()) throw UnsupportedModeError("only enumerable games serialize");
  json j;
  j["schema"] = kGameSchema;
  j["name"] = game.name();
  j["players"] = game.num_players();
  json actions = json::array();
  json types = json::array();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    actions.push_back(space_to_json(game.actions(i)));
    types.push_back(space_to_json(game.types(i)));
  }
  j["action_spaces"] = actions;
  j["type_spaces"] = types;

  json prior = json::array();
  for (const auto& e : game.type_distribution().entries()) {
    prior.push_back({{"types", e.types}, {"probability", to_json(e.probability)}});
  }
  j["type_distribution"] = prior;
  const PayoffRange range = game.payoff_range();
  j["payoff_range"] = {{"lo", to_json(range.lo)}, {"hi", to_json(range.hi)}};

  json table = json::array();
  game.for_each_outcome([&](const JointAction& b, const JointType& t) {
    std::vector<std::size_t> ti;
    std::vector<std::size_t> bi;
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      ti.push_back(*game.types(i).index_of(t[i]));
      bi.push_back(*game.actions(i).index_of(b[i]));
    }
    json payoffs = json::array();
    for (const auto& v : game.utilities(b, t)) payoffs.push_back(to_json(v));
    table.push_back({{"types", ti}, {"actions", bi}, {"payoffs", payoffs}});
  });
  j["utility"] = {{"table", table}};
  return j;
}

namespace {

BayesianGame matching_pennies() {
  const Space actions = Space::listed({BitString::from_string("0"), BitString::from_string("1")});
  const Space types = Space::listed({BitString()});
  auto utility = [](const JointAction& b, const JointType&) {
    const int s = b[0] == b[1] ? 1 : -1;
    return std::vector<Rational>{Rational(s), Rational(-s)};
  };
  return BayesianGame({actions, actions}, {types, types},
                      TypeDistribution::table({{{0, 0}, Rational(1)}}), utility,
                      PayoffRange{Rational(-1), Rational(1)}, "matching-pennies");
}

}  // namespace

BayesianGame game_from_json(const json& j) {
  expect_schema(j, kGameSchema);
  const json& utility = member(j, "utility");
  if (utility.contains("builtin")) {
    const auto name = field<std::string>(utility, "builtin");
    if (name == "matching-pennies") return matching_pennies();
    throw ArgumentError("unknown builtin game '" + name + "'");
  }

  const auto players = field<std::size_t>(j, "players");
  const json& aj = member(j, "action_spaces");
  const json& tj = member(j, "type_spaces");
  if (!aj.is_array() || !tj.is_array() || aj.size() != players || tj.size() != players) {
    throw ArgumentError("need one action and one type space per player");
  }
  std::vector<Space> actions;
  std::vector<Space> types;
  for (std::size_t i = 0; i < players; ++i) {
    actions.push_back(space_from_json(aj[i]));
    types.push_back(space_from_json(tj[i]));
  }

  std::vector<TypeTableEntry> prior;
  for (const auto& e : member(j, "type_distribution")) {
    prior.push_back({field<std::vector<std::size_t>>(e, "types"),
                     rational_from_json(member(e, "probability"))});
  }

  using Key = std::vector<std::size_t>;
  auto table = std::make_shared<std::map<Key, std::vector<Rational>>>();
  for (const auto& row : member(utility, "table")) {
    Key key = field<Key>(row, "types");
    const Key acts = field<Key>(row, "actions");
    if (key.size() != players || acts.size() != players) {
      throw ArgumentError("utility row has the wrong arity");
    }
    key.insert(key.end(), acts.begin(), acts.end());
    std::vector<Rational> payoffs;
    for (const auto& v : member(row, "payoffs")) payoffs.push_back(rational_from_json(v));
    if (payoffs.size() != players) throw ArgumentError("utility row has the wrong arity");
    if (!table->emplace(std::move(key), std::move(payoffs)).second) {
      throw ArgumentError("duplicate utility row");
    }
  }

  auto lookup = [table, actions, types](const JointAction& b, const JointType& t) {
    Key key;
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto idx = types[i].index_of(t[i]);
      if (!idx) throw DomainError("type outside the listed space");
      key.push_back(*idx);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      auto idx = actions[i].index_of(b[i]);
      if (!idx) throw DomainError("action outside the listed space");
      key.push_back(*idx);
    }
    auto it = table->find(key);
    if (it == table->end()) throw DomainError("utility table has no row for this outcome");
    return it->second;
  };

  std::optional<PayoffRange> range;
  if (j.contains("payoff_range")) {
    const json& r = j.at("payoff_range");
    range = PayoffRange{rational_from_json(member(r, "lo")), rational_from_json(member(r, "hi"))};
  }
  return BayesianGame(std::move(actions), std::move(types),
                      TypeDistribution::table(std::move(prior)), lookup, range,
                      j.value("name", std::string()));
}

json profile_to_json(const std::vector<MixedStrategy>& profile) {
  json strategies = json::array();
  for (const auto& s : profile) {
    json per_type = json::array();
    for (const auto& [type, table] : s.tables()) {
      json acts = json::array();
      for (const auto& [action, p] : table) {
        acts.push_back({{"action", to_json(action)}, {"probability", to_json(p)}});
      }
      per_type.push_back({{"type", to_json(type)}, {"actions", acts}});
    }
    strategies.push_back({{"per_type", per_type}});
  }
  return {{"schema", kProfileSchema}, {"strategies", strategies}};
}

std::vector<MixedStrategy> profile_from_json(const json& j) {
  expect_schema(j, kProfileSchema);
  std::vector<MixedStrategy> out;
  for (const auto& s : member(j, "strategies")) {
    std::map<BitString, MixedStrategy::Table> per_type;
    for (const auto& entry : member(s, "per_type")) {
      MixedStrategy::Table table;
      for (const auto& a : member(entry, "actions")) {
        table.emplace_back(bitstring_from_json(member(a, "action")),
                           rational_from_json(member(a, "probability")));
      }
      if (!per_type.emplace(bitstring_from_json(member(entry, "type")), std::move(table))
               .second) {
        throw ArgumentError("type listed twice in a strategy");
      }
    }
    out.emplace_back(std::move(per_type));
  }
  return out;
}

// ---------------------------------------------------------------- machines

json machine_to_json(const StrategyMachine& m) {
  json program = json::array();
  for (const auto& ins : m.program) {
    switch (ins.op) {
      case Opcode::kEmit:
        program.push_back({{"op", "EMIT"}, {"bit", ins.bit ? 1 : 0}});
        break;
      case Opcode::kSampleBit:
        program.push_back({{"op", "SAMPLE_BIT"}, {"bias", to_json(ins.bias)}});
        break;
      case Opcode::kPrint:
        program.push_back({{"op", "PRINT"}});
        break;
      case Opcode::kHalt:
        program.push_back({{"op", "HALT"}});
        break;
    }
  }
  return {{"schema", kMachineSchema},
          {"label", m.label},
          {"budget", m.budget},
          {"program", program}};
}

StrategyMachine machine_from_json(const json& j) {
  expect_schema(j, kMachineSchema);
  StrategyMachine m;
  m.label = j.value("label", std::string());
  m.budget = field<std::int64_t>(j, "budget");
  for (const auto& ins : member(j, "program")) {
    const auto op = field<std::string>(ins, "op");
    if (op == "EMIT") {
      const int bit = field<int>(ins, "bit");
      if (bit != 0 && bit != 1) throw ArgumentError("EMIT bit must be 0 or 1");
      m.program.push_back(Instruction::emit(bit == 1));
    } else if (op == "SAMPLE_BIT") {
      m.program.push_back(Instruction::sample_bit(rational_from_json(member(ins, "bias"))));
    } else if (op == "PRINT") {
      m.program.push_back(Instruction::print());
    } else if (op == "HALT") {
      m.program.push_back(Instruction::halt());
    } else {
      throw ArgumentError("unknown opcode '" + op + "'");
    }
  }
  return m;
}

json costs_to_json(const StepCostTable& c) {
  return {{"emit_hardwired_bit", c.emit_hardwired_bit},
          {"sample_random_bit", c.sample_random_bit},
          {"print_char", c.print_char},
          {"halt", c.halt}};
}

StepCostTable costs_from_json(const json& j) {
  StepCostTable c;
  c.emit_hardwired_bit = field<std::int64_t>(j, "emit_hardwired_bit");
  c.sample_random_bit = field<std::int64_t>(j, "sample_random_bit");
  c.print_char = field<std::int64_t>(j, "print_char");
  c.halt = field<std::int64_t>(j, "halt");
  c.validate();
  return c;
}

// ---------------------------------------------------------------- reports

json report_to_json(const NeVerificationReport& r) {
  json equilibria = json::array();
  for (const auto& [a, b] : r.equilibria) equilibria.push_back({a, b});
  json deviations = json::array();
  for (const auto& [profile, d] : r.deviations) {
    deviations.push_back({{"profile", {profile.first, profile.second}},
                          {"player", d.player},
                          {"machine", d.machine_index},
                          {"gain", to_json(d.gain)}});
  }
  return {{"schema", kReportSchema},
          {"family_size", r.family_size},
          {"profiles_checked", r.profiles_checked},
          {"epsilon", to_json(r.epsilon)},
          {"family_labels", r.family_labels},
          {"equilibria", equilibria},
          {"deviations", deviations}};
}

NeVerificationReport report_from_json(const json& j) {
  expect_schema(j, kReportSchema);
  NeVerificationReport r;
  r.family_size = field<std::size_t>(j, "family_size");
  r.profiles_checked = field<std::size_t>(j, "profiles_checked");
  r.epsilon = rational_from_json(member(j, "epsilon"));
  r.family_labels = field<std::vector<std::string>>(j, "family_labels");
  for (const auto& e : member(j, "equilibria")) {
    const auto p = e.get<std::vector<std::size_t>>();
    if (p.size() != 2) throw ArgumentError("profile must have two entries");
    r.equilibria.emplace_back(p[0], p[1]);
  }
  for (const auto& d : member(j, "deviations")) {
    const auto p = field<std::vector<std::size_t>>(d, "profile");
    if (p.size() != 2) throw ArgumentError("profile must have two entries");
    r.deviations.emplace(MachineProfile{p[0], p[1]},
                         MachineDeviation{field<std::size_t>(d, "player"),
                                          field<std::size_t>(d, "machine"),
                                          rational_from_json(member(d, "gain"))});
  }
  return r;
}

json trace_to_json(const ArmsRaceTrace& t) {
  json rounds = json::array();
  for (const auto& r : t.rounds) {
    rounds.push_back({{"round", r.round},
                      {"mover", r.mover},
                      {"old_budget", r.old_budget},
                      {"new_budget", r.new_budget},
                      {"opponent_budget", r.opponent_budget},
                      {"value", r.value},
                      {"gain", r.gain},
                      {"half_width", r.half_width}});
  }
  return {{"schema", kTraceSchema},
          {"n", t.n},
          {"ladder", t.ladder},
          {"reached_top", t.reached_top},
          {"rounds", rounds}};
}

ArmsRaceTrace trace_from_json(const json& j) {
  expect_schema(j, kTraceSchema);
  ArmsRaceTrace t;
  t.n = field<std::size_t>(j, "n");
  t.ladder = field<std::vector<std::uint64_t>>(j, "ladder");
  t.reached_top = field<bool>(j, "reached_top");
  for (const auto& r : member(j, "rounds")) {
    ArmsRaceRound round;
    round.round = field<std::size_t>(r, "round");
    round.mover = field<std::size_t>(r, "mover");
    round.old_budget = field<std::uint64_t>(r, "old_budget");
    round.new_budget = field<std::uint64_t>(r, "new_budget");
    round.opponent_budget = field<std::uint64_t>(r, "opponent_budget");
    round.value = field<double>(r, "value");
    round.gain = field<double>(r, "gain");
    round.half_width = field<double>(r, "half_width");
    t.rounds.push_back(round);
  }
  return t;
}

std::string trace_to_csv(const ArmsRaceTrace& t) {
  std::ostringstream os;
  os << "round,mover,old_budget,new_budget,opponent_budget,value,gain,half_width\n";
  for (const auto& r : t.rounds) {
    os << r.round << ',' << r.mover << ',' << r.old_budget << ',' << r.new_budget << ','
       << r.opponent_budget << ',' << format_double(r.value) << ',' << format_double(r.gain)
       << ',' << format_double(r.half_width) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- golden vectors

json golden_to_json(const std::vector<OwfGoldenVector>& vectors) {
  json arr = json::array();
  for (const auto& v : vectors) {
    arr.push_back({{"kind", std::string(to_string(v.kind))},
                   {"seed", v.seed},
                   {"k", v.k},
                   {"x_hex", v.x.to_hex()},
                   {"image_len", v.image.size()},
                   {"image_hex", v.image.to_hex()}});
  }
  return {{"schema", kGoldenSchema}, {"vectors", arr}};
}

std::vector<OwfGoldenVector> golden_from_json(const json& j) {
  expect_schema(j, kGoldenSchema);
  std::vector<OwfGoldenVector> out;
  for (const auto& e : member(j, "vectors")) {
    OwfGoldenVector v;
    v.kind = parse_owf_kind(field<std::string>(e, "kind"));
    v.seed = field<std::uint64_t>(e, "seed");
    v.k = field<std::size_t>(e, "k");
    v.x = BitString::from_hex(field<std::string>(e, "x_hex"), v.k);
    v.image = BitString::from_hex(field<std::string>(e, "image_hex"),
                                  field<std::size_t>(e, "image_len"));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace compgame::io
