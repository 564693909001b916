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

#ifndef COMPGAME_SERIALIZATION_HPP_
#define COMPGAME_SERIALIZATION_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "compgame/bitstring.hpp"
#include "compgame/dynamics.hpp"
#include "compgame/game_core.hpp"
#include "compgame/machine.hpp"
#include "compgame/owf.hpp"
#include "compgame/verifier.hpp"

// JSON documents. Every top-level document carries a "schema" field
// ("<kind>/v<version>"); readers reject unknown schemas. Layouts are
// described in docs/formats.md.
namespace compgame::io {

using nlohmann::json;

inline constexpr const char* kGameSchema = "compgame.bayesian-game/v1";
inline constexpr const char* kProfileSchema = "compgame.profile/v1";
inline constexpr const char* kMachineSchema = "compgame.machine/v1";
inline constexpr const char* kReportSchema = "compgame.ne-report/v1";
inline constexpr const char* kTraceSchema = "compgame.arms-race/v1";
inline constexpr const char* kGoldenSchema = "compgame.owf-golden/v1";

// {"len": n, "hex": "..."}
json to_json(const BitString& s);
BitString bitstring_from_json(const json& j);

json to_json(const Rational& q);  // "p/q"
Rational rational_from_json(const json& j);

// Enumerable games with an explicit prior only.
json game_to_json(const BayesianGame& game);
// Accepts an explicit utility table or {"builtin": "matching-pennies"}.
BayesianGame game_from_json(const json& j);

json profile_to_json(const std::vector<MixedStrategy>& profile);
std::vector<MixedStrategy> profile_from_json(const json& j);

json machine_to_json(const StrategyMachine& m);
StrategyMachine machine_from_json(const json& j);
json costs_to_json(const StepCostTable& costs);
StepCostTable costs_from_json(const json& j);

json report_to_json(const NeVerificationReport& report);
NeVerificationReport report_from_json(const json& j);

json trace_to_json(const ArmsRaceTrace& trace);
ArmsRaceTrace trace_from_json(const json& j);
// Header: round,mover,old_budget,new_budget,opponent_budget,value,gain,half_width
std::string trace_to_csv(const ArmsRaceTrace& trace);

struct OwfGoldenVector {
  OwfKind kind = OwfKind::kHashTruncate;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  BitString x;
  BitString image;
};

json golden_to_json(const std::vector<OwfGoldenVector>& vectors);
std::vector<OwfGoldenVector> golden_from_json(const json& j);

}  // namespace compgame::io

#endif  // COMPGAME_SERIALIZATION_HPP_
