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

#ifndef COMPGAME_VERIFIER_HPP_
#define COMPGAME_VERIFIER_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "compgame/games.hpp"
#include "compgame/machine.hpp"
#include "compgame/rational.hpp"

namespace compgame {

// A unilateral switch within the family. player 0 is A, 1 is B.
struct MachineDeviation {
  std::size_t player = 0;
  std::size_t machine_index = 0;
  Rational gain;

  friend bool operator==(const MachineDeviation&, const MachineDeviation&) = default;
};

using MachineProfile = std::pair<std::size_t, std::size_t>;

// Exhaustive epsilon-M-NE check over a finite family with the negligible
// term fixed to 0 (there is a single finite game, so it is vacuous).
struct NeVerificationReport {
  std::size_t family_size = 0;
  std::size_t profiles_checked = 0;
  Rational epsilon;
  std::vector<std::string> family_labels;
  // Sorted by profile index.
  std::vector<MachineProfile> equilibria;
  // One maximal-gain witness per non-equilibrium profile; gain > epsilon.
  std::map<MachineProfile, MachineDeviation> deviations;

  friend bool operator==(const NeVerificationReport&, const NeVerificationReport&) = default;
};

// Every (A, B) profile of `family`; exact payoffs from the machines' output
// laws. Witness ties go to player A, then the lower machine index.
NeVerificationReport verify_ne_exhaustive(const PenniesGame& game,
                                          std::span<const StrategyMachine> family,
                                          const Rational& epsilon);

struct ProfileClassification {
  bool is_ne = true;
  std::optional<MachineDeviation> witness;
};

ProfileClassification classify_profile(const PenniesGame& game,
                                       const StrategyMachine& machine_a,
                                       const StrategyMachine& machine_b,
                                       std::span<const StrategyMachine> family,
                                       const Rational& epsilon);

}  // namespace compgame

#endif  // COMPGAME_VERIFIER_HPP_
