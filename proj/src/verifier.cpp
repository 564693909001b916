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

#include "compgame/verifier.hpp"

#include "compgame/errors.hpp"
#include "compgame/linalg.hpp"

namespace compgame {

namespace {

// Picks the maximal-gain deviation; ties keep the earlier candidate, so
// player A beats B and lower indices beat higher ones.
void consider(std::optional<MachineDeviation>& best, std::size_t player, std::size_t index,
              const Rational& gain) {
  if (!best || best->gain < gain) best = MachineDeviation{player, index, gain};
}

}  // namespace

NeVerificationReport verify_ne_exhaustive(const PenniesGame& game,
                                          std::span<const StrategyMachine> family,
                                          const Rational& epsilon) {
  if (family.empty()) throw ArgumentError("verification over an empty family");
  if (epsilon.sign() < 0) throw ArgumentError("epsilon must be >= 0");
  const auto [a, b] = game.payoff_matrices(family);
  const MatrixQ regret_a = row_player_regret(a);
  const MatrixQ regret_b = column_player_regret(b);

  NeVerificationReport report;
  report.family_size = family.size();
  report.epsilon = epsilon;
  for (const auto& m : family) report.family_labels.push_back(m.label);

  const auto n = static_cast<Eigen::Index>(family.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      ++report.profiles_checked;
      const MachineProfile profile{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
      if (!(epsilon < regret_a(i, j)) && !(epsilon < regret_b(i, j))) {
        report.equilibria.push_back(profile);
        continue;
      }
      std::optional<MachineDeviation> best;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (a(k, j) - a(i, j) == regret_a(i, j)) {
          consider(best, 0, static_cast<std::size_t>(k), regret_a(i, j));
          break;
        }
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        if (b(i, k) - b(i, j) == regret_b(i, j)) {
          consider(best, 1, static_cast<std::size_t>(k), regret_b(i, j));
          break;
        }
      }
      report.deviations.emplace(profile, *best);
    }
  }
  return report;
}

ProfileClassification classify_profile(const PenniesGame& game,
                                       const StrategyMachine& machine_a,
                                       const StrategyMachine& machine_b,
                                       std::span<const StrategyMachine> family,
                                       const Rational& epsilon) {
  if (epsilon.sign() < 0) throw ArgumentError("epsilon must be >= 0");
  const VectorQ law_a = game.outcome_law(machine_a);
  const VectorQ law_b = game.outcome_law(machine_b);
  const MatrixQ u_a = game.outcome_payoffs(0);
  const MatrixQ u_b = game.outcome_payoffs(1);
  const Rational base_a = bilinear(law_a, u_a, law_b);
  const Rational base_b = bilinear(law_a, u_b, law_b);

  std::optional<MachineDeviation> best;
  std::vector<VectorQ> laws;
  laws.reserve(family.size());
  for (const auto& m : family) laws.push_back(game.outcome_law(m));
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Rational gain = bilinear(laws[k], u_a, law_b) - base_a;
    if (epsilon < gain) consider(best, 0, k, gain);
  }
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Rational gain = bilinear(law_a, u_b, laws[k]) - base_b;
    if (epsilon < gain) consider(best, 1, k, gain);
  }
  ProfileClassification out;
  out.is_ne = !best.has_value();
  out.witness = best;
  return out;
}

}  // namespace compgame
