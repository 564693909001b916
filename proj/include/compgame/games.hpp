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

#ifndef COMPGAME_GAMES_HPP_
#define COMPGAME_GAMES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "compgame/bitstring.hpp"
#include "compgame/game_core.hpp"
#include "compgame/linalg.hpp"
#include "compgame/machine.hpp"
#include "compgame/owf.hpp"
#include "compgame/rational.hpp"
#include "compgame/rng.hpp"

namespace compgame {

// ceil(log2 n) for n >= 1.
std::size_t ceil_log2(std::uint64_t n);

// Fixed-width framing of a puzzle tuple and of the matching candidate list.
struct PuzzleLayout {
  std::size_t n = 0;
  std::vector<std::size_t> key_lengths;    // entry i: |x_i|
  std::vector<std::size_t> image_lengths;  // entry i: |f(x_i)|

  std::size_t entries() const { return key_lengths.size(); }
  std::size_t type_len() const;
  std::size_t action_len() const;
};

// Entry i (1-based) has key length i * ceil(log2 n), i = 1 .. ceil(log2 n).
// With `max_key_len`, entries above the cap are dropped. Throws
// ArgumentError if a kept entry is outside the instance's support.
PuzzleLayout owf_game_layout(std::size_t n, const OwfInstance& inst,
                             std::optional<std::size_t> max_key_len = std::nullopt);
// One entry of key length n.
PuzzleLayout single_puzzle_layout(std::size_t n, const OwfInstance& inst);

// A player's type: the images f(x_1), ..., f(x_l).
struct PuzzleTuple {
  std::size_t n = 0;
  std::vector<std::size_t> key_lengths;
  std::vector<BitString> images;
};

// A player's action: candidate preimages y_1, ..., y_l.
struct OwfGameAction {
  std::vector<BitString> candidates;
};

BitString encode_type(const PuzzleTuple& tuple);
PuzzleTuple decode_type(const PuzzleLayout& layout, const BitString& type);
BitString encode_action(const OwfGameAction& action);
// Throws ArgumentError unless |action| == layout.action_len().
OwfGameAction decode_action(const PuzzleLayout& layout, const BitString& action);

// Number of entries i with f(y_i) == f(x_i). Throws ArgumentError if the
// candidate framing does not match the tuple.
std::int64_t count_hits(const PuzzleTuple& tuple, const OwfGameAction& action,
                        const OwfInstance& inst);

// (sign(a1 - a2), sign(a2 - a1)).
std::pair<Rational, Rational> owf_payoff(std::int64_t a1, std::int64_t a2);

struct SampledPuzzles {
  PuzzleTuple tuple;
  std::vector<BitString> secrets;
};

// Independent uniform secrets per entry; the secrets are kept for harnesses
// only, players only ever see `tuple`.
SampledPuzzles sample_puzzle_tuple(const PuzzleLayout& layout,
                                   const OwfInstance& inst, Rng& rng);

struct OwfGameOptions {
  std::optional<std::size_t> max_key_len;
  // Enumerate types/actions and attach an exact prior when
  // (#types * #actions)^2 stays below this.
  std::uint64_t explicit_limit = 1u << 16;
};

// A puzzle game: both players share the type (perfectly correlated), and
// utilities are owf_payoff of the two hit counts.
struct OwfGame {
  PuzzleLayout layout;
  OwfInstance inst;
  GameSequenceMeta meta;
  BayesianGame game;
};

OwfGame build_owf_game(std::size_t n, const OwfInstance& inst,
                       const OwfGameOptions& options = {});
OwfGame build_single_puzzle_game(std::size_t n, const OwfInstance& inst,
                                 const OwfGameOptions& options = {});

// Closed forms for the OWF game: sum_i i*L = L * l(l+1)/2 with L = l =
// ceil(log2 n) (b = 1, no cap).
std::uint64_t owf_game_action_len(std::uint64_t n);

// Outcome of one play of the pennies game F.
struct PenniesOutcome {
  bool a1 = false;
  bool b1 = false;
  std::int64_t chars_a = 0;
  std::int64_t chars_b = 0;
};

// Reads (bit, #printed) from machine outputs "b1...1".
PenniesOutcome pennies_outcome(const BitString& output_a, const BitString& output_b);

// Phase 1: match -> (+1, -1), else (-1, +1). Phase 2: more printed
// characters -> +1 for that player and -1 for the other, tie -> 0.
std::pair<Rational, Rational> pennies_payoff(const PenniesOutcome& outcome);

// Matching pennies with printing, played by machines from M_T.
class PenniesGame {
 public:
  PenniesGame(std::int64_t budget, StepCostTable costs, std::vector<Rational> biases);

  std::int64_t budget() const { return budget_; }
  const StepCostTable& costs() const { return costs_; }
  const std::vector<Rational>& biases() const { return biases_; }
  // enumerate_machines(budget, biases) under this game's costs.
  const std::vector<StrategyMachine>& family() const { return family_; }

  // All canonical outputs "b" + 1^c, c = 0 .. budget, in that order.
  const std::vector<BitString>& outcomes() const { return outcomes_; }
  VectorQ outcome_law(const StrategyMachine& machine) const;
  // (outcomes x family) matrix whose columns are outcome laws.
  MatrixQ outcome_laws(std::span<const StrategyMachine> family) const;
  // Payoff of `player` on every pure outcome pair (row: A's output).
  MatrixQ outcome_payoffs(std::size_t player) const;

  std::pair<Rational, Rational> payoff(const StrategyMachine& a,
                                       const StrategyMachine& b) const;
  // Row: A's machine, column: B's machine.
  std::array<MatrixQ, 2> payoff_matrices(std::span<const StrategyMachine> family) const;

  // The same game as an explicit normal-form BayesianGame whose actions are
  // machine outputs (singleton types).
  BayesianGame outcome_game() const;
  // A machine's output law as a strategy of outcome_game().
  MixedStrategy as_mixed_strategy(const StrategyMachine& machine) const;

 private:
  std::int64_t budget_;
  StepCostTable costs_;
  std::vector<Rational> biases_;
  std::vector<StrategyMachine> family_;
  std::vector<BitString> outcomes_;
};

// Throws ArgumentError unless budget > 2.
PenniesGame build_pennies_game(std::int64_t budget, const StepCostTable& costs,
                               std::span<const Rational> biases);

}  // namespace compgame

#endif  // COMPGAME_GAMES_HPP_
