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

#ifndef COMPGAME_GAME_CORE_HPP_
#define COMPGAME_GAME_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "compgame/bitstring.hpp"
#include "compgame/rational.hpp"
#include "compgame/rng.hpp"

namespace compgame {

using JointAction = std::vector<BitString>;
using JointType = std::vector<BitString>;

// An action or type set: either an explicit finite list, or (when the set is
// far too large to list) only the bound on string length.
class Space {
 public:
  Space() = default;
  static Space listed(std::vector<BitString> elements);
  static Space bounded(std::size_t max_len);

  bool is_listed() const { return listed_; }
  std::size_t max_len() const { return max_len_; }
  // Throws UnsupportedModeError for a bounded space.
  const std::vector<BitString>& elements() const;
  std::size_t size() const;
  std::optional<std::size_t> index_of(const BitString& s) const;
  bool contains(const BitString& s) const;

 private:
  bool listed_ = false;
  std::size_t max_len_ = 0;
  std::vector<BitString> elements_;
  std::unordered_map<BitString, std::size_t, BitStringHash> index_;
};

// One row of an explicit prior: indices into each player's type space.
struct TypeTableEntry {
  std::vector<std::size_t> types;
  Rational probability;
};

// Prior over joint types. An explicit table (exact, small spaces) and/or a
// seeded sampler (large spaces). Exact operations need the table.
class TypeDistribution {
 public:
  using Sampler = std::function<JointType(Rng&)>;

  TypeDistribution() = default;
  // Probabilities must be nonnegative and sum to exactly 1.
  static TypeDistribution table(std::vector<TypeTableEntry> entries);
  static TypeDistribution sampler(Sampler sampler);
  // Both: exact table plus a faster dedicated sampler for the same law.
  static TypeDistribution table_and_sampler(std::vector<TypeTableEntry> entries,
                                            Sampler sampler);

  bool has_table() const { return has_table_; }
  const std::vector<TypeTableEntry>& entries() const;
  JointType sample(std::span<const Space> type_spaces, Rng& rng) const;

 private:
  bool has_table_ = false;
  std::vector<TypeTableEntry> entries_;
  std::vector<double> cumulative_;
  Sampler sampler_;
};

// v(b, t) for all players at once.
using UtilityFn =
    std::function<std::vector<Rational>(const JointAction&, const JointType&)>;

struct PayoffRange {
  Rational lo;
  Rational hi;
};

// A k-player normal-form Bayesian game (J, B, T, P, v), J = {0, ..., k-1}.
class BayesianGame {
 public:
  BayesianGame(std::vector<Space> action_spaces, std::vector<Space> type_spaces,
               TypeDistribution type_dist, UtilityFn utility,
               std::optional<PayoffRange> declared_range = std::nullopt,
               std::string name = {});

  std::size_t num_players() const { return action_spaces_.size(); }
  const Space& actions(std::size_t player) const { return action_spaces_.at(player); }
  const Space& types(std::size_t player) const { return type_spaces_.at(player); }
  std::span<const Space> type_spaces() const { return type_spaces_; }
  const TypeDistribution& type_distribution() const { return type_dist_; }
  const std::string& name() const { return name_; }

  // True when every action and type space is listed.
  bool is_enumerable() const;
  std::vector<Rational> utilities(const JointAction& b, const JointType& t) const;

  // Declared range, or min/max over all (b, t) for enumerable games.
  // Throws UnsupportedModeError when neither is available.
  PayoffRange payoff_range() const;

  // Visits every (b, t) of an enumerable game.
  void for_each_outcome(
      const std::function<void(const JointAction&, const JointType&)>& visit) const;

 private:
  std::vector<Space> action_spaces_;
  std::vector<Space> type_spaces_;
  TypeDistribution type_dist_;
  UtilityFn utility_;
  std::optional<PayoffRange> range_;
  std::string name_;
};

// Per-type distribution over own actions: s_i(t_i, b_i).
class MixedStrategy {
 public:
  using Table = std::vector<std::pair<BitString, Rational>>;

  MixedStrategy() = default;
  // Each table must be nonnegative, free of duplicate actions and sum to 1.
  explicit MixedStrategy(std::map<BitString, Table> per_type);

  static MixedStrategy pure(const std::map<BitString, BitString>& choice);
  // The same table for every listed type.
  static MixedStrategy constant(const Space& types, const Table& table);
  static MixedStrategy uniform(const Space& types, const Space& actions);
  // lambda * a + (1 - lambda) * b, type by type.
  static MixedStrategy mix(const MixedStrategy& a, const MixedStrategy& b,
                           const Rational& lambda);

  bool defines(const BitString& type) const { return per_type_.contains(type); }
  // Throws DomainError when `type` is not covered.
  const Table& at(const BitString& type) const;
  const std::map<BitString, Table>& tables() const { return per_type_; }

  BitString sample(const BitString& type, Rng& rng) const;

 private:
  std::map<BitString, Table> per_type_;
};

// A behavioural strategy given as code: own type -> sampled action.
using Policy = std::function<BitString(const BitString& own_type, Rng& rng)>;
using StrategyRef = std::variant<MixedStrategy, Policy>;

// Exact V_i(s) for every player. Needs an explicit type table.
std::vector<Rational> expected_utility(const BayesianGame& game,
                                       std::span<const MixedStrategy> profile);

struct UtilityEstimate {
  double estimate = 0.0;
  double half_width = 0.0;
};

// Sample mean of v_i over `samples` i.i.d. draws of (t, b), with a 99%
// Hoeffding half-width over the game's payoff range. Deterministic in seed.
std::vector<UtilityEstimate> estimate_utility(const BayesianGame& game,
                                              std::span<const StrategyRef> profile,
                                              std::size_t samples,
                                              std::uint64_t seed);

struct DeviationWitness {
  std::size_t player = 0;
  std::size_t deviation_index = 0;
  Rational gain;

  friend bool operator==(const DeviationWitness&, const DeviationWitness&) = default;
};

struct NeVerdict {
  bool is_ne = true;
  std::optional<DeviationWitness> witness;
};

// True iff no listed deviation gains more than epsilon. Otherwise the witness
// has maximal gain; ties go to the lower player index, then list order.
NeVerdict is_epsilon_ne(const BayesianGame& game,
                        std::span<const MixedStrategy> profile,
                        const Rational& epsilon,
                        const std::vector<std::vector<MixedStrategy>>& deviations);

// Every pure strategy (type -> action map) of `player`, in lexicographic order
// of the action-index vector. Needs listed spaces.
std::vector<MixedStrategy> all_pure_strategies(const BayesianGame& game,
                                               std::size_t player);

// True iff every nonzero payoff satisfies c <= |v| <= C. Needs an enumerable
// game; requires 0 < c <= C.
bool check_bounded(const BayesianGame& game, const Rational& c, const Rational& big_c);

// c_0 + c_1 n + c_2 n^2 + ..., nonnegative integer coefficients.
struct Polynomial {
  std::vector<std::uint64_t> coefficients;

  // Saturates at UINT64_MAX.
  std::uint64_t operator()(std::uint64_t n) const;
};

// Asymptotic descriptors of a game sequence {G_n}.
struct GameSequenceMeta {
  Polynomial action_len;
  Polynomial type_len;
  Polynomial utility_time;
  std::optional<std::pair<Rational, Rational>> bounded_range;

  // Throws ArgumentError unless 0 < c <= C when a range is present.
  void validate() const;
};

}  // namespace compgame

#endif  // COMPGAME_GAME_CORE_HPP_
