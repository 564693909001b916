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

#ifndef COMPGAME_DYNAMICS_HPP_
#define COMPGAME_DYNAMICS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "compgame/game_core.hpp"
#include "compgame/games.hpp"
#include "compgame/owf.hpp"
#include "compgame/rng.hpp"

namespace compgame {

// A strategy for the puzzle games. `budget` counts OWF evaluations and is
// what ties are broken on.
struct OwfStrategy {
  std::string label;
  std::uint64_t budget = 0;
  std::function<OwfGameAction(const PuzzleTuple&, const OwfInstance&, Rng&)> respond;
};

// Memo of "first z in lexicographic order below `prefix` with f_k(z) ==
// image". Answers are identical to scanning z = 0, 1, ... and so are the
// reported evaluation counts; building the index evaluates the prefix once.
class SearchIndexCache {
 public:
  static constexpr std::uint64_t kMaxIndexedPrefix = std::uint64_t{1} << 24;

  explicit SearchIndexCache(OwfInstance inst);

  struct Result {
    std::optional<std::uint64_t> preimage;
    std::uint64_t evaluations = 0;
  };

  // Needs k <= 64, output_len(k) <= 64 and prefix <= kMaxIndexedPrefix.
  bool supports(std::size_t k, std::uint64_t prefix) const;
  Result search(std::size_t k, std::uint64_t image, std::uint64_t prefix) const;

  const OwfInstance& instance() const { return inst_; }

 private:
  struct Index;
  std::shared_ptr<const Index> index_for(std::size_t k, std::uint64_t prefix) const;

  OwfInstance inst_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, std::shared_ptr<const Index>> indices_;
};

// Greedy by index: for entry i with key length k, a full scan of {0,1}^k if
// the remaining budget covers 2^k (stopping at the first preimage and
// charging the evaluations actually used), otherwise a scan of the first
// `remaining` strings after which every later entry gets 0^k.
//
// `evaluations`, when given, receives the number of f evaluations a literal
// scan performs. With a cache the result and count are the same.
OwfGameAction exhaustive_invert(const PuzzleTuple& tuple, const OwfInstance& inst,
                                std::uint64_t budget,
                                const SearchIndexCache* cache = nullptr,
                                std::uint64_t* evaluations = nullptr);

OwfStrategy exhaustive_inverter(std::uint64_t budget,
                                std::shared_ptr<const SearchIndexCache> cache = nullptr);

// Uniform candidates of the right framing. The candidates are a function of
// (seed, one draw from the caller's stream).
OwfStrategy random_guess_strategy(std::uint64_t seed);

// Budget that fully searches the first `entries` entries: sum of 2^k_i.
std::uint64_t full_search_budget(const PuzzleLayout& layout, std::size_t entries);
// full_search_budget(layout, m) for m = 0 .. max_entries.
std::vector<std::uint64_t> full_search_ladder(const PuzzleLayout& layout,
                                              std::size_t max_entries);

Policy as_policy(const OwfGame& game, OwfStrategy strategy);

struct BestResponse {
  std::size_t index = 0;
  double value = 0.0;
  double half_width = 0.0;
  std::vector<double> member_values;
};

// Evaluates every member against `opponent` on common random numbers (one
// estimator seed for all) and returns the argmax. Ties: smaller budget, then
// list order.
BestResponse best_response_in_family(const OwfGame& game, std::size_t mover,
                                     const OwfStrategy& opponent,
                                     std::span<const OwfStrategy> family,
                                     std::size_t samples, std::uint64_t seed);

struct ArmsRaceRound {
  std::size_t round = 0;
  std::size_t mover = 0;
  std::uint64_t old_budget = 0;
  std::uint64_t new_budget = 0;
  std::uint64_t opponent_budget = 0;
  double value = 0.0;
  double gain = 0.0;
  double half_width = 0.0;

  friend bool operator==(const ArmsRaceRound&, const ArmsRaceRound&) = default;
};

struct ArmsRaceTrace {
  std::size_t n = 0;
  std::vector<std::uint64_t> ladder;
  std::vector<ArmsRaceRound> rounds;
  bool reached_top = false;

  friend bool operator==(const ArmsRaceTrace&, const ArmsRaceTrace&) = default;
};

struct ArmsRaceOptions {
  std::optional<std::size_t> max_key_len;
  bool use_search_cache = true;
};

// Alternating best responses over the budget ladder (exhaustive inverters),
// starting from (ladder[0], ladder[0]) with player 0 moving first. Stops at
// max_rounds, when both sit on the top rung, or after two consecutive rounds
// without a budget change.
ArmsRaceTrace arms_race(std::size_t n, const OwfInstance& inst,
                        std::span<const std::uint64_t> ladder, std::size_t max_rounds,
                        std::size_t samples, std::uint64_t seed,
                        const ArmsRaceOptions& options = {});

struct DeviationGain {
  std::size_t index = 0;
  std::string label;
  std::uint64_t budget = 0;
  double baseline = 0.0;
  double value = 0.0;
  double gain = 0.0;
  double half_width = 0.0;
};

// Estimated gain of `mover` switching from `own` to each family member while
// the opponent keeps `opponent`. Common random numbers throughout.
std::vector<DeviationGain> deviation_gains(const OwfGame& game, std::size_t mover,
                                           const OwfStrategy& own,
                                           const OwfStrategy& opponent,
                                           std::span<const OwfStrategy> family,
                                           std::size_t samples, std::uint64_t seed);

}  // namespace compgame

#endif  // COMPGAME_DYNAMICS_HPP_
