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

#include "compgame/games.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "compgame/errors.hpp"

namespace compgame {

std::size_t ceil_log2(std::uint64_t n) {
  if (n == 0) throw ArgumentError("ceil_log2(0)");
  std::size_t l = 0;
  while (l < 64 && (std::uint64_t{1} << l) < n) ++l;
  return l;
}

std::size_t PuzzleLayout::type_len() const {
  std::size_t s = 0;
  for (auto m : image_lengths) s += m;
  return s;
}

std::size_t PuzzleLayout::action_len() const {
  std::size_t s = 0;
  for (auto k : key_lengths) s += k;
  return s;
}

namespace {

PuzzleLayout layout_from_keys(std::size_t n, const std::vector<std::size_t>& keys,
                              const OwfInstance& inst) {
  PuzzleLayout layout;
  layout.n = n;
  for (auto k : keys) {
    if (!inst.supports(k)) {
      throw ArgumentError("key length " + std::to_string(k) + " is outside the support of " +
                          std::string(to_string(inst.kind())));
    }
    layout.key_lengths.push_back(k);
    layout.image_lengths.push_back(inst.output_len(k));
  }
  return layout;
}

}  // namespace

PuzzleLayout owf_game_layout(std::size_t n, const OwfInstance& inst,
                             std::optional<std::size_t> max_key_len) {
  if (n < 2) throw ArgumentError("the OWF game needs n >= 2");
  const std::size_t l = ceil_log2(n);
  std::vector<std::size_t> keys;
  for (std::size_t i = 1; i <= l; ++i) {
    if (max_key_len && i * l > *max_key_len) break;
    keys.push_back(i * l);
  }
  if (keys.empty()) throw ArgumentError("key length cap leaves no puzzle entries");
  return layout_from_keys(n, keys, inst);
}

PuzzleLayout single_puzzle_layout(std::size_t n, const OwfInstance& inst) {
  if (n < 1) throw ArgumentError("the single-puzzle game needs n >= 1");
  return layout_from_keys(n, {n}, inst);
}

BitString encode_type(const PuzzleTuple& tuple) { return BitString::concat(tuple.images); }

PuzzleTuple decode_type(const PuzzleLayout& layout, const BitString& type) {
  if (type.size() != layout.type_len()) {
    throw ArgumentError("type has length " + std::to_string(type.size()) + ", layout needs " +
                        std::to_string(layout.type_len()));
  }
  PuzzleTuple tuple;
  tuple.n = layout.n;
  tuple.key_lengths = layout.key_lengths;
  std::size_t pos = 0;
  for (auto m : layout.image_lengths) {
    tuple.images.push_back(type.slice(pos, m));
    pos += m;
  }
  return tuple;
}

BitString encode_action(const OwfGameAction& action) {
  return BitString::concat(action.candidates);
}

OwfGameAction decode_action(const PuzzleLayout& layout, const BitString& action) {
  if (action.size() != layout.action_len()) {
    throw ArgumentError("action has length " + std::to_string(action.size()) +
                        ", layout needs " + std::to_string(layout.action_len()));
  }
  OwfGameAction out;
  std::size_t pos = 0;
  for (auto k : layout.key_lengths) {
    out.candidates.push_back(action.slice(pos, k));
    pos += k;
  }
  return out;
}

std::int64_t count_hits(const PuzzleTuple& tuple, const OwfGameAction& action,
                        const OwfInstance& inst) {
  if (action.candidates.size() != tuple.images.size() ||
      tuple.key_lengths.size() != tuple.images.size()) {
    throw ArgumentError("candidate list does not match the puzzle tuple");
  }
  std::int64_t hits = 0;
  for (std::size_t i = 0; i < tuple.images.size(); ++i) {
    if (action.candidates[i].size() != tuple.key_lengths[i]) {
      throw ArgumentError("candidate " + std::to_string(i + 1) + " has length " +
                          std::to_string(action.candidates[i].size()) + ", expected " +
                          std::to_string(tuple.key_lengths[i]));
    }
    if (check_inverts(inst, tuple.images[i], action.candidates[i], tuple.key_lengths[i])) {
      ++hits;
    }
  }
  return hits;
}

std::pair<Rational, Rational> owf_payoff(std::int64_t a1, std::int64_t a2) {
  if (a1 < 0 || a2 < 0) throw ArgumentError("hit counts must be >= 0");
  const int s = (a1 > a2) - (a1 < a2);
  return {Rational(s), Rational(-s)};
}

SampledPuzzles sample_puzzle_tuple(const PuzzleLayout& layout, const OwfInstance& inst,
                                   Rng& rng) {
  SampledPuzzles out;
  out.tuple.n = layout.n;
  out.tuple.key_lengths = layout.key_lengths;
  for (auto k : layout.key_lengths) {
    Puzzle p = sample_puzzle(inst, k, rng);
    out.tuple.images.push_back(std::move(p.image));
    out.secrets.push_back(std::move(p.secret));
  }
  return out;
}

namespace {

std::vector<BitString> all_strings(std::size_t len) {
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << len);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
    out.push_back(BitString::from_uint(v, len));
  }
  return out;
}

// Exact prior of the shared type: P(t) = prod_i #f^-1(t_i) / 2^k_i.
std::vector<TypeTableEntry> exact_prior(const PuzzleLayout& layout, const OwfInstance& inst,
                                        const Space& types) {
  std::vector<std::map<BitString, std::int64_t>> preimages(layout.entries());
  for (std::size_t i = 0; i < layout.entries(); ++i) {
    for (const auto& x : all_strings(layout.key_lengths[i])) ++preimages[i][inst.eval(x)];
  }
  std::vector<TypeTableEntry> entries;
  for (std::size_t idx = 0; idx < types.size(); ++idx) {
    const PuzzleTuple tuple = decode_type(layout, types.elements()[idx]);
    Rational p(1);
    for (std::size_t i = 0; i < layout.entries() && !p.is_zero(); ++i) {
      auto it = preimages[i].find(tuple.images[i]);
      const std::int64_t count = it == preimages[i].end() ? 0 : it->second;
      p *= Rational(count, std::int64_t{1} << layout.key_lengths[i]);
    }
    if (!p.is_zero()) entries.push_back({{idx, idx}, p});
  }
  return entries;
}

OwfGame assemble(PuzzleLayout layout, const OwfInstance& inst, GameSequenceMeta meta,
                 const OwfGameOptions& options, std::string name) {
  const std::size_t bits = layout.type_len() + layout.action_len();
  const bool explicit_spaces =
      2 * bits < 64 && (std::uint64_t{1} << (2 * bits)) <= options.explicit_limit;

  auto utility = [layout, inst](const JointAction& b, const JointType& t) {
    const PuzzleTuple tuple = decode_type(layout, t[0]);
    const std::int64_t a1 = count_hits(tuple, decode_action(layout, b[0]), inst);
    const std::int64_t a2 = count_hits(tuple, decode_action(layout, b[1]), inst);
    auto [v1, v2] = owf_payoff(a1, a2);
    return std::vector<Rational>{v1, v2};
  };
  TypeDistribution::Sampler sampler = [layout, inst](Rng& rng) {
    const BitString t = encode_type(sample_puzzle_tuple(layout, inst, rng).tuple);
    return JointType{t, t};
  };

  std::vector<Space> actions;
  std::vector<Space> types;
  TypeDistribution prior;
  if (explicit_spaces) {
    const Space a = Space::listed(all_strings(layout.action_len()));
    const Space t = Space::listed(all_strings(layout.type_len()));
    actions = {a, a};
    types = {t, t};
    prior = TypeDistribution::table_and_sampler(exact_prior(layout, inst, t), sampler);
  } else {
    actions = {Space::bounded(layout.action_len()), Space::bounded(layout.action_len())};
    types = {Space::bounded(layout.type_len()), Space::bounded(layout.type_len())};
    prior = TypeDistribution::sampler(sampler);
  }
  BayesianGame game(std::move(actions), std::move(types), std::move(prior), utility,
                    PayoffRange{Rational(-1), Rational(1)}, std::move(name));
  return OwfGame{std::move(layout), inst, std::move(meta), std::move(game)};
}

Polynomial monomial(std::size_t degree) {
  Polynomial p;
  p.coefficients.assign(degree + 1, 0);
  p.coefficients[degree] = 1;
  return p;
}

// Degree of a monomial bound on m = ceil(k^b) summed over the entries.
std::size_t image_degree(const OwfInstance& inst, std::size_t key_degree) {
  const double b = inst.output_len_exponent().to_double();
  return std::max<std::size_t>(key_degree,
                               static_cast<std::size_t>(std::ceil(b * key_degree)));
}

}  // namespace

OwfGame build_owf_game(std::size_t n, const OwfInstance& inst, const OwfGameOptions& options) {
  PuzzleLayout layout = owf_game_layout(n, inst, options.max_key_len);
  GameSequenceMeta meta;
  // L * l(l+1)/2 <= n^2 for every n >= 2; images add the exponent b.
  meta.action_len = monomial(2);
  meta.type_len = monomial(image_degree(inst, 2));
  meta.utility_time = monomial(image_degree(inst, 2) + 1);
  meta.bounded_range = std::make_pair(Rational(1), Rational(1));
  meta.validate();
  return assemble(std::move(layout), inst, std::move(meta), options,
                  "owf-game(n=" + std::to_string(n) + ")");
}

OwfGame build_single_puzzle_game(std::size_t n, const OwfInstance& inst,
                                 const OwfGameOptions& options) {
  PuzzleLayout layout = single_puzzle_layout(n, inst);
  GameSequenceMeta meta;
  meta.action_len = monomial(1);
  meta.type_len = monomial(image_degree(inst, 1));
  meta.utility_time = monomial(image_degree(inst, 1) + 1);
  meta.bounded_range = std::make_pair(Rational(1), Rational(1));
  meta.validate();
  return assemble(std::move(layout), inst, std::move(meta), options,
                  "single-puzzle(n=" + std::to_string(n) + ")");
}

std::uint64_t owf_game_action_len(std::uint64_t n) {
  const std::uint64_t l = ceil_log2(n);
  return l * l * (l + 1) / 2;
}

// ---------------------------------------------------------------- pennies

PenniesOutcome pennies_outcome(const BitString& output_a, const BitString& output_b) {
  auto read = [](const BitString& out, bool& bit, std::int64_t& chars) {
    if (out.empty()) throw DomainError("machine produced no phase-1 bit");
    bit = out[0];
    chars = static_cast<std::int64_t>(out.size()) - 1;
    if (out.count_ones() - (bit ? 1 : 0) != out.size() - 1) {
      throw DomainError("printed characters must be 1s: " + out.to_string());
    }
  };
  PenniesOutcome o;
  read(output_a, o.a1, o.chars_a);
  read(output_b, o.b1, o.chars_b);
  return o;
}

std::pair<Rational, Rational> pennies_payoff(const PenniesOutcome& outcome) {
  std::int64_t a = outcome.a1 == outcome.b1 ? 1 : -1;
  a += (outcome.chars_a > outcome.chars_b) - (outcome.chars_a < outcome.chars_b);
  return {Rational(a), Rational(-a)};
}

PenniesGame::PenniesGame(std::int64_t budget, StepCostTable costs,
                         std::vector<Rational> biases)
    : budget_(budget), costs_(costs), biases_(std::move(biases)) {
  if (budget_ <= 2) throw ArgumentError("the pennies game needs T > 2");
  costs_.validate();
  family_ = enumerate_machines(budget_, biases_, PhaseSchema::kBitThenPrint, costs_);
  for (bool b : {false, true}) {
    for (std::int64_t c = 0; c <= budget_; ++c) {
      BitString s = BitString::ones(static_cast<std::size_t>(c) + 1);
      std::vector<bool> bits = s.bits();
      bits[0] = b;
      const std::size_t len = bits.size();
      outcomes_.emplace_back(std::move(bits), len);
    }
  }
}

VectorQ PenniesGame::outcome_law(const StrategyMachine& machine) const {
  const OutputDistribution d = machine_distribution(machine, costs_);
  VectorQ law = VectorQ::Zero(static_cast<Eigen::Index>(outcomes_.size()));
  for (const auto& [out, p] : d.probabilities()) {
    auto it = std::find(outcomes_.begin(), outcomes_.end(), out);
    if (it == outcomes_.end()) {
      throw DomainError("output " + out.to_string() + " is not a pennies outcome");
    }
    law(it - outcomes_.begin()) = p;
  }
  return law;
}

MatrixQ PenniesGame::outcome_laws(std::span<const StrategyMachine> family) const {
  MatrixQ d(static_cast<Eigen::Index>(outcomes_.size()),
            static_cast<Eigen::Index>(family.size()));
  for (std::size_t j = 0; j < family.size(); ++j) {
    d.col(static_cast<Eigen::Index>(j)) = outcome_law(family[j]);
  }
  return d;
}

MatrixQ PenniesGame::outcome_payoffs(std::size_t player) const {
  if (player > 1) throw ArgumentError("the pennies game has two players");
  const auto n = static_cast<Eigen::Index>(outcomes_.size());
  MatrixQ u(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      auto [va, vb] = pennies_payoff(pennies_outcome(outcomes_[i], outcomes_[j]));
      u(i, j) = player == 0 ? va : vb;
    }
  }
  return u;
}

std::pair<Rational, Rational> PenniesGame::payoff(const StrategyMachine& a,
                                                  const StrategyMachine& b) const {
  const VectorQ la = outcome_law(a);
  const VectorQ lb = outcome_law(b);
  return {bilinear(la, outcome_payoffs(0), lb), bilinear(la, outcome_payoffs(1), lb)};
}

std::array<MatrixQ, 2> PenniesGame::payoff_matrices(
    std::span<const StrategyMachine> family) const {
  const MatrixQ d = outcome_laws(family);
  return {family_payoffs(d, outcome_payoffs(0), d), family_payoffs(d, outcome_payoffs(1), d)};
}

BayesianGame PenniesGame::outcome_game() const {
  const Space actions = Space::listed(outcomes_);
  const Space types = Space::listed({BitString()});
  auto utility = [](const JointAction& b, const JointType&) {
    auto [va, vb] = pennies_payoff(pennies_outcome(b[0], b[1]));
    return std::vector<Rational>{va, vb};
  };
  return BayesianGame({actions, actions}, {types, types},
                      TypeDistribution::table({{{0, 0}, Rational(1)}}), utility,
                      PayoffRange{Rational(-2), Rational(2)},
                      "pennies(T=" + std::to_string(budget_) + ")");
}

MixedStrategy PenniesGame::as_mixed_strategy(const StrategyMachine& machine) const {
  const VectorQ law = outcome_law(machine);
  MixedStrategy::Table table;
  for (Eigen::Index i = 0; i < law.size(); ++i) {
    if (!law(i).is_zero()) table.emplace_back(outcomes_[static_cast<std::size_t>(i)], law(i));
  }
  return MixedStrategy({{BitString(), table}});
}

PenniesGame build_pennies_game(std::int64_t budget, const StepCostTable& costs,
                               std::span<const Rational> biases) {
  return PenniesGame(budget, costs, std::vector<Rational>(biases.begin(), biases.end()));
}

}  // namespace compgame
