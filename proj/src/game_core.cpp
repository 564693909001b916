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

#include "compgame/game_core.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "compgame/errors.hpp"
#include "compgame/linalg.hpp"

namespace compgame {

// ---------------------------------------------------------------- Space

Space Space::listed(std::vector<BitString> elements) {
  Space s;
  s.listed_ = true;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    s.max_len_ = std::max(s.max_len_, elements[i].size());
    if (!s.index_.emplace(elements[i], i).second) {
      throw ArgumentError("duplicate element " + elements[i].to_string() + " in space");
    }
  }
  s.elements_ = std::move(elements);
  return s;
}

Space Space::bounded(std::size_t max_len) {
  Space s;
  s.max_len_ = max_len;
  return s;
}

const std::vector<BitString>& Space::elements() const {
  if (!listed_) throw UnsupportedModeError("space is only length-bounded, not listed");
  return elements_;
}

std::size_t Space::size() const { return elements().size(); }

std::optional<std::size_t> Space::index_of(const BitString& s) const {
  if (!listed_) return std::nullopt;
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Space::contains(const BitString& s) const {
  if (listed_) return index_.contains(s);
  return s.size() <= max_len_;
}

// ---------------------------------------------------------------- TypeDistribution

TypeDistribution TypeDistribution::table(std::vector<TypeTableEntry> entries) {
  TypeDistribution d;
  Rational total;
  double running = 0.0;
  for (const auto& e : entries) {
    if (e.probability.sign() < 0) throw ArgumentError("negative type probability");
    total += e.probability;
    running += e.probability.to_double();
    d.cumulative_.push_back(running);
  }
  if (total != Rational(1)) {
    throw ArgumentError("type probabilities sum to " + total.str() + ", not 1");
  }
  d.has_table_ = true;
  d.entries_ = std::move(entries);
  return d;
}

TypeDistribution TypeDistribution::sampler(Sampler sampler) {
  TypeDistribution d;
  d.sampler_ = std::move(sampler);
  return d;
}

TypeDistribution TypeDistribution::table_and_sampler(std::vector<TypeTableEntry> entries,
                                                     Sampler sampler) {
  TypeDistribution d = table(std::move(entries));
  d.sampler_ = std::move(sampler);
  return d;
}

const std::vector<TypeTableEntry>& TypeDistribution::entries() const {
  if (!has_table_) {
    throw UnsupportedModeError(
        "type distribution has no explicit table; use estimate_utility");
  }
  return entries_;
}

JointType TypeDistribution::sample(std::span<const Space> type_spaces, Rng& rng) const {
  if (sampler_) return sampler_(rng);
  if (!has_table_) throw UnsupportedModeError("empty type distribution");
  const double u = uniform01(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  std::size_t row = static_cast<std::size_t>(it - cumulative_.begin());
  if (row >= entries_.size()) row = entries_.size() - 1;
  // Never land on a zero-probability row through rounding.
  while (entries_[row].probability.is_zero() && row > 0) --row;
  JointType t;
  t.reserve(type_spaces.size());
  for (std::size_t i = 0; i < type_spaces.size(); ++i) {
    t.push_back(type_spaces[i].elements()[entries_[row].types[i]]);
  }
  return t;
}

// ---------------------------------------------------------------- BayesianGame

BayesianGame::BayesianGame(std::vector<Space> action_spaces, std::vector<Space> type_spaces,
                           TypeDistribution type_dist, UtilityFn utility,
                           std::optional<PayoffRange> declared_range, std::string name)
    : action_spaces_(std::move(action_spaces)),
      type_spaces_(std::move(type_spaces)),
      type_dist_(std::move(type_dist)),
      utility_(std::move(utility)),
      range_(std::move(declared_range)),
      name_(std::move(name)) {
  if (action_spaces_.empty()) throw ArgumentError("a game needs at least one player");
  if (type_spaces_.size() != action_spaces_.size()) {
    throw ArgumentError("action and type spaces disagree on the number of players");
  }
  if (!utility_) throw ArgumentError("game without a utility function");
  if (range_ && range_->hi < range_->lo) throw ArgumentError("payoff range with hi < lo");
  if (type_dist_.has_table()) {
    for (const auto& e : type_dist_.entries()) {
      if (e.types.size() != num_players()) {
        throw ArgumentError("type table row has the wrong arity");
      }
      for (std::size_t i = 0; i < e.types.size(); ++i) {
        if (e.types[i] >= type_spaces_[i].size()) {
          throw ArgumentError("type table row indexes outside the type space");
        }
      }
    }
  }
}

bool BayesianGame::is_enumerable() const {
  auto listed = [](const Space& s) { return s.is_listed(); };
  return std::all_of(action_spaces_.begin(), action_spaces_.end(), listed) &&
         std::all_of(type_spaces_.begin(), type_spaces_.end(), listed);
}

std::vector<Rational> BayesianGame::utilities(const JointAction& b, const JointType& t) const {
  auto v = utility_(b, t);
  if (v.size() != num_players()) {
    throw DomainError("utility function returned " + std::to_string(v.size()) +
                      " payoffs for " + std::to_string(num_players()) + " players");
  }
  return v;
}

void BayesianGame::for_each_outcome(
    const std::function<void(const JointAction&, const JointType&)>& visit) const {
  if (!is_enumerable()) throw UnsupportedModeError("game spaces are not listed");
  const std::size_t k = num_players();
  std::vector<const Space*> spaces;
  for (const auto& s : type_spaces_) spaces.push_back(&s);
  for (const auto& s : action_spaces_) spaces.push_back(&s);
  for (const auto* s : spaces) {
    if (s->size() == 0) return;
  }
  std::vector<std::size_t> idx(spaces.size(), 0);
  JointType t(k);
  JointAction b(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      t[i] = type_spaces_[i].elements()[idx[i]];
      b[i] = action_spaces_[i].elements()[idx[k + i]];
    }
    visit(b, t);
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == spaces[d]->size()) idx[d++] = 0;
    if (d == idx.size()) break;
  }
}

PayoffRange BayesianGame::payoff_range() const {
  if (range_) return *range_;
  if (!is_enumerable()) {
    throw UnsupportedModeError("payoff range unknown for a game with unlisted spaces");
  }
  std::optional<PayoffRange> r;
  for_each_outcome([&](const JointAction& b, const JointType& t) {
    for (const auto& v : utilities(b, t)) {
      if (!r) {
        r = PayoffRange{v, v};
      } else {
        r->lo = std::min(r->lo, v);
        r->hi = std::max(r->hi, v);
      }
    }
  });
  return r.value_or(PayoffRange{});
}

// ---------------------------------------------------------------- MixedStrategy

MixedStrategy::MixedStrategy(std::map<BitString, Table> per_type)
    : per_type_(std::move(per_type)) {
  for (const auto& [type, table] : per_type_) {
    Rational total;
    std::set<BitString> seen;
    for (const auto& [action, p] : table) {
      if (p.sign() < 0) throw ArgumentError("negative action probability");
      if (!seen.insert(action).second) {
        throw ArgumentError("action " + action.to_string() + " listed twice");
      }
      total += p;
    }
    if (total != Rational(1)) {
      throw ArgumentError("mixed strategy for type " + type.to_string() + " sums to " +
                          total.str());
    }
  }
}

MixedStrategy MixedStrategy::pure(const std::map<BitString, BitString>& choice) {
  std::map<BitString, Table> t;
  for (const auto& [type, action] : choice) t[type] = {{action, Rational(1)}};
  return MixedStrategy(std::move(t));
}

MixedStrategy MixedStrategy::constant(const Space& types, const Table& table) {
  std::map<BitString, Table> t;
  for (const auto& type : types.elements()) t[type] = table;
  return MixedStrategy(std::move(t));
}

MixedStrategy MixedStrategy::uniform(const Space& types, const Space& actions) {
  const auto n = static_cast<std::int64_t>(actions.size());
  if (n == 0) throw ArgumentError("uniform strategy over an empty action space");
  Table table;
  for (const auto& a : actions.elements()) table.emplace_back(a, Rational(1, n));
  return constant(types, table);
}

MixedStrategy MixedStrategy::mix(const MixedStrategy& a, const MixedStrategy& b,
                                 const Rational& lambda) {
  if (lambda.sign() < 0 || Rational(1) < lambda) {
    throw ArgumentError("mixing weight outside [0, 1]");
  }
  std::map<BitString, Table> out;
  for (const auto& [type, ta] : a.per_type_) {
    const Table& tb = b.at(type);
    std::map<BitString, Rational> acc;
    for (const auto& [act, p] : ta) acc[act] += lambda * p;
    for (const auto& [act, p] : tb) acc[act] += (Rational(1) - lambda) * p;
    Table t(acc.begin(), acc.end());
    out[type] = std::move(t);
  }
  return MixedStrategy(std::move(out));
}

const MixedStrategy::Table& MixedStrategy::at(const BitString& type) const {
  auto it = per_type_.find(type);
  if (it == per_type_.end()) {
    throw DomainError("strategy has no distribution for type " + type.to_string());
  }
  return it->second;
}

BitString MixedStrategy::sample(const BitString& type, Rng& rng) const {
  const Table& table = at(type);
  const double u = uniform01(rng);
  double acc = 0.0;
  const BitString* last = nullptr;
  for (const auto& [action, p] : table) {
    if (p.is_zero()) continue;
    last = &action;
    acc += p.to_double();
    if (u < acc) return action;
  }
  return *last;
}

// ---------------------------------------------------------------- operations

namespace {

void check_profile(const BayesianGame& game, std::span<const MixedStrategy> profile) {
  if (profile.size() != game.num_players()) {
    throw ArgumentError("profile has " + std::to_string(profile.size()) +
                        " strategies for " + std::to_string(game.num_players()) +
                        " players");
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Space& types = game.types(i);
    if (types.is_listed()) {
      for (const auto& t : types.elements()) {
        if (!profile[i].defines(t)) {
          throw DomainError("strategy of player " + std::to_string(i) +
                            " has no distribution for type " + t.to_string());
        }
      }
    }
    for (const auto& [type, table] : profile[i].tables()) {
      for (const auto& [action, p] : table) {
        if (!game.actions(i).contains(action)) {
          throw DomainError("strategy of player " + std::to_string(i) +
                            " plays " + action.to_string() + " outside its action space");
        }
      }
    }
  }
}

}  // namespace

std::vector<Rational> expected_utility(const BayesianGame& game,
                                       std::span<const MixedStrategy> profile) {
  check_profile(game, profile);
  const auto& entries = game.type_distribution().entries();
  const std::size_t k = game.num_players();
  std::vector<Rational> value(k);

  JointType t(k);
  JointAction b(k);
  std::vector<const MixedStrategy::Table*> tables(k);
  for (const auto& entry : entries) {
    if (entry.probability.is_zero()) continue;
    for (std::size_t i = 0; i < k; ++i) {
      t[i] = game.types(i).elements()[entry.types[i]];
      tables[i] = &profile[i].at(t[i]);
    }
    // Depth-first over the support of s_1(t_1) x ... x s_k(t_k).
    std::function<void(std::size_t, const Rational&)> walk =
        [&](std::size_t player, const Rational& weight) {
          if (player == k) {
            const auto v = game.utilities(b, t);
            for (std::size_t i = 0; i < k; ++i) value[i] += weight * v[i];
            return;
          }
          for (const auto& [action, p] : *tables[player]) {
            if (p.is_zero()) continue;
            b[player] = action;
            walk(player + 1, weight * p);
          }
        };
    walk(0, entry.probability);
  }
  return value;
}

std::vector<UtilityEstimate> estimate_utility(const BayesianGame& game,
                                              std::span<const StrategyRef> profile,
                                              std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw ArgumentError("estimate_utility needs samples >= 1");
  const std::size_t k = game.num_players();
  if (profile.size() != k) throw ArgumentError("profile size does not match players");
  const PayoffRange range = game.payoff_range();

  Rng rng(seed);
  std::vector<double> sum(k, 0.0);
  JointAction b(k);
  for (std::size_t s = 0; s < samples; ++s) {
    const JointType t = game.type_distribution().sample(game.type_spaces(), rng);
    for (std::size_t i = 0; i < k; ++i) {
      b[i] = std::visit(
          [&](const auto& strategy) -> BitString {
            using S = std::decay_t<decltype(strategy)>;
            if constexpr (std::is_same_v<S, MixedStrategy>) {
              return strategy.sample(t[i], rng);
            } else {
              return strategy(t[i], rng);
            }
          },
          profile[i]);
    }
    const auto v = game.utilities(b, t);
    for (std::size_t i = 0; i < k; ++i) sum[i] += v[i].to_double();
  }

  const double width =
      hoeffding_half_width((range.hi - range.lo).to_double(), samples);
  std::vector<UtilityEstimate> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i].estimate = sum[i] / static_cast<double>(samples);
    out[i].half_width = width;
  }
  return out;
}

NeVerdict is_epsilon_ne(const BayesianGame& game, std::span<const MixedStrategy> profile,
                        const Rational& epsilon,
                        const std::vector<std::vector<MixedStrategy>>& deviations) {
  if (epsilon.sign() < 0) throw ArgumentError("epsilon must be >= 0");
  if (!deviations.empty() && deviations.size() != game.num_players()) {
    throw ArgumentError("need one deviation list per player");
  }
  const auto base = expected_utility(game, profile);
  NeVerdict verdict;
  std::vector<MixedStrategy> trial(profile.begin(), profile.end());
  for (std::size_t i = 0; i < deviations.size(); ++i) {
    for (std::size_t d = 0; d < deviations[i].size(); ++d) {
      trial[i] = deviations[i][d];
      const Rational gain = expected_utility(game, trial)[i] - base[i];
      if (epsilon < gain && (!verdict.witness || verdict.witness->gain < gain)) {
        verdict.is_ne = false;
        verdict.witness = DeviationWitness{i, d, gain};
      }
    }
    trial[i] = profile[i];
  }
  return verdict;
}

std::vector<MixedStrategy> all_pure_strategies(const BayesianGame& game, std::size_t player) {
  const auto& types = game.types(player).elements();
  const auto& actions = game.actions(player).elements();
  if (actions.empty()) return {};
  double count = 1.0;
  for (std::size_t i = 0; i < types.size(); ++i) count *= static_cast<double>(actions.size());
  if (count > 1e6) throw UnsupportedModeError("too many pure strategies to enumerate");

  std::vector<MixedStrategy> out;
  std::vector<std::size_t> idx(types.size(), 0);
  while (true) {
    std::map<BitString, BitString> choice;
    for (std::size_t j = 0; j < types.size(); ++j) choice[types[j]] = actions[idx[j]];
    out.push_back(MixedStrategy::pure(choice));
    // Last type varies fastest.
    std::size_t d = types.size();
    while (d > 0 && ++idx[d - 1] == actions.size()) idx[--d] = 0;
    if (d == 0) break;
  }
  return out;
}

bool check_bounded(const BayesianGame& game, const Rational& c, const Rational& big_c) {
  if (c.sign() <= 0) throw ArgumentError("check_bounded needs c > 0");
  if (big_c < c) throw ArgumentError("check_bounded needs c <= C");
  bool ok = true;
  game.for_each_outcome([&](const JointAction& b, const JointType& t) {
    if (!ok) return;
    for (const auto& v : game.utilities(b, t)) {
      if (v.is_zero()) continue;
      const Rational a = v.abs();
      if (a < c || big_c < a) ok = false;
    }
  });
  return ok;
}

std::uint64_t Polynomial::operator()(std::uint64_t n) const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * n + *it;
    if (acc > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(acc);
}

void GameSequenceMeta::validate() const {
  if (!bounded_range) return;
  const auto& [c, big_c] = *bounded_range;
  if (c.sign() <= 0 || big_c < c) {
    throw ArgumentError("bounded range needs 0 < c <= C");
  }
}

}  // namespace compgame
