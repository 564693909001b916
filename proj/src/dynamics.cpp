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

#include "compgame/dynamics.hpp"

#include <algorithm>
#include <future>
#include <limits>

#include "compgame/errors.hpp"

namespace compgame {

// ---------------------------------------------------------------- search index

struct SearchIndexCache::Index {
  std::uint64_t covered = 0;
  // Dense: first[y] = smallest z < covered with f(z) = y, or kNone.
  std::vector<std::uint32_t> first;
  // Sparse: (y, smallest z) sorted by y.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;

  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  std::optional<std::uint64_t> lookup(std::uint64_t image) const {
    if (!first.empty()) {
      if (image >= first.size() || first[image] == kNone) return std::nullopt;
      return first[image];
    }
    auto it = std::lower_bound(pairs.begin(), pairs.end(),
                               std::make_pair(image, std::uint64_t{0}));
    if (it == pairs.end() || it->first != image) return std::nullopt;
    return it->second;
  }
};

SearchIndexCache::SearchIndexCache(OwfInstance inst) : inst_(std::move(inst)) {}

bool SearchIndexCache::supports(std::size_t k, std::uint64_t prefix) const {
  if (!inst_.supports(k) || k > 63 || inst_.output_len(k) > 64) return false;
  return prefix <= kMaxIndexedPrefix && prefix <= (std::uint64_t{1} << k);
}

std::shared_ptr<const SearchIndexCache::Index> SearchIndexCache::index_for(
    std::size_t k, std::uint64_t prefix) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = indices_[k];
  if (slot && slot->covered >= prefix) return slot;

  const std::uint64_t cap = std::min(kMaxIndexedPrefix, std::uint64_t{1} << k);
  const std::uint64_t old = slot ? slot->covered : 0;
  const std::uint64_t covered = std::min(cap, std::max(prefix, 2 * old));
  const std::size_t m = inst_.output_len(k);

  auto index = std::make_shared<Index>();
  index->covered = covered;
  if (m <= 24) {
    index->first = slot && !slot->first.empty()
                       ? slot->first
                       : std::vector<std::uint32_t>(std::size_t{1} << m, Index::kNone);
    for (std::uint64_t z = old; z < covered; ++z) {
      auto& cell = index->first[inst_.eval_packed(k, z)];
      if (cell == Index::kNone) cell = static_cast<std::uint32_t>(z);
    }
  } else {
    if (slot) index->pairs = slot->pairs;
    index->pairs.reserve(covered);
    for (std::uint64_t z = old; z < covered; ++z) {
      index->pairs.emplace_back(inst_.eval_packed(k, z), z);
    }
    std::sort(index->pairs.begin(), index->pairs.end());
    auto last = std::unique(index->pairs.begin(), index->pairs.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; });
    index->pairs.erase(last, index->pairs.end());
  }
  slot = index;
  return slot;
}

SearchIndexCache::Result SearchIndexCache::search(std::size_t k, std::uint64_t image,
                                                  std::uint64_t prefix) const {
  if (!supports(k, prefix)) throw ArgumentError("search outside the indexed range");
  Result r;
  if (prefix == 0) return r;
  const auto index = index_for(k, prefix);
  const auto z = index->lookup(image);
  if (z && *z < prefix) {
    r.preimage = *z;
    r.evaluations = *z + 1;
  } else {
    r.evaluations = prefix;
  }
  return r;
}

// ---------------------------------------------------------------- inverters

namespace {

struct ScanResult {
  std::optional<BitString> preimage;
  std::uint64_t evaluations = 0;
};

ScanResult literal_scan(const OwfInstance& inst, std::size_t k, const BitString& image,
                        std::uint64_t prefix) {
  ScanResult r;
  const bool packed = k <= 64 && image.size() <= 64;
  const std::uint64_t target = packed ? image.to_uint64() : 0;
  for (std::uint64_t z = 0; z < prefix; ++z) {
    ++r.evaluations;
    const bool hit = packed ? inst.eval_packed(k, z) == target
                            : inst.eval(BitString::from_uint(z, k)) == image;
    if (hit) {
      r.preimage = BitString::from_uint(z, k);
      break;
    }
  }
  return r;
}

}  // namespace

OwfGameAction exhaustive_invert(const PuzzleTuple& tuple, const OwfInstance& inst,
                                std::uint64_t budget, const SearchIndexCache* cache,
                                std::uint64_t* evaluations) {
  if (tuple.images.size() != tuple.key_lengths.size()) {
    throw ArgumentError("malformed puzzle tuple");
  }
  if (cache != nullptr && !cache->instance().same_function(inst)) cache = nullptr;

  OwfGameAction action;
  std::uint64_t remaining = budget;
  std::uint64_t used = 0;
  bool stopped = false;
  for (std::size_t i = 0; i < tuple.images.size(); ++i) {
    const std::size_t k = tuple.key_lengths[i];
    if (stopped) {
      action.candidates.push_back(BitString::zeros(k));
      continue;
    }
    const bool full = k < 64 && remaining >= (std::uint64_t{1} << k);
    const std::uint64_t scan = full ? (std::uint64_t{1} << k) : remaining;

    ScanResult r;
    const BitString& image = tuple.images[i];
    if (cache != nullptr && image.size() <= 64 && cache->supports(k, scan)) {
      const auto hit = cache->search(k, image.to_uint64(), scan);
      r.evaluations = hit.evaluations;
      if (hit.preimage) r.preimage = BitString::from_uint(*hit.preimage, k);
    } else {
      r = literal_scan(inst, k, image, scan);
    }
    used += r.evaluations;
    remaining -= r.evaluations;
    action.candidates.push_back(r.preimage ? *r.preimage : BitString::zeros(k));
    if (!full) stopped = true;
  }
  if (evaluations != nullptr) *evaluations = used;
  return action;
}

OwfStrategy exhaustive_inverter(std::uint64_t budget,
                                std::shared_ptr<const SearchIndexCache> cache) {
  OwfStrategy s;
  s.label = "exhaustive(" + std::to_string(budget) + ")";
  s.budget = budget;
  s.respond = [budget, cache](const PuzzleTuple& tuple, const OwfInstance& inst, Rng&) {
    return exhaustive_invert(tuple, inst, budget, cache.get());
  };
  return s;
}

OwfStrategy random_guess_strategy(std::uint64_t seed) {
  OwfStrategy s;
  s.label = "random_guess";
  s.budget = 0;
  s.respond = [seed](const PuzzleTuple& tuple, const OwfInstance&, Rng& rng) {
    Rng local(derive_seed(seed, rng()));
    OwfGameAction action;
    for (auto k : tuple.key_lengths) action.candidates.push_back(random_bits(local, k));
    return action;
  };
  return s;
}

std::uint64_t full_search_budget(const PuzzleLayout& layout, std::size_t entries) {
  if (entries > layout.entries()) {
    throw ArgumentError("layout has only " + std::to_string(layout.entries()) + " entries");
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < entries; ++i) {
    const std::size_t k = layout.key_lengths[i];
    if (k >= 63 || total > (std::uint64_t{1} << 62)) {
      throw ArgumentError("full-search budget overflows 64 bits");
    }
    total += std::uint64_t{1} << k;
  }
  return total;
}

std::vector<std::uint64_t> full_search_ladder(const PuzzleLayout& layout,
                                              std::size_t max_entries) {
  std::vector<std::uint64_t> ladder;
  for (std::size_t m = 0; m <= max_entries; ++m) ladder.push_back(full_search_budget(layout, m));
  return ladder;
}

Policy as_policy(const OwfGame& game, OwfStrategy strategy) {
  return [layout = game.layout, inst = game.inst, strategy = std::move(strategy)](
             const BitString& type, Rng& rng) {
    return encode_action(strategy.respond(decode_type(layout, type), inst, rng));
  };
}

// ---------------------------------------------------------------- best response

namespace {

UtilityEstimate estimate_for(const OwfGame& game, std::size_t mover, const OwfStrategy& own,
                             const OwfStrategy& opponent, std::size_t samples,
                             std::uint64_t seed) {
  std::vector<StrategyRef> profile(2);
  profile[mover] = as_policy(game, own);
  profile[1 - mover] = as_policy(game, opponent);
  return estimate_utility(game.game, profile, samples, seed)[mover];
}

std::vector<UtilityEstimate> estimate_family(const OwfGame& game, std::size_t mover,
                                             const OwfStrategy& opponent,
                                             std::span<const OwfStrategy> family,
                                             std::size_t samples, std::uint64_t seed) {
  std::vector<std::future<UtilityEstimate>> jobs;
  jobs.reserve(family.size());
  for (const auto& member : family) {
    jobs.push_back(std::async(std::launch::async, [&, member_ptr = &member] {
      return estimate_for(game, mover, *member_ptr, opponent, samples, seed);
    }));
  }
  std::vector<UtilityEstimate> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

void check_mover(const OwfGame& game, std::size_t mover) {
  if (game.game.num_players() != 2 || mover > 1) {
    throw ArgumentError("puzzle games have two players");
  }
}

}  // namespace

BestResponse best_response_in_family(const OwfGame& game, std::size_t mover,
                                     const OwfStrategy& opponent,
                                     std::span<const OwfStrategy> family,
                                     std::size_t samples, std::uint64_t seed) {
  check_mover(game, mover);
  if (family.empty()) throw ArgumentError("best response over an empty family");
  const auto estimates = estimate_family(game, mover, opponent, family, samples, seed);

  BestResponse br;
  for (std::size_t i = 0; i < family.size(); ++i) {
    br.member_values.push_back(estimates[i].estimate);
    const bool better =
        i == 0 || estimates[i].estimate > br.value ||
        (estimates[i].estimate == br.value && family[i].budget < family[br.index].budget);
    if (better) {
      br.index = i;
      br.value = estimates[i].estimate;
      br.half_width = estimates[i].half_width;
    }
  }
  return br;
}

ArmsRaceTrace arms_race(std::size_t n, const OwfInstance& inst,
                        std::span<const std::uint64_t> ladder, std::size_t max_rounds,
                        std::size_t samples, std::uint64_t seed,
                        const ArmsRaceOptions& options) {
  if (ladder.empty()) throw ArgumentError("empty budget ladder");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] <= ladder[i - 1]) throw ArgumentError("ladder must be strictly increasing");
  }
  if (max_rounds < 1) throw ArgumentError("arms race needs max_rounds >= 1");

  OwfGameOptions game_options;
  game_options.max_key_len = options.max_key_len;
  const OwfGame game = build_owf_game(n, inst, game_options);

  std::shared_ptr<const SearchIndexCache> cache;
  if (options.use_search_cache) cache = std::make_shared<SearchIndexCache>(inst);
  std::vector<OwfStrategy> family;
  for (auto b : ladder) family.push_back(exhaustive_inverter(b, cache));

  ArmsRaceTrace trace;
  trace.n = n;
  trace.ladder.assign(ladder.begin(), ladder.end());
  const std::size_t top = ladder.size() - 1;
  std::size_t rung[2] = {0, 0};
  std::size_t idle = 0;
  for (std::size_t r = 0; r < max_rounds; ++r) {
    const std::size_t mover = r % 2;
    const BestResponse br = best_response_in_family(
        game, mover, family[rung[1 - mover]], family, samples, derive_seed(seed, r));

    ArmsRaceRound round;
    round.round = r + 1;
    round.mover = mover;
    round.old_budget = ladder[rung[mover]];
    round.new_budget = ladder[br.index];
    round.opponent_budget = ladder[rung[1 - mover]];
    round.value = br.value;
    round.gain = br.value - br.member_values[rung[mover]];
    round.half_width = br.half_width;
    trace.rounds.push_back(round);

    idle = br.index == rung[mover] ? idle + 1 : 0;
    rung[mover] = br.index;
    if (rung[0] == top && rung[1] == top) break;
    if (idle >= 2) break;
  }
  trace.reached_top = rung[0] == top && rung[1] == top;
  return trace;
}

std::vector<DeviationGain> deviation_gains(const OwfGame& game, std::size_t mover,
                                           const OwfStrategy& own,
                                           const OwfStrategy& opponent,
                                           std::span<const OwfStrategy> family,
                                           std::size_t samples, std::uint64_t seed) {
  check_mover(game, mover);
  const UtilityEstimate base = estimate_for(game, mover, own, opponent, samples, seed);
  const auto estimates = estimate_family(game, mover, opponent, family, samples, seed);
  std::vector<DeviationGain> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    DeviationGain g;
    g.index = i;
    g.label = family[i].label;
    g.budget = family[i].budget;
    g.baseline = base.estimate;
    g.value = estimates[i].estimate;
    g.gain = estimates[i].estimate - base.estimate;
    g.half_width = estimates[i].half_width;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace compgame
