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

#include <gtest/gtest.h>

#include "compgame/errors.hpp"
#include "test_util.hpp"

namespace compgame {
namespace {

using testing::bs;

const StrategyMachine& by_label(const PenniesGame& g, const std::string& label) {
  for (const auto& m : g.family()) {
    if (m.label == label) return m;
  }
  throw std::runtime_error("no machine " + label);
}

BitString flipped(const BitString& s, std::size_t i) {
  std::vector<bool> bits = s.bits();
  bits[i] = !bits[i];
  return BitString(bits, bits.size());
}

std::vector<Rational> default_biases() {
  return {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
}

TEST(CeilLog2Test, SmallValues) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
  EXPECT_EQ(ceil_log2(4), 2u);
  EXPECT_EQ(ceil_log2(5), 3u);
  EXPECT_EQ(ceil_log2(65536), 16u);
  EXPECT_EQ(ceil_log2(65537), 17u);
}

TEST(OwfPayoffTest, Examples) {
  EXPECT_EQ(owf_payoff(2, 0), std::make_pair(Rational(1), Rational(-1)));
  EXPECT_EQ(owf_payoff(1, 1), std::make_pair(Rational(0), Rational(0)));
  EXPECT_EQ(owf_payoff(0, 3), std::make_pair(Rational(-1), Rational(1)));
  EXPECT_THROW(owf_payoff(-1, 0), ArgumentError);
}

TEST(OwfPayoffTest, AntisymmetricAndZeroSumOnGrid) {
  for (std::int64_t a = 0; a <= 64; ++a) {
    for (std::int64_t b = 0; b <= 64; ++b) {
      const auto [u, v] = owf_payoff(a, b);
      const auto [x, y] = owf_payoff(b, a);
      EXPECT_EQ(u, y);
      EXPECT_EQ(v, x);
      EXPECT_TRUE((u + v).is_zero());
    }
  }
}

TEST(OwfGameTest, LayoutForFourPuzzles) {
  const auto g = build_owf_game(4, OwfInstance::random_table(1));
  EXPECT_EQ(g.layout.key_lengths, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(g.layout.image_lengths, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(g.layout.action_len(), 6u);
  EXPECT_EQ(g.layout.type_len(), 6u);
}

TEST(OwfGameTest, KeyLengthCapAndSupport) {
  const auto table = OwfInstance::random_table(1);
  EXPECT_THROW(build_owf_game(64, table), ArgumentError);  // keys up to 36
  const auto capped = build_owf_game(64, table, {.max_key_len = 24});
  EXPECT_EQ(capped.layout.key_lengths, (std::vector<std::size_t>{6, 12, 18, 24}));
  EXPECT_THROW(build_owf_game(1, table), ArgumentError);
}

TEST(OwfGameTest, PolynomialCertificationUpTo65536) {
  const auto inst = OwfInstance::hash_truncate();
  const GameSequenceMeta meta = build_owf_game(65536, inst).meta;
  for (std::uint64_t n = 2; n <= 65536; ++n) {
    const PuzzleLayout layout = owf_game_layout(n, inst);
    const std::uint64_t l = ceil_log2(n);
    ASSERT_EQ(layout.entries(), l);
    // Closed form: sum_{i=1..l} i*l.
    std::uint64_t sum = 0;
    for (std::uint64_t i = 1; i <= l; ++i) sum += i * l;
    ASSERT_EQ(layout.action_len(), sum) << n;
    ASSERT_EQ(owf_game_action_len(n), sum) << n;
    ASSERT_LE(layout.action_len(), meta.action_len(n)) << n;
    ASSERT_LE(layout.type_len(), meta.type_len(n)) << n;
  }
}

TEST(OwfGameTest, TypeAndActionFramingRoundTrip) {
  const auto inst = OwfInstance::random_table(3);
  const auto layout = owf_game_layout(8, inst);
  Rng rng(8);
  const SampledPuzzles p = sample_puzzle_tuple(layout, inst, rng);
  const BitString type = encode_type(p.tuple);
  EXPECT_EQ(type.size(), layout.type_len());
  const PuzzleTuple back = decode_type(layout, type);
  EXPECT_EQ(back.images, p.tuple.images);
  const BitString action = encode_action({p.secrets});
  EXPECT_EQ(decode_action(layout, action).candidates, p.secrets);
  EXPECT_THROW(decode_action(layout, BitString::zeros(layout.action_len() + 1)),
               ArgumentError);
}

TEST(CountHitsTest, Examples) {
  const auto inst = OwfInstance::random_table(11);
  const auto layout = owf_game_layout(16, inst);  // keys 4, 8, 12, 16
  ASSERT_EQ(layout.entries(), 4u);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const SampledPuzzles p = sample_puzzle_tuple(layout, inst, rng);
    EXPECT_EQ(count_hits(p.tuple, {p.secrets}, inst), 4);
    OwfGameAction two{p.secrets};
    for (std::size_t i = 2; i < 4; ++i) {
      // Replace with a non-preimage; the table is a permutation.
      two.candidates[i] = flipped(p.secrets[i], 0);
    }
    EXPECT_EQ(count_hits(p.tuple, two, inst), 2);
  }
}

TEST(CountHitsTest, AllZeroCandidatesRarelyHit) {
  const auto inst = OwfInstance::random_table(12);
  const auto layout = owf_game_layout(4096, inst, 24);  // keys 12, 24
  ASSERT_EQ(layout.key_lengths, (std::vector<std::size_t>{12, 24}));
  OwfGameAction zeros;
  for (auto k : layout.key_lengths) zeros.candidates.push_back(BitString::zeros(k));
  Rng rng(99);
  int nonzero = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    if (count_hits(sample_puzzle_tuple(layout, inst, rng).tuple, zeros, inst) != 0) ++nonzero;
  }
  // Expected about 2000 * 2 * 2^-12 < 1.
  EXPECT_LE(nonzero, 4);
}

TEST(CountHitsTest, FramingMismatch) {
  const auto inst = OwfInstance::random_table(1);
  const auto layout = owf_game_layout(4, inst);
  Rng rng(1);
  const auto p = sample_puzzle_tuple(layout, inst, rng);
  EXPECT_THROW(count_hits(p.tuple, {{bs("00")}}, inst), ArgumentError);
  EXPECT_THROW(count_hits(p.tuple, {{bs("00"), bs("000")}}, inst), ArgumentError);
}

TEST(CountHitsTest, AddingAPreimageNeverDecreasesHits) {
  const auto inst = OwfInstance::hash_truncate();
  const auto layout = owf_game_layout(16, inst);
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const SampledPuzzles p = sample_puzzle_tuple(layout, inst, rng);
    OwfGameAction a;
    for (auto k : layout.key_lengths) a.candidates.push_back(random_bits(rng, k));
    std::int64_t before = count_hits(p.tuple, a, inst);
    for (int step = 0; step < 4; ++step) {
      const std::size_t i = uniform_below(rng, layout.entries());
      a.candidates[i] = p.secrets[i];
      const std::int64_t after = count_hits(p.tuple, a, inst);
      EXPECT_GE(after, before);
      before = after;
    }
  }
}

TEST(OwfGameTest, IdenticalActionsTie) {
  const auto g = build_owf_game(16, OwfInstance::random_table(2));
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const JointType t = g.game.type_distribution().sample(g.game.type_spaces(), rng);
    const BitString a = random_bits(rng, g.layout.action_len());
    const auto u = g.game.utilities({a, a}, t);
    EXPECT_TRUE(u[0].is_zero());
    EXPECT_TRUE(u[1].is_zero());
  }
}

TEST(OwfGameTest, SharedTypeAndSampledZeroSum) {
  const auto inst = OwfInstance::random_table(4);
  const auto g = build_owf_game(16, inst);
  Rng rng(10);
  for (int trial = 0; trial < 10000; ++trial) {
    const JointType t = g.game.type_distribution().sample(g.game.type_spaces(), rng);
    ASSERT_EQ(t[0], t[1]);
    // Mix of junk and partially correct answers so both signs occur.
    const PuzzleTuple tuple = decode_type(g.layout, t[0]);
    OwfGameAction a1, a2;
    for (std::size_t i = 0; i < g.layout.entries(); ++i) {
      a1.candidates.push_back(random_bits(rng, g.layout.key_lengths[i]));
      a2.candidates.push_back(random_bits(rng, g.layout.key_lengths[i]));
    }
    const auto u = g.game.utilities({encode_action(a1), encode_action(a2)}, t);
    ASSERT_TRUE((u[0] + u[1]).is_zero());
    const auto [v1, v2] = owf_payoff(count_hits(tuple, a1, inst), count_hits(tuple, a2, inst));
    ASSERT_EQ(u[0], v1);
  }
}

TEST(OwfGameTest, WinnerOfHitsGetsOne) {
  const auto inst = OwfInstance::random_table(4);
  const auto g = build_owf_game(16, inst);
  Rng rng(10);
  const SampledPuzzles p = sample_puzzle_tuple(g.layout, inst, rng);
  OwfGameAction junk;
  for (const auto& s : p.secrets) {
    junk.candidates.push_back(flipped(s, 0));
  }
  const auto u = g.game.utilities({encode_action({p.secrets}), encode_action(junk)},
                                  {encode_type(p.tuple), encode_type(p.tuple)});
  EXPECT_EQ(u[0], Rational(1));
  EXPECT_EQ(u[1], Rational(-1));
}

TEST(OwfGameTest, SmallestGameIsExplicitAndBounded) {
  const auto g = build_owf_game(2, OwfInstance::random_table(1));
  EXPECT_TRUE(g.game.type_distribution().has_table());
  EXPECT_TRUE(check_bounded(g.game, Rational(1), Rational(1)));
  Rational total;
  for (const auto& e : g.game.type_distribution().entries()) total += e.probability;
  EXPECT_EQ(total, Rational(1));
  g.game.for_each_outcome([&](const JointAction& b, const JointType& t) {
    const auto u = g.game.utilities(b, t);
    EXPECT_TRUE((u[0] + u[1]).is_zero());
  });
}

TEST(SinglePuzzleGameTest, Examples) {
  const auto inst = OwfInstance::random_table(21);
  const auto g = build_single_puzzle_game(16, inst);
  EXPECT_EQ(g.layout.key_lengths, (std::vector<std::size_t>{16}));
  Rng rng(4);
  const SampledPuzzles p = sample_puzzle_tuple(g.layout, inst, rng);
  const JointType t{encode_type(p.tuple), encode_type(p.tuple)};
  const BitString junk = flipped(p.secrets[0], 3);
  auto u = g.game.utilities({p.secrets[0], p.secrets[0]}, t);
  EXPECT_EQ(u, (std::vector<Rational>{Rational(0), Rational(0)}));
  u = g.game.utilities({p.secrets[0], junk}, t);
  EXPECT_EQ(u, (std::vector<Rational>{Rational(1), Rational(-1)}));
  u = g.game.utilities({junk, p.secrets[0]}, t);
  EXPECT_EQ(u, (std::vector<Rational>{Rational(-1), Rational(1)}));
}

TEST(SinglePuzzleGameTest, JunkAgainstJunkAlmostAlwaysTies) {
  const auto inst = OwfInstance::random_table(21);
  const auto g = build_single_puzzle_game(16, inst);
  Rng rng(6);
  int decisive = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const JointType t = g.game.type_distribution().sample(g.game.type_spaces(), rng);
    const auto u = g.game.utilities({random_bits(rng, 16), random_bits(rng, 16)}, t);
    if (!u[0].is_zero()) ++decisive;
  }
  // Expected about 10^4 * 2^-15 < 1.
  EXPECT_LE(decisive, 3);
}

TEST(PenniesTest, OutcomeAndPayoff) {
  const auto o = pennies_outcome(bs("011"), bs("11"));
  EXPECT_FALSE(o.a1);
  EXPECT_TRUE(o.b1);
  EXPECT_EQ(o.chars_a, 2);
  EXPECT_EQ(o.chars_b, 1);
  EXPECT_EQ(pennies_payoff(o), std::make_pair(Rational(0), Rational(0)));
  EXPECT_EQ(pennies_payoff(pennies_outcome(bs("11"), bs("1"))),
            std::make_pair(Rational(2), Rational(-2)));
  EXPECT_THROW(pennies_outcome(BitString(), bs("1")), DomainError);
  EXPECT_THROW(pennies_outcome(bs("101"), bs("1")), DomainError);
}

TEST(PenniesTest, PaperExamplesAtT3) {
  const auto g = build_pennies_game(3, {}, default_biases());
  EXPECT_EQ(g.payoff(by_label(g, "EMIT(0)+2"), by_label(g, "EMIT(1)+2")),
            std::make_pair(Rational(-1), Rational(1)));
  EXPECT_EQ(g.payoff(by_label(g, "SAMPLE(1/2)+1"), by_label(g, "SAMPLE(1/2)+1")),
            std::make_pair(Rational(0), Rational(0)));
  EXPECT_EQ(g.payoff(by_label(g, "EMIT(0)+2"), by_label(g, "SAMPLE(1/2)+1")),
            std::make_pair(Rational(1), Rational(-1)));
}

TEST(PenniesTest, RequiresBudgetAboveTwo) {
  EXPECT_THROW(build_pennies_game(2, {}, default_biases()), ArgumentError);
  EXPECT_NO_THROW(build_pennies_game(3, {}, default_biases()));
}

// Closed-form payoff for canonical machines: Pr[bit = 1] and the print count
// read straight off the program.
std::pair<Rational, std::int64_t> shape(const StrategyMachine& m) {
  Rational p1;
  std::int64_t prints = 0;
  for (const auto& ins : m.program) {
    if (ins.op == Opcode::kEmit) p1 = ins.bit ? Rational(1) : Rational(0);
    if (ins.op == Opcode::kSampleBit) p1 = ins.bias;
    if (ins.op == Opcode::kPrint) ++prints;
  }
  return {p1, prints};
}

TEST(PenniesTest, PayoffMatchesClosedForm) {
  for (std::int64_t t = 3; t <= 6; ++t) {
    const auto g = build_pennies_game(t, {}, default_biases());
    const auto mats = g.payoff_matrices(g.family());
    for (std::size_t i = 0; i < g.family().size(); ++i) {
      const auto [pa, ca] = shape(g.family()[i]);
      for (std::size_t j = 0; j < g.family().size(); ++j) {
        const auto [pb, cb] = shape(g.family()[j]);
        const Rational match = pa * pb + (Rational(1) - pa) * (Rational(1) - pb);
        const Rational expected = match - (Rational(1) - match) + Rational((ca > cb) - (ca < cb));
        const auto got = g.payoff(g.family()[i], g.family()[j]);
        ASSERT_EQ(got.first, expected) << g.family()[i].label << " vs " << g.family()[j].label;
        ASSERT_TRUE((got.first + got.second).is_zero());
        ASSERT_EQ(mats[0](i, j), got.first);
        ASSERT_EQ(mats[1](i, j), got.second);
      }
    }
  }
}

TEST(PenniesTest, OutcomeGameIsZeroSumAndBounded) {
  const auto g = build_pennies_game(4, {}, default_biases());
  const BayesianGame og = g.outcome_game();
  EXPECT_EQ(og.actions(0).size(), 10u);  // 2 * (T + 1)
  og.for_each_outcome([&](const JointAction& b, const JointType& t) {
    const auto u = og.utilities(b, t);
    EXPECT_TRUE((u[0] + u[1]).is_zero());
  });
  EXPECT_TRUE(check_bounded(og, Rational(1), Rational(2)));
  EXPECT_FALSE(check_bounded(og, Rational(1), Rational(1)));
}

TEST(PenniesTest, OutcomeLawsAreDistributionsWithinBudget) {
  const auto g = build_pennies_game(5, {}, default_biases());
  for (const auto& m : g.family()) {
    const VectorQ law = g.outcome_law(m);
    Rational total;
    for (Eigen::Index r = 0; r < law.size(); ++r) {
      total += law(r);
      if (!law(r).is_zero()) {
        // Printed count never exceeds T minus the phase-1 cost.
        const auto chars = static_cast<std::int64_t>(g.outcomes()[r].size()) - 1;
        const std::int64_t phase1 = m.program[0].cost(g.costs());
        EXPECT_LE(chars, g.budget() - phase1) << m.label;
      }
    }
    EXPECT_EQ(total, Rational(1)) << m.label;
  }
}

TEST(PenniesTest, MixedStrategyViewAgreesWithPayoff) {
  const auto g = build_pennies_game(3, {}, default_biases());
  const BayesianGame og = g.outcome_game();
  for (const auto& a : g.family()) {
    for (const auto& b : g.family()) {
      const std::vector<MixedStrategy> profile{g.as_mixed_strategy(a), g.as_mixed_strategy(b)};
      const auto v = expected_utility(og, profile);
      const auto p = g.payoff(a, b);
      ASSERT_EQ(v[0], p.first);
      ASSERT_EQ(v[1], p.second);
    }
  }
}

}  // namespace
}  // namespace compgame
