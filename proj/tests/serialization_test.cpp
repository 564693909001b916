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

#include "compgame/serialization.hpp"

#include <gtest/gtest.h>

#include "compgame/errors.hpp"
#include "compgame/verifier.hpp"
#include "test_util.hpp"

namespace compgame {
namespace {

using io::json;
using testing::bs;

// Serialize, print, re-parse: the path a file takes.
json through_text(const json& j) { return json::parse(j.dump()); }

TEST(SerializationTest, BitStringRoundTrip) {
  Rng rng(1);
  for (std::size_t len = 0; len < 70; ++len) {
    const BitString s = random_bits(rng, len);
    EXPECT_EQ(io::bitstring_from_json(through_text(io::to_json(s))), s) << len;
  }
  EXPECT_EQ(io::to_json(bs("1011")), (json{{"len", 4}, {"hex", "b"}}));
  EXPECT_THROW(io::bitstring_from_json(json{{"len", 4}}), ArgumentError);
}

TEST(SerializationTest, RationalRoundTrip) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const Rational q = testing::random_rational(rng, 50);
    EXPECT_EQ(io::rational_from_json(through_text(io::to_json(q))), q);
  }
  EXPECT_EQ(io::to_json(Rational(-3, 4)), json("-3/4"));
  EXPECT_EQ(io::rational_from_json(json(3)), Rational(3));
  EXPECT_THROW(io::rational_from_json(json("0.9.1")), ArgumentError);
  EXPECT_THROW(io::rational_from_json(json::array()), ArgumentError);
}

TEST(SerializationTest, GameRoundTripPreservesUtilities) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rg = testing::random_game(rng, {1 + uniform_below(rng, 3), 1 + uniform_below(rng, 3)},
                                         {1 + uniform_below(rng, 2), 1 + uniform_below(rng, 2)});
    const json j = through_text(io::game_to_json(rg.game));
    EXPECT_EQ(j.at("schema"), io::kGameSchema);
    const BayesianGame back = io::game_from_json(j);
    rg.game.for_each_outcome([&](const JointAction& b, const JointType& t) {
      EXPECT_EQ(back.utilities(b, t), rg.game.utilities(b, t));
    });
    const std::vector<MixedStrategy> profile{testing::random_strategy(rng, rg.game, 0),
                                             testing::random_strategy(rng, rg.game, 1)};
    EXPECT_EQ(expected_utility(back, profile), expected_utility(rg.game, profile));
    // Canonical: a second trip prints the same text.
    EXPECT_EQ(io::game_to_json(back).dump(), j.dump());
  }
}

TEST(SerializationTest, BuiltinMatchingPennies) {
  const BayesianGame g =
      io::game_from_json(json{{"schema", io::kGameSchema},
                              {"utility", {{"builtin", "matching-pennies"}}}});
  const auto reference = testing::matching_pennies();
  reference.for_each_outcome([&](const JointAction& b, const JointType& t) {
    EXPECT_EQ(g.utilities(b, t), reference.utilities(b, t));
  });
  EXPECT_THROW(io::game_from_json(
                   json{{"schema", io::kGameSchema}, {"utility", {{"builtin", "chess"}}}}),
               ArgumentError);
}

TEST(SerializationTest, SchemaIsChecked) {
  EXPECT_THROW(io::game_from_json(json{{"builtin", "matching-pennies"}}), ArgumentError);
  EXPECT_THROW(
      io::game_from_json(json{{"schema", "compgame.bayesian-game/v0"}, {"builtin", "matching-pennies"}}),
      ArgumentError);
  EXPECT_THROW(io::report_from_json(json{{"schema", io::kTraceSchema}}), ArgumentError);
}

TEST(SerializationTest, ProfileRoundTrip) {
  Rng rng(4);
  const auto rg = testing::random_game(rng, {3, 2}, {2, 2});
  const std::vector<MixedStrategy> profile{testing::random_strategy(rng, rg.game, 0),
                                           testing::random_strategy(rng, rg.game, 1)};
  const auto back = io::profile_from_json(through_text(io::profile_to_json(profile)));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].tables(), profile[0].tables());
  EXPECT_EQ(back[1].tables(), profile[1].tables());
}

TEST(SerializationTest, MachinesAndCostsRoundTrip) {
  const std::vector<Rational> biases{Rational(0), Rational(1, 3), Rational(1)};
  const StepCostTable costs{.emit_hardwired_bit = 2, .sample_random_bit = 3, .print_char = 1, .halt = 1};
  for (const auto& m : enumerate_machines(8, biases, PhaseSchema::kBitThenPrint, costs)) {
    const StrategyMachine back = io::machine_from_json(through_text(io::machine_to_json(m)));
    EXPECT_EQ(back.program, m.program);
    EXPECT_EQ(back.budget, m.budget);
    EXPECT_EQ(back.label, m.label);
  }
  EXPECT_EQ(io::costs_from_json(through_text(io::costs_to_json(costs))), costs);
  json bad = io::machine_to_json(enumerate_machines(3, biases)[0]);
  bad["program"][0] = json{{"op", "JUMP"}};
  EXPECT_THROW(io::machine_from_json(bad), ArgumentError);
}

TEST(SerializationTest, ReportRoundTrip) {
  const std::vector<Rational> biases{Rational(0), Rational(1, 4), Rational(1, 2),
                                     Rational(3, 4), Rational(1)};
  for (const StepCostTable& costs : {StepCostTable{}, StepCostTable{.sample_random_bit = 0}}) {
    const auto g = build_pennies_game(3, costs, biases);
    for (const Rational& eps : {Rational(0), Rational(9, 10)}) {
      const auto report = verify_ne_exhaustive(g, g.family(), eps);
      const json j = io::report_to_json(report);
      EXPECT_EQ(io::report_from_json(through_text(j)), report);
      // Gains are exact rational strings, never floats.
      for (const auto& d : j.at("deviations")) EXPECT_TRUE(d.at("gain").is_string());
    }
  }
}

TEST(SerializationTest, TraceRoundTripAndCsv) {
  const std::vector<std::uint64_t> ladder{0, 16, 272};
  const auto trace = arms_race(16, OwfInstance::random_table(1), ladder, 4, 200, 3);
  EXPECT_EQ(io::trace_from_json(through_text(io::trace_to_json(trace))), trace);
  const std::string csv = io::trace_to_csv(trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "round,mover,old_budget,new_budget,opponent_budget,value,gain,half_width");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            trace.rounds.size() + 1);
}

TEST(SerializationTest, GoldenRoundTrip) {
  const auto inst = OwfInstance::hash_truncate();
  std::vector<io::OwfGoldenVector> vectors;
  Rng rng(5);
  for (std::size_t k : {1, 9, 33}) {
    const BitString x = random_bits(rng, k);
    vectors.push_back({OwfKind::kHashTruncate, 0, k, x, inst.eval(x)});
  }
  const auto back = io::golden_from_json(through_text(io::golden_to_json(vectors)));
  ASSERT_EQ(back.size(), vectors.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].x, vectors[i].x);
    EXPECT_EQ(back[i].image, vectors[i].image);
    EXPECT_EQ(back[i].k, vectors[i].k);
  }
}

}  // namespace
}  // namespace compgame
