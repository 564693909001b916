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

// Drives the compgame_cli binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "compgame/serialization.hpp"
#include "compgame/verifier.hpp"
#include "test_util.hpp"

namespace compgame {
namespace {

namespace fs = std::filesystem;
using io::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("compgame_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of `compgame_cli <args>`; stdout and stderr are discarded.
  int run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + " " + COMPGAME_CLI_PATH + " " + args + " >" +
                            (dir_ / "stdout").string() + " 2>" + (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& body) const {
    std::ofstream(path(name)) << body;
  }

  fs::path dir_;
};

TEST_F(CliTest, VerifyPenniesFindsNoEquilibrium) {
  EXPECT_EQ(run("verify-pennies --T 3 --epsilon 9/10 --check --out " + path("r.json")), 0);
  const json j = json::parse(slurp(path("r.json")));
  EXPECT_TRUE(j.at("equilibria").empty());
  EXPECT_EQ(j.at("profiles_checked"), 256);

  // The file re-parses into the report the library computes directly.
  const std::vector<Rational> biases{Rational(0), Rational(1, 4), Rational(1, 2),
                                     Rational(3, 4), Rational(1)};
  const auto g = build_pennies_game(3, {}, biases);
  EXPECT_EQ(io::report_from_json(j), verify_ne_exhaustive(g, g.family(), Rational(9, 10)));
}

TEST_F(CliTest, FreeRandomnessCheckExists) {
  EXPECT_EQ(run("verify-pennies --T 3 --sample-cost 0 --epsilon 0 --check-exists --out " +
                path("r.json")),
            0);
  EXPECT_FALSE(json::parse(slurp(path("r.json"))).at("equilibria").empty());
  // The default costs have none, so --check-exists fails the run.
  EXPECT_EQ(run("verify-pennies --T 3 --epsilon 0 --check-exists --out " + path("s.json")), 2);
}

TEST_F(CliTest, CheckFailsWhenEquilibriaExist) {
  EXPECT_EQ(run("verify-pennies --T 3 --epsilon 10 --check --out " + path("r.json")), 2);
}

TEST_F(CliTest, BadInputsExitOne) {
  EXPECT_EQ(run("verify-pennies --epsilon 0.9.1"), 1);
  EXPECT_NE(slurp(path("stderr")), "");
  EXPECT_EQ(run("verify-pennies --T 2"), 1);
  EXPECT_EQ(run("owf-security --k 12 --budgets 64 --trials 10 --owf-kind hash_truncate"), 1);
  write("bad.json", R"({"subcommand": "verify-pennies", "T": 3, "colour": "blue"})");
  EXPECT_EQ(run("verify-pennies --config " + path("bad.json")), 1);
  write("wrong.json", R"({"subcommand": "arms-race"})");
  EXPECT_EQ(run("verify-pennies --config " + path("wrong.json")), 1);
  EXPECT_EQ(run("verify-pennies --config " + path("missing.json")), 1);
}

TEST_F(CliTest, ConfigOverridesFlags) {
  write("cfg.json", R"({"subcommand": "verify-pennies", "T": 4, "epsilon": "9/10"})");
  EXPECT_EQ(run("verify-pennies --T 3 --config " + path("cfg.json") + " --out " + path("r.json")),
            0);
  const json j = json::parse(slurp(path("r.json")));
  EXPECT_EQ(j.at("family_size"), 2 * 4 + 5 * 3);
}

TEST_F(CliTest, CsvReport) {
  EXPECT_EQ(run("verify-pennies --T 3 --format csv --out " + path("r.csv")), 0);
  const std::string csv = slurp(path("r.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "a_index,a_label,b_index,b_label,is_ne,player,machine,gain");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 257);
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  EXPECT_EQ(run("verify-pennies --T 3", "COMPGAME_OUT_DIR=" + dir_.string()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "verify-pennies.json"));
}

TEST_F(CliTest, RunsAreByteIdentical) {
  const std::string arms = "arms-race --n 16 --ladder 0,16,272 --samples 200 --seed 9 --out ";
  EXPECT_EQ(run(arms + path("a.json")), 0);
  EXPECT_EQ(run(arms + path("b.json")), 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_NO_THROW(io::trace_from_json(json::parse(slurp(path("a.json")))));

  const std::string sec = "owf-security --k 10 --budgets 16,256 --trials 300 --seed 4 --out ";
  EXPECT_EQ(run(sec + path("c.json")), 0);
  EXPECT_EQ(run(sec + path("d.json")), 0);
  EXPECT_EQ(slurp(path("c.json")), slurp(path("d.json")));

  const std::string sp =
      "single-puzzle-ne --n 20 --family 0,64,1024 --samples 500 --seed 2 --format csv --out ";
  EXPECT_EQ(run(sp + path("e.csv")), 0);
  EXPECT_EQ(run(sp + path("f.csv")), 0);
  EXPECT_EQ(slurp(path("e.csv")), slurp(path("f.csv")));
}

TEST_F(CliTest, ArmsRaceCsv) {
  EXPECT_EQ(run("arms-race --n 16 --ladder 0,16,272 --samples 200 --format csv --out " +
                path("t.csv")),
            0);
  const std::string csv = slurp(path("t.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "round,mover,old_budget,new_budget,opponent_budget,value,gain,half_width");
}

TEST_F(CliTest, ExpectedUtilityOfMatchingPennies) {
  write("game.json", io::game_to_json(testing::matching_pennies()).dump());
  const Space types = Space::listed({BitString()});
  const Space acts = Space::listed({testing::bs("0"), testing::bs("1")});
  const std::vector<MixedStrategy> profile{
      MixedStrategy::constant(types, {{testing::bs("0"), Rational(1)}}),
      MixedStrategy::uniform(types, acts)};
  write("profile.json", io::profile_to_json(profile).dump());
  EXPECT_EQ(run("expected-utility --game " + path("game.json") + " --profile " +
                path("profile.json") + " --out " + path("v.json")),
            0);
  const json j = json::parse(slurp(path("v.json")));
  EXPECT_EQ(j.at("values"), (json{"0", "0"}));

  write("profile2.json",
        io::profile_to_json({profile[0], MixedStrategy::constant(
                                             types, {{testing::bs("1"), Rational(1)}})})
            .dump());
  EXPECT_EQ(run("expected-utility --game " + path("game.json") + " --profile " +
                path("profile2.json") + " --format csv --out " + path("v.csv")),
            0);
  EXPECT_EQ(slurp(path("v.csv")), "player,value\n0,-1\n1,1\n");
}

}  // namespace
}  // namespace compgame
