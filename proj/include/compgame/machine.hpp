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

#ifndef COMPGAME_MACHINE_HPP_
#define COMPGAME_MACHINE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "compgame/bitstring.hpp"
#include "compgame/game_core.hpp"
#include "compgame/rational.hpp"

namespace compgame {

// Steps charged per instruction. SAMPLE_BIT pays `sample_random_bit` and
// then `emit_hardwired_bit` for writing the sampled bit, so with the default
// table a random output bit costs 2 steps and a hardwired one costs 1.
// `halt` is charged once when the machine stops.
struct StepCostTable {
  std::int64_t emit_hardwired_bit = 1;
  std::int64_t sample_random_bit = 1;
  std::int64_t print_char = 1;
  std::int64_t halt = 0;

  void validate() const;
  friend bool operator==(const StepCostTable&, const StepCostTable&) = default;
};

enum class Opcode { kEmit, kSampleBit, kPrint, kHalt };

struct Instruction {
  Opcode op = Opcode::kHalt;
  bool bit = false;   // kEmit only
  Rational bias;      // kSampleBit only: Pr[bit = 1], in [0, 1]

  static Instruction emit(bool b) { return {Opcode::kEmit, b, {}}; }
  static Instruction sample_bit(Rational p);
  static Instruction print() { return {Opcode::kPrint, false, {}}; }
  static Instruction halt() { return {Opcode::kHalt, false, {}}; }

  std::int64_t cost(const StepCostTable& costs) const;
  std::string str() const;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

// A step-budgeted program. Members of the family M_T are machines whose every
// execution path fits in `budget` steps.
struct StrategyMachine {
  std::vector<Instruction> program;
  std::int64_t budget = 0;
  std::string label;

  // Worst-case step count over all random choices (the program has no
  // data-dependent control flow, so this is the sum of instruction costs up
  // to the first HALT, plus the halt cost).
  std::int64_t worst_case_steps(const StepCostTable& costs) const;
  std::size_t sample_count() const;

  friend bool operator==(const StrategyMachine&, const StrategyMachine&) = default;
};

struct RunResult {
  BitString output;
  std::int64_t steps_used = 0;
  std::size_t tape_bits_read = 0;
};

// Deterministic replay: SAMPLE_BIT(p) reads uniform tape bits U = 0.u1u2...
// until it can decide U >= 1 - p, which it reports as the sampled bit.
// EMIT appends its bit, PRINT appends a '1' character.
//
// Throws BudgetExhaustedError (with the instruction index) when an
// instruction would exceed the budget, ArgumentError on tape underrun.
RunResult run_machine(const StrategyMachine& machine, const StepCostTable& costs,
                      std::span<const std::uint8_t> random_tape);

// Exact law of a machine's output.
class OutputDistribution {
 public:
  OutputDistribution() = default;
  explicit OutputDistribution(std::map<BitString, Rational> probabilities);

  const std::map<BitString, Rational>& probabilities() const { return probs_; }
  Rational probability(const BitString& output) const;
  std::size_t support_size() const { return probs_.size(); }

  friend bool operator==(const OutputDistribution&, const OutputDistribution&) = default;

 private:
  std::map<BitString, Rational> probs_;
};

inline constexpr std::size_t kDefaultSampleCap = 20;

// Enumerates all 2^(#samples) branches. Throws UnsupportedModeError when the
// program has more than `sample_cap` SAMPLE_BIT instructions.
OutputDistribution machine_distribution(const StrategyMachine& machine,
                                        const StepCostTable& costs,
                                        std::size_t sample_cap = kDefaultSampleCap);

// Canonical program shapes a family is enumerated over.
enum class PhaseSchema {
  // One phase-1 bit (EMIT(0), EMIT(1) or SAMPLE_BIT(p)) followed by c PRINTs.
  kBitThenPrint,
};

// Every canonical machine whose cost fits in `budget`: EMIT(0) with
// c = 0, 1, ... prints, then EMIT(1), then SAMPLE_BIT(p) for each bias in
// ascending order. Duplicate biases are dropped.
std::vector<StrategyMachine> enumerate_machines(
    std::int64_t budget, std::span<const Rational> biases,
    PhaseSchema schema = PhaseSchema::kBitThenPrint,
    const StepCostTable& costs = {});

// The biases {0, 1/4, 1/2, 3/4, 1}.
std::vector<Rational> default_bias_grid();

// "EMIT(1)+2" style label for canonical machines.
std::string canonical_label(const StrategyMachine& machine);

// Adapts a machine to the game-core Policy interface (ignores the type and
// draws a fresh uniform tape per call).
Policy machine_policy(StrategyMachine machine, StepCostTable costs);

}  // namespace compgame

#endif  // COMPGAME_MACHINE_HPP_
