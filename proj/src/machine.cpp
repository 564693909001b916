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

#include "compgame/machine.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "compgame/errors.hpp"

namespace compgame {

void StepCostTable::validate() const {
  if (emit_hardwired_bit < 0 || sample_random_bit < 0 || print_char < 0 || halt < 0) {
    throw ArgumentError("step costs must be >= 0");
  }
}

Instruction Instruction::sample_bit(Rational p) {
  if (p.sign() < 0 || Rational(1) < p) {
    throw ArgumentError("bias " + p.str() + " outside [0, 1]");
  }
  return {Opcode::kSampleBit, false, std::move(p)};
}

std::int64_t Instruction::cost(const StepCostTable& costs) const {
  switch (op) {
    case Opcode::kEmit:
      return costs.emit_hardwired_bit;
    case Opcode::kSampleBit:
      return costs.sample_random_bit + costs.emit_hardwired_bit;
    case Opcode::kPrint:
      return costs.print_char;
    case Opcode::kHalt:
      return costs.halt;
  }
  return 0;
}

std::string Instruction::str() const {
  switch (op) {
    case Opcode::kEmit:
      return bit ? "EMIT(1)" : "EMIT(0)";
    case Opcode::kSampleBit:
      return "SAMPLE_BIT(" + bias.str() + ")";
    case Opcode::kPrint:
      return "PRINT";
    case Opcode::kHalt:
      return "HALT";
  }
  return "?";
}

std::int64_t StrategyMachine::worst_case_steps(const StepCostTable& costs) const {
  std::int64_t steps = 0;
  for (const auto& ins : program) {
    if (ins.op == Opcode::kHalt) break;
    steps += ins.cost(costs);
  }
  return steps + costs.halt;
}

std::size_t StrategyMachine::sample_count() const {
  std::size_t n = 0;
  for (const auto& ins : program) {
    if (ins.op == Opcode::kHalt) break;
    if (ins.op == Opcode::kSampleBit) ++n;
  }
  return n;
}

namespace {

// Draws the sampled bit for bias p from a stream of uniform bits: reads bits
// of U until the dyadic interval around U lies on one side of 1 - p.
template <typename NextBit>
bool draw_biased(const Rational& p, NextBit&& next_bit, std::size_t& bits_read) {
  const Rational threshold = Rational(1) - p;
  Rational lo(0);
  Rational width(1);
  while (true) {
    if (!(lo < threshold)) return true;              // U >= lo >= 1 - p
    if (!(threshold < lo + width)) return false;     // U < lo + width <= 1 - p
    width = width * Rational(1, 2);
    ++bits_read;
    if (next_bit()) lo += width;
  }
}

void charge(std::int64_t& steps, std::int64_t cost, std::int64_t budget, std::size_t index,
            const Instruction* ins) {
  if (steps + cost > budget) {
    throw BudgetExhaustedError(
        index, "instruction " + std::to_string(index) + " (" +
                   (ins != nullptr ? ins->str() : std::string("HALT")) +
                   ") exceeds the step budget " + std::to_string(budget));
  }
  steps += cost;
}

template <typename NextBit>
RunResult run_with(const StrategyMachine& machine, const StepCostTable& costs,
                   NextBit&& next_bit) {
  RunResult r;
  r.output = BitString(BitString::kUnbounded);
  std::size_t pc = 0;
  for (; pc < machine.program.size(); ++pc) {
    const Instruction& ins = machine.program[pc];
    if (ins.op == Opcode::kHalt) break;
    charge(r.steps_used, ins.cost(costs), machine.budget, pc, &ins);
    switch (ins.op) {
      case Opcode::kEmit:
        r.output.push_back(ins.bit);
        break;
      case Opcode::kSampleBit:
        r.output.push_back(draw_biased(ins.bias, next_bit, r.tape_bits_read));
        break;
      case Opcode::kPrint:
        r.output.push_back(true);
        break;
      case Opcode::kHalt:
        break;
    }
  }
  const Instruction* halt = pc < machine.program.size() ? &machine.program[pc] : nullptr;
  charge(r.steps_used, costs.halt, machine.budget, pc, halt);
  return r;
}

}  // namespace

RunResult run_machine(const StrategyMachine& machine, const StepCostTable& costs,
                      std::span<const std::uint8_t> random_tape) {
  costs.validate();
  std::size_t pos = 0;
  return run_with(machine, costs, [&]() -> bool {
    if (pos >= random_tape.size()) {
      throw ArgumentError("random tape underrun after " + std::to_string(pos) + " bits");
    }
    return random_tape[pos++] != 0;
  });
}

OutputDistribution::OutputDistribution(std::map<BitString, Rational> probabilities)
    : probs_(std::move(probabilities)) {
  Rational total;
  for (const auto& [out, p] : probs_) {
    if (p.sign() < 0) throw ArgumentError("negative output probability");
    total += p;
  }
  if (total != Rational(1)) {
    throw ArgumentError("output probabilities sum to " + total.str());
  }
}

Rational OutputDistribution::probability(const BitString& output) const {
  auto it = probs_.find(output);
  return it == probs_.end() ? Rational(0) : it->second;
}

OutputDistribution machine_distribution(const StrategyMachine& machine,
                                        const StepCostTable& costs,
                                        std::size_t sample_cap) {
  costs.validate();
  if (machine.sample_count() > sample_cap) {
    throw UnsupportedModeError("machine has " + std::to_string(machine.sample_count()) +
                               " SAMPLE_BIT instructions, cap is " +
                               std::to_string(sample_cap));
  }
  // Control flow is data independent, so one deterministic pass settles the
  // budget question for every branch.
  {
    std::int64_t steps = 0;
    std::size_t pc = 0;
    for (; pc < machine.program.size(); ++pc) {
      const Instruction& ins = machine.program[pc];
      if (ins.op == Opcode::kHalt) break;
      charge(steps, ins.cost(costs), machine.budget, pc, &ins);
    }
    charge(steps, costs.halt, machine.budget, pc,
           pc < machine.program.size() ? &machine.program[pc] : nullptr);
  }

  std::map<BitString, Rational> probs;
  BitString out(BitString::kUnbounded);
  std::function<void(std::size_t, const Rational&)> walk = [&](std::size_t pc,
                                                               const Rational& weight) {
    if (pc == machine.program.size() || machine.program[pc].op == Opcode::kHalt) {
      probs[out] += weight;
      return;
    }
    const Instruction& ins = machine.program[pc];
    const std::size_t mark = out.size();
    auto restore = [&] {
      std::vector<bool> bits = out.bits();
      bits.resize(mark);
      out = BitString(std::move(bits), BitString::kUnbounded);
    };
    switch (ins.op) {
      case Opcode::kEmit:
      case Opcode::kPrint:
        out.push_back(ins.op == Opcode::kPrint || ins.bit);
        walk(pc + 1, weight);
        restore();
        break;
      case Opcode::kSampleBit: {
        const Rational q = Rational(1) - ins.bias;
        if (!q.is_zero()) {
          out.push_back(false);
          walk(pc + 1, weight * q);
          restore();
        }
        if (!ins.bias.is_zero()) {
          out.push_back(true);
          walk(pc + 1, weight * ins.bias);
          restore();
        }
        break;
      }
      case Opcode::kHalt:
        break;
    }
  };
  walk(0, Rational(1));
  return OutputDistribution(std::move(probs));
}

std::vector<StrategyMachine> enumerate_machines(std::int64_t budget,
                                                std::span<const Rational> biases,
                                                PhaseSchema schema,
                                                const StepCostTable& costs) {
  costs.validate();
  if (schema != PhaseSchema::kBitThenPrint) throw UnsupportedModeError("unknown schema");
  if (budget < 1) throw ArgumentError("enumerate_machines needs T >= 1");
  if (costs.print_char == 0) {
    throw ArgumentError("print cost 0 admits unboundedly many machines");
  }
  std::set<Rational> unique;
  for (const auto& p : biases) {
    if (p.sign() < 0 || Rational(1) < p) {
      throw ArgumentError("bias " + p.str() + " outside [0, 1]");
    }
    unique.insert(p);
  }

  std::vector<StrategyMachine> out;
  auto add_family = [&](const Instruction& first) {
    const std::int64_t base = first.cost(costs) + costs.halt;
    for (std::int64_t c = 0; base + c * costs.print_char <= budget; ++c) {
      StrategyMachine m;
      m.program.push_back(first);
      m.program.insert(m.program.end(), static_cast<std::size_t>(c), Instruction::print());
      m.budget = budget;
      m.label = canonical_label(m);
      out.push_back(std::move(m));
    }
  };
  add_family(Instruction::emit(false));
  add_family(Instruction::emit(true));
  for (const auto& p : unique) add_family(Instruction::sample_bit(p));
  return out;
}

std::vector<Rational> default_bias_grid() {
  return {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
}

std::string canonical_label(const StrategyMachine& machine) {
  if (machine.program.empty()) return "EMPTY";
  const Instruction& first = machine.program.front();
  std::string head;
  switch (first.op) {
    case Opcode::kEmit:
      head = first.bit ? "EMIT(1)" : "EMIT(0)";
      break;
    case Opcode::kSampleBit:
      head = "SAMPLE(" + first.bias.str() + ")";
      break;
    default:
      head = first.str();
      break;
  }
  std::size_t prints = 0;
  for (std::size_t i = 1; i < machine.program.size(); ++i) {
    if (machine.program[i].op == Opcode::kHalt) break;
    if (machine.program[i].op != Opcode::kPrint) return head + "+?";
    ++prints;
  }
  return head + "+" + std::to_string(prints);
}

Policy machine_policy(StrategyMachine machine, StepCostTable costs) {
  costs.validate();
  return [machine = std::move(machine), costs](const BitString&, Rng& rng) {
    std::uint64_t word = 0;
    int left = 0;
    return run_with(machine, costs,
                    [&]() -> bool {
                      if (left == 0) {
                        word = rng();
                        left = 64;
                      }
                      --left;
                      return ((word >> left) & 1U) != 0;
                    })
        .output;
  };
}

}  // namespace compgame
