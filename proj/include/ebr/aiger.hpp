/*
 * Copyright 2026 The ebrsynt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ebr/automaton.hpp"
#include "ebr/formula.hpp"
#include "ebr/game.hpp"

namespace ebr {

/// And-inverter graph in AIGER literal encoding: literal 2v is variable v,
/// 2v + 1 its negation, 0 and 1 the constants.  Variables 1..I are inputs,
/// I+1..I+L latches, the rest AND gates.
struct Aiger {
  struct Latch {
    std::uint32_t lit;
    std::uint32_t next;
  };
  struct And {
    std::uint32_t lhs;
    std::uint32_t rhs0;
    std::uint32_t rhs1;
  };

  std::uint32_t max_var = 0;
  std::vector<std::uint32_t> inputs;
  std::vector<Latch> latches;
  std::vector<std::uint32_t> outputs;
  std::vector<And> ands;
  std::vector<std::string> input_names;
  std::vector<std::string> latch_names;
  std::vector<std::string> output_names;
  std::vector<std::string> comments;
};

/// ASCII `aag` text with symbol table and comments.
std::string to_string(const Aiger& g);

/// Reads ASCII AIGER.  Throws ParseError on malformed text, including
/// out-of-range literals, redefined variables and combinational cycles.
Aiger parse_aiger(std::string_view text);

/// Builds an Aiger with structural hashing and constant folding.
class AigerBuilder {
public:
  AigerBuilder(std::size_t num_inputs, std::size_t num_latches);

  std::uint32_t input(std::size_t i) const;
  std::uint32_t latch(std::size_t j) const;
  std::uint32_t conj(std::uint32_t a, std::uint32_t b);
  std::uint32_t disj(std::uint32_t a, std::uint32_t b) {
    return conj(a ^ 1, b ^ 1) ^ 1;
  }
  std::uint32_t ite(std::uint32_t c, std::uint32_t t, std::uint32_t e);

  void set_next(std::size_t j, std::uint32_t lit);
  void add_output(std::uint32_t lit, std::string name);
  Aiger& graph() { return g_; }
  Aiger finish();

private:
  Aiger g_;
  std::unordered_map<std::uint64_t, std::uint32_t> hash_;
};

/// Circuit with inputs U then C (in partition order), one latch per
/// automaton latch (reset 0) and a single output `bad` = !safe.
Aiger export_monitor(const SymbolicAutomaton& a, const Partition& part);

/// Circuit with inputs U, the automaton's latches, and one output per
/// controllable input computing the strategy's move; each output is the
/// sum of the disjoint (state, u) cubes of the strategy function, already
/// restricted to the winning region.  Throws StrategyError when the game
/// is unrealizable.
Aiger export_strategy(const SafetyGameResult& result, const SymbolicAutomaton& a,
                      const Partition& part);

/// Cycle-accurate simulation from the all-zero latch state.
class AigerSimulator {
public:
  explicit AigerSimulator(const Aiger& g);

  /// Output values for `inputs` in the current state; then every latch
  /// takes its next value.
  std::vector<bool> step(const std::vector<bool>& inputs);
  /// Output values for `inputs` without advancing.
  std::vector<bool> peek(const std::vector<bool>& inputs);
  const std::vector<bool>& latches() const { return latch_; }
  void reset();

private:
  void evaluate(const std::vector<bool>& inputs);
  bool lit(std::uint32_t l) const { return value_[l >> 1] ^ (l & 1); }

  const Aiger& g_;
  std::vector<std::size_t> order_;
  std::vector<std::uint32_t> var_and_;  // variable -> index into ands, or ~0
  std::vector<bool> value_;
  std::vector<bool> latch_;
};

}  // namespace ebr
