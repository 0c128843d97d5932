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
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ebr/automaton.hpp"
#include "ebr/bdd.hpp"

namespace ebr {

/// A game state is a total assignment to the latches.
using GameState = Assignment;

enum class Backend { Auto, Explicit, Symbolic };

const char* to_string(Backend b);

struct SolveOptions {
  Backend backend = Backend::Auto;
  /// Largest latch space 2^|X| the explicit backend enumerates.
  std::uint64_t state_budget = std::uint64_t{1} << 20;
  /// Largest node count of the symbolic backend's diagram manager.
  std::size_t node_budget = std::size_t{1} << 24;
};

/// Functions over latches and Environment inputs, as diagrams in a shared
/// manager.  `level` maps automaton variable v (inputs, then latches) to its
/// diagram variable.
struct Strategy {
  std::shared_ptr<BddManager> bdd;
  std::vector<unsigned> level;
  /// Automaton input indices of the Environment inputs.
  std::vector<std::size_t> uncontrollable;
  /// One function per controllable input, in automaton input order.
  std::vector<BddManager::Ref> outputs;

  /// Controller's move on latch state `s` after Environment plays `u`
  /// (both in automaton order; `u` lists uncontrollable inputs only).
  Assignment choose(const GameState& s, const Assignment& u) const;
};

struct SafetyGameResult {
  bool realizable = false;
  Backend backend = Backend::Auto;
  std::size_t iterations = 0;
  /// |W_k| for k = 0, 1, ...; the last entry is the fixpoint.
  std::vector<double> region_sizes;
  std::shared_ptr<BddManager> bdd;
  std::vector<unsigned> level;
  BddManager::Ref winning = BddManager::kFalse;
  /// Present iff realizable.
  std::optional<Strategy> strategy;

  bool is_winning(const GameState& s) const;
};

/// Greatest fixpoint W of W_0 = safe, W_{k+1} = W_k & forall u exists c
/// step(s, u c) in W_k; Controller moves after seeing u.  Throws
/// ResourceError when the chosen backend exceeds its budget.  Among the
/// admissible moves the strategy picks the lexicographically least c
/// (false before true, earlier controllable inputs first).
SafetyGameResult solve(const SymbolicAutomaton& a, const SolveOptions& options = {});

struct TraceStep {
  GameState state;
  Assignment input;  // all inputs, automaton order
};
using Trace = std::vector<TraceStep>;

/// Thrown when a strategy is used outside its domain.
class StrategyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Plays the strategy against the Environment moves `u_seq`; the trace has
/// one step per move followed by the final state with an empty input.
/// Throws StrategyError if the game is unrealizable or a visited state is
/// outside the winning region or unsafe.
Trace play_strategy(const SafetyGameResult& result, const SymbolicAutomaton& a,
                    const std::vector<Assignment>& u_seq);

}  // namespace ebr
