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
#include <vector>

#include "ebr/canonize.hpp"
#include "ebr/expr.hpp"
#include "ebr/formula.hpp"
#include "ebr/oracle.hpp"

namespace ebr {

/// Total assignment to a list of variables.
using Assignment = std::vector<bool>;

enum class LatchKind : std::uint8_t { Counter, Past, Released, Error };

struct Latch {
  std::string name;
  LatchKind kind;
  Expr next;
  std::string source;  // formula the latch monitors, if any
};

/// Named combinational alias; printed by dump().
struct Define {
  std::string name;
  Expr expr;
  std::string source;
};

/// Deterministic symbolic safety automaton.
///
/// Variable numbering inside `pool`: inputs occupy 0 .. |inputs|-1, latch j
/// is variable |inputs| + j.  Every latch starts false.  `safe` depends on
/// latches only.
struct SymbolicAutomaton {
  ExprPool pool;
  std::vector<std::string> inputs;  // uncontrollable first, then controllable
  std::vector<bool> controllable;
  std::vector<Latch> latches;
  std::vector<Define> defines;
  Expr safe = ExprPool::kTrue;
  unsigned max_depth = 0;
  std::size_t counter_bits = 0;

  std::size_t num_inputs() const { return inputs.size(); }
  std::size_t num_latches() const { return latches.size(); }
  std::uint32_t input_var(std::size_t i) const {
    return static_cast<std::uint32_t>(i);
  }
  std::uint32_t latch_var(std::size_t j) const {
    return static_cast<std::uint32_t>(inputs.size() + j);
  }
  std::vector<std::size_t> uncontrollable_inputs() const;
  std::vector<std::size_t> controllable_inputs() const;

  Assignment init() const { return Assignment(latches.size(), false); }
  Assignment step(const Assignment& state, const Assignment& input) const;
  bool is_safe(const Assignment& state) const;
  /// Counter value encoded in the counter latches of `state`.
  unsigned counter_value(const Assignment& state) const;

  /// 64 runs at once: latch and input values bit-sliced per variable.
  std::vector<std::uint64_t> step(const std::vector<std::uint64_t>& state,
                                  const std::vector<std::uint64_t>& input) const;
  std::uint64_t safe_mask(const std::vector<std::uint64_t>& state) const;

  /// Whether the unique run on `w` stays safe forever.
  bool accepts(const LassoWord& w) const;
  /// Bit k set when word k of the batch is accepted.
  std::uint64_t accepts(const WordBatch& batch) const;

  /// Not/And/Or nodes reachable from the next functions and `safe`.
  std::size_t gate_count() const;

  /// Textual listing: inputs, latches with init, defines, next functions
  /// and the safety condition.
  std::string dump() const;

  /// Throws std::logic_error if a variable reference is out of range or
  /// `safe` reads an input.
  void validate() const;

  /// Renders `e` using input, latch and define names.
  std::string to_string(Expr e) const;
};

/// Reads the listing produced by SymbolicAutomaton::dump().  Throws
/// ParseError on malformed input.
SymbolicAutomaton parse_automaton(std::string_view text);

/// Evaluates next functions and `safe` over the cone of an automaton,
/// 64 runs at a time.  The automaton must outlive the evaluator.
class StepEvaluator {
public:
  explicit StepEvaluator(const SymbolicAutomaton& a);

  /// Writes the successor latch masks into `next`.
  void step(const std::uint64_t* state, const std::uint64_t* input,
            std::uint64_t* next);
  std::uint64_t safe(const std::uint64_t* state);

private:
  void run(const std::uint64_t* state, const std::uint64_t* input);

  const SymbolicAutomaton& a_;
  std::vector<Expr> order_;
  std::vector<std::uint64_t> value_;
};

/// Builds the monitor automaton of a canonical formula.  Latches that are
/// provably constant false are removed afterwards.  Throws FragmentError if
/// an atom of the formula is missing from `part`.
SymbolicAutomaton compile(const CanonicalFormula& chi, const Partition& part);

}  // namespace ebr
