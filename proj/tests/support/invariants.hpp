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

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "ebr/automaton.hpp"
#include "ebr/bdd.hpp"
#include "support/generators.hpp"

namespace ebr::testing {

// The transition relation T(x, i, x') = AND_j (x'_j <-> f_j(x, i)) has
// exactly one successor for every (x, i): T is total and has exactly
// 2^(|x| + |i|) models.
inline std::optional<std::string> determinism_violation(const SymbolicAutomaton& a) {
  const std::size_t ni = a.num_inputs(), nl = a.num_latches();
  const unsigned nv = static_cast<unsigned>(ni + 2 * nl);
  // variable v of the automaton, or ni + nl + j for the primed latch j
  std::vector<unsigned> level(nv, ~0u);
  unsigned next = 0;
  for (std::size_t j = 0; j < nl; ++j) {
    for (Expr e : a.pool.cone({a.latches[j].next})) {
      const auto& n = a.pool.node(e);
      if (n.kind == ExprPool::Kind::Var && level[n.a] == ~0u) level[n.a] = next++;
    }
    level[ni + nl + j] = next++;
  }
  for (auto& l : level)
    if (l == ~0u) l = next++;

  BddManager m(nv);
  std::vector<BddManager::Ref> val(a.pool.size(), BddManager::kFalse);
  std::vector<Expr> roots;
  for (const auto& l : a.latches) roots.push_back(l.next);
  for (Expr e : a.pool.cone(roots)) {
    const auto& n = a.pool.node(e);
    switch (n.kind) {
      case ExprPool::Kind::False: val[e] = BddManager::kFalse; break;
      case ExprPool::Kind::True: val[e] = BddManager::kTrue; break;
      case ExprPool::Kind::Var: val[e] = m.var(level[n.a]); break;
      case ExprPool::Kind::Not: val[e] = m.neg(val[n.a]); break;
      case ExprPool::Kind::And: val[e] = m.conj(val[n.a], val[n.b]); break;
      case ExprPool::Kind::Or: val[e] = m.disj(val[n.a], val[n.b]); break;
    }
  }
  BddManager::Ref t = BddManager::kTrue;
  for (std::size_t j = 0; j < nl; ++j) {
    const BddManager::Ref xp = m.var(level[ni + nl + j]);
    const BddManager::Ref f = val[a.latches[j].next];
    t = m.conj(t, m.ite(xp, f, m.neg(f)));
  }
  std::vector<bool> primed(nv, false);
  for (std::size_t j = 0; j < nl; ++j) primed[level[ni + nl + j]] = true;
  if (m.exists(t, primed) != BddManager::kTrue)
    return "some (state, input) has no successor";
  if (m.sat_count(t) != std::ldexp(1.0, static_cast<int>(ni + nl)))
    return "some (state, input) has several successors";
  return std::nullopt;
}

// Runs `n` random steps from the initial state and checks the run-time
// invariants: the initial state is safe, error latches never fall, the
// counter reads min(t, d+1), stepping is repeatable and the 64-lane
// evaluator agrees with the scalar one.
inline std::optional<std::string> run_violation(const SymbolicAutomaton& a, Rng& rng,
                                                int n) {
  try {
    a.validate();
  } catch (const std::logic_error& e) {
    return std::string("validate: ") + e.what();
  }
  if (auto d = determinism_violation(a)) return d;
  const std::size_t ni = a.num_inputs(), nl = a.num_latches();
  Assignment s = a.init();
  if (std::any_of(s.begin(), s.end(), [](bool b) { return b; }))
    return "initial state is not all-zero";
  if (!a.is_safe(s)) return "initial state is unsafe";
  StepEvaluator ev(a);
  // lane 0 of the wide state follows `s`; the other lanes run their own inputs
  std::vector<std::uint64_t> wide(nl, 0), in(ni), out(nl);
  for (int t = 0; t < n; ++t) {
    if (a.counter_bits &&
        a.counter_value(s) != std::min<unsigned>(static_cast<unsigned>(t), a.max_depth + 1))
      return "counter differs from min(t, d+1) at step " + std::to_string(t);
    Assignment input(ni);
    for (std::size_t i = 0; i < ni; ++i) {
      input[i] = coin(rng);
      in[i] = (rng() & ~std::uint64_t{1}) | std::uint64_t{input[i]};
    }
    Assignment next = a.step(s, input);
    if (next != a.step(s, input)) return "step is not repeatable";
    for (std::size_t j = 0; j < nl; ++j)
      if (a.latches[j].kind == LatchKind::Error && s[j] && !next[j])
        return "error latch " + a.latches[j].name + " fell at step " + std::to_string(t);
    if ((ev.safe(wide.data()) & 1) != std::uint64_t{a.is_safe(s)})
      return "wide safe differs at step " + std::to_string(t);
    ev.step(wide.data(), in.data(), out.data());
    for (std::size_t j = 0; j < nl; ++j)
      if ((out[j] & 1) != std::uint64_t{next[j]})
        return "wide step differs at step " + std::to_string(t);
    // error monotonicity in every lane
    for (std::size_t j = 0; j < nl; ++j)
      if (a.latches[j].kind == LatchKind::Error && (wide[j] & ~out[j]))
        return "error latch " + a.latches[j].name + " fell in a wide lane";
    wide = out;
    s = next;
  }
  return std::nullopt;
}

}  // namespace ebr::testing
