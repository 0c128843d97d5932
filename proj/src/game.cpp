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

#include "ebr/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ebr {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Explicit: return "explicit";
    case Backend::Symbolic: return "symbolic";
  }
  return "?";
}

Assignment Strategy::choose(const GameState& s, const Assignment& u) const {
  if (u.size() != uncontrollable.size())
    throw std::invalid_argument("Strategy::choose: wrong number of inputs");
  const std::size_t ni = level.size() - s.size();
  std::vector<bool> point(bdd->num_vars(), false);
  for (std::size_t j = 0; j < s.size(); ++j) point[level[ni + j]] = s[j];
  for (std::size_t i = 0; i < u.size(); ++i)
    point[level[uncontrollable[i]]] = u[i];
  Assignment c(outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i)
    c[i] = bdd->eval(outputs[i], point);
  return c;
}

bool SafetyGameResult::is_winning(const GameState& s) const {
  std::vector<bool> point(bdd->num_vars(), false);
  const std::size_t nvars = level.size() - s.size();
  for (std::size_t j = 0; j < s.size(); ++j) point[level[nvars + j]] = s[j];
  return bdd->eval(winning, point);
}

namespace {

using Ref = BddManager::Ref;

// Diagram of every root, sharing one traversal of the expression DAG.
std::vector<Ref> to_bdd(const ExprPool& pool, const std::vector<Expr>& roots,
                        const std::vector<unsigned>& level, BddManager& m) {
  std::vector<Ref> value(pool.size(), BddManager::kFalse);
  for (Expr e : pool.cone(roots)) {
    const auto& n = pool.node(e);
    switch (n.kind) {
      case ExprPool::Kind::False: value[e] = BddManager::kFalse; break;
      case ExprPool::Kind::True: value[e] = BddManager::kTrue; break;
      case ExprPool::Kind::Var: value[e] = m.var(level.at(n.a)); break;
      case ExprPool::Kind::Not: value[e] = m.neg(value[n.a]); break;
      case ExprPool::Kind::And: value[e] = m.conj(value[n.a], value[n.b]); break;
      case ExprPool::Kind::Or: value[e] = m.disj(value[n.a], value[n.b]); break;
    }
  }
  std::vector<Ref> out;
  for (Expr r : roots) out.push_back(value[r]);
  return out;
}

std::vector<std::uint32_t> support(const ExprPool& pool, Expr e) {
  std::vector<std::uint32_t> out;
  for (Expr x : pool.cone({e}))
    if (pool.node(x).kind == ExprPool::Kind::Var) out.push_back(pool.node(x).a);
  return out;
}

// ---------------------------------------------------------------------------
// Explicit backend
// ---------------------------------------------------------------------------

SafetyGameResult solve_explicit(const SymbolicAutomaton& a,
                                const SolveOptions& opt) {
  const std::size_t L = a.num_latches();
  const auto U = a.uncontrollable_inputs();
  const auto C = a.controllable_inputs();
  const std::size_t nu = U.size(), nc = C.size(), nin = nu + nc;
  if (L >= 63 || (std::uint64_t{1} << L) > opt.state_budget)
    throw ResourceError("explicit solver: 2^" + std::to_string(L) +
                        " states exceed the state budget of " +
                        std::to_string(opt.state_budget));
  if (L + nin > 26)
    throw ResourceError("explicit solver: " + std::to_string(L + nin) +
                        " state and input bits exceed the limit of 26");
  const std::uint64_t ns = std::uint64_t{1} << L;
  const std::uint64_t ni = std::uint64_t{1} << nin;
  const std::uint64_t total = ns * ni;

  // successor of (s, u, c) stored at (s << nin) | (u << nc) | c, where the
  // first uncontrollable and the first controllable input are the most
  // significant bits of u and c
  std::vector<std::uint32_t> succ(total);
  std::vector<std::uint8_t> safe(ns);
  StepEvaluator ev(a);
  std::vector<std::uint64_t> sm(L), im(a.num_inputs()), nm(L);
  for (std::uint64_t base = 0; base < total; base += 64) {
    const std::uint64_t lanes = std::min<std::uint64_t>(64, total - base);
    std::fill(sm.begin(), sm.end(), 0);
    std::fill(im.begin(), im.end(), 0);
    for (std::uint64_t k = 0; k < lanes; ++k) {
      const std::uint64_t idx = base + k;
      const std::uint64_t s = idx >> nin;
      for (std::size_t j = 0; j < L; ++j) sm[j] |= ((s >> j) & 1) << k;
      for (std::size_t i = 0; i < nu; ++i)
        im[U[i]] |= ((idx >> (nc + nu - 1 - i)) & 1) << k;
      for (std::size_t i = 0; i < nc; ++i)
        im[C[i]] |= ((idx >> (nc - 1 - i)) & 1) << k;
    }
    ev.step(sm.data(), im.data(), nm.data());
    for (std::uint64_t k = 0; k < lanes; ++k) {
      std::uint32_t t = 0;
      for (std::size_t j = 0; j < L; ++j) t |= ((nm[j] >> k) & 1) << j;
      succ[base + k] = t;
    }
  }
  for (std::uint64_t base = 0; base < ns; base += 64) {
    const std::uint64_t lanes = std::min<std::uint64_t>(64, ns - base);
    std::fill(sm.begin(), sm.end(), 0);
    for (std::uint64_t k = 0; k < lanes; ++k)
      for (std::size_t j = 0; j < L; ++j) sm[j] |= (((base + k) >> j) & 1) << k;
    const std::uint64_t m = ev.safe(sm.data());
    for (std::uint64_t k = 0; k < lanes; ++k) safe[base + k] = (m >> k) & 1;
  }

  SafetyGameResult r;
  r.backend = Backend::Explicit;
  std::vector<std::uint8_t> w = safe;
  auto count = [&] {
    double c = 0;
    for (auto x : w) c += x;
    return c;
  };
  r.region_sizes.push_back(count());
  const std::uint64_t nus = std::uint64_t{1} << nu;
  const std::uint64_t ncs = std::uint64_t{1} << nc;
  auto controllable_from = [&](std::uint64_t s, std::uint64_t u) {
    const std::uint32_t* row = &succ[(s << nin) | (u << nc)];
    for (std::uint64_t c = 0; c < ncs; ++c)
      if (w[row[c]]) return true;
    return false;
  };
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::uint8_t> nw = w;
    for (std::uint64_t s = 0; s < ns; ++s) {
      if (!w[s]) continue;
      for (std::uint64_t u = 0; u < nus; ++u) {
        if (!controllable_from(s, u)) {
          nw[s] = 0;
          changed = true;
          break;
        }
      }
    }
    w.swap(nw);
    ++r.iterations;
    r.region_sizes.push_back(count());
  }
  r.realizable = w[0];

  // diagram levels: latches, then uncontrollable, then controllable inputs
  const std::size_t nv = a.num_inputs() + L;
  r.level.assign(nv, 0);
  for (std::size_t j = 0; j < L; ++j) r.level[a.latch_var(j)] = unsigned(j);
  for (std::size_t i = 0; i < nu; ++i) r.level[U[i]] = unsigned(L + i);
  for (std::size_t i = 0; i < nc; ++i) r.level[C[i]] = unsigned(L + nu + i);
  r.bdd = std::make_shared<BddManager>(static_cast<unsigned>(nv),
                                       opt.node_budget);
  // table index has latch 0 as its most significant bit
  auto state_of = [L](std::uint64_t prefix) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < L; ++j)
      s |= ((prefix >> (L - 1 - j)) & 1) << j;
    return s;
  };
  r.winning = r.bdd->from_table(static_cast<unsigned>(L), [&](std::uint64_t x) {
    return w[state_of(x)] != 0;
  });
  if (r.realizable) {
    std::vector<std::uint32_t> move(ns * nus, 0);
    for (std::uint64_t s = 0; s < ns; ++s) {
      if (!w[s]) continue;
      for (std::uint64_t u = 0; u < nus; ++u) {
        const std::uint32_t* row = &succ[(s << nin) | (u << nc)];
        std::uint64_t c = 0;
        while (!w[row[c]]) ++c;
        move[s * nus + u] = static_cast<std::uint32_t>(c);
      }
    }
    Strategy st;
    st.bdd = r.bdd;
    st.level = r.level;
    st.uncontrollable = a.uncontrollable_inputs();
    for (std::size_t i = 0; i < nc; ++i) {
      const unsigned bit = static_cast<unsigned>(nc - 1 - i);
      st.outputs.push_back(r.bdd->from_table(
          static_cast<unsigned>(L + nu), [&](std::uint64_t x) {
            const std::uint64_t s = state_of(x >> nu);
            const std::uint64_t u = x & (nus - 1);
            return w[s] && ((move[s * nus + u] >> bit) & 1);
          }));
    }
    r.strategy = std::move(st);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Symbolic backend
// ---------------------------------------------------------------------------

// Inputs a latch reads go just above it, so that each next function is
// tested over nearby levels.
std::vector<unsigned> symbolic_order(const SymbolicAutomaton& a) {
  const std::size_t ni = a.num_inputs();
  std::vector<unsigned> level(ni + a.num_latches(), 0);
  std::vector<bool> placed(ni, false);
  unsigned next = 0;
  for (std::size_t j = 0; j < a.num_latches(); ++j) {
    std::vector<std::uint32_t> sup = support(a.pool, a.latches[j].next);
    std::sort(sup.begin(), sup.end());
    for (std::uint32_t v : sup) {
      if (v < ni && !placed[v]) {
        placed[v] = true;
        level[v] = next++;
      }
    }
    level[a.latch_var(j)] = next++;
  }
  for (std::size_t v = 0; v < ni; ++v)
    if (!placed[v]) level[v] = next++;
  return level;
}

SafetyGameResult solve_symbolic(const SymbolicAutomaton& a,
                                const SolveOptions& opt) {
  SafetyGameResult r;
  r.backend = Backend::Symbolic;
  const std::size_t L = a.num_latches();
  const std::size_t nv = a.num_inputs() + L;
  r.level = symbolic_order(a);
  r.bdd = std::make_shared<BddManager>(static_cast<unsigned>(nv),
                                       opt.node_budget);
  BddManager& m = *r.bdd;

  std::vector<Expr> roots{a.safe};
  for (const Latch& l : a.latches) roots.push_back(l.next);
  std::vector<Ref> fn = to_bdd(a.pool, roots, r.level, m);
  const Ref safe = fn[0];

  std::vector<Ref> sub(nv);
  for (unsigned v = 0; v < nv; ++v) sub[v] = m.var(v);
  for (std::size_t j = 0; j < L; ++j) sub[r.level[a.latch_var(j)]] = fn[j + 1];
  std::vector<bool> cvars(nv, false), uvars(nv, false);
  for (std::size_t i : a.controllable_inputs()) cvars[r.level[i]] = true;
  for (std::size_t i : a.uncontrollable_inputs()) uvars[r.level[i]] = true;
  const double scale = std::ldexp(1.0, -static_cast<int>(a.num_inputs()));

  Ref w = safe;
  r.region_sizes.push_back(m.sat_count(w) * scale);
  for (;;) {
    const Ref pre = m.forall(m.exists(m.compose(w, sub), cvars), uvars);
    const Ref nw = m.conj(w, pre);
    ++r.iterations;
    r.region_sizes.push_back(m.sat_count(nw) * scale);
    if (nw == w) break;
    w = nw;
  }
  r.winning = w;
  r.realizable = m.eval(w, std::vector<bool>(nv, false));

  if (r.realizable) {
    Strategy st;
    st.bdd = r.bdd;
    st.level = r.level;
    st.uncontrollable = a.uncontrollable_inputs();
    Ref good = m.conj(w, m.compose(w, sub));
    const auto C = a.controllable_inputs();
    for (std::size_t k = 0; k < C.size(); ++k) {
      const unsigned lv = r.level[C[k]];
      std::vector<bool> later(nv, false);
      for (std::size_t k2 = k + 1; k2 < C.size(); ++k2)
        later[r.level[C[k2]]] = true;
      // c_k = 0 unless no admissible move sets it to 0
      const Ref zero_ok = m.exists(m.restrict(good, lv, false), later);
      const Ref g = m.conj(w, m.neg(zero_ok));
      st.outputs.push_back(g);
      std::vector<Ref> one(nv);
      for (unsigned v = 0; v < nv; ++v) one[v] = m.var(v);
      one[lv] = g;
      good = m.compose(good, one);
    }
    r.strategy = std::move(st);
  }
  return r;
}

}  // namespace

SafetyGameResult solve(const SymbolicAutomaton& a, const SolveOptions& options) {
  Backend b = options.backend;
  if (b == Backend::Auto) {
    const std::size_t bits = a.num_latches() + a.num_inputs();
    const bool fits = a.num_latches() < 63 &&
                      (std::uint64_t{1} << a.num_latches()) <= options.state_budget;
    b = bits <= 20 && fits ? Backend::Explicit : Backend::Symbolic;
  }
  return b == Backend::Explicit ? solve_explicit(a, options)
                                : solve_symbolic(a, options);
}

Trace play_strategy(const SafetyGameResult& result, const SymbolicAutomaton& a,
                    const std::vector<Assignment>& u_seq) {
  if (!result.realizable || !result.strategy)
    throw StrategyError("play_strategy: the game is not realizable");
  const auto U = a.uncontrollable_inputs();
  const auto C = a.controllable_inputs();
  Trace trace;
  GameState s = a.init();
  auto check = [&](const GameState& st, std::size_t t) {
    if (!a.is_safe(st))
      throw StrategyError("play_strategy: unsafe state at step " +
                          std::to_string(t));
    if (!result.is_winning(st))
      throw StrategyError("play_strategy: left the winning region at step " +
                          std::to_string(t));
  };
  for (std::size_t t = 0; t < u_seq.size(); ++t) {
    check(s, t);
    if (u_seq[t].size() != U.size())
      throw std::invalid_argument("play_strategy: wrong number of inputs");
    const Assignment c = result.strategy->choose(s, u_seq[t]);
    Assignment in(a.num_inputs());
    for (std::size_t i = 0; i < U.size(); ++i) in[U[i]] = u_seq[t][i];
    for (std::size_t i = 0; i < C.size(); ++i) in[C[i]] = c[i];
    trace.push_back({s, in});
    s = a.step(s, in);
  }
  check(s, u_seq.size());
  trace.push_back({s, {}});
  return trace;
}

}  // namespace ebr
