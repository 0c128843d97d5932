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

#include "ebr/bdd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ebr {

BddManager::BddManager(unsigned num_vars, std::size_t node_limit)
    : num_vars_(num_vars), node_limit_(node_limit) {
  nodes_.push_back({num_vars, kFalse, kFalse});
  nodes_.push_back({num_vars, kTrue, kTrue});
}

BddManager::Ref BddManager::make(unsigned v, Ref lo, Ref hi) {
  if (lo == hi) return lo;
  auto key = std::make_tuple(Ref(v), lo, hi);
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  if (nodes_.size() >= node_limit_)
    throw ResourceError("BDD node budget of " + std::to_string(node_limit_) +
                        " exhausted");
  Ref r = static_cast<Ref>(nodes_.size());
  nodes_.push_back({v, lo, hi});
  unique_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::var(unsigned v) {
  if (v >= num_vars_) throw std::out_of_range("BddManager::var");
  return make(v, kFalse, kTrue);
}

BddManager::Ref BddManager::nvar(unsigned v) {
  if (v >= num_vars_) throw std::out_of_range("BddManager::nvar");
  return make(v, kTrue, kFalse);
}

BddManager::Ref BddManager::ite(Ref f, Ref g, Ref h) {
  if (f == kTrue) return g;
  if (f == kFalse) return h;
  if (g == h) return g;
  if (g == kTrue && h == kFalse) return f;
  auto key = std::make_tuple(f, g, h);
  if (auto it = ite_cache_.find(key); it != ite_cache_.end()) return it->second;
  const unsigned v =
      std::min({nodes_[f].level, nodes_[g].level, nodes_[h].level});
  auto cof = [&](Ref x, bool hi) {
    if (nodes_[x].level != v) return x;
    return hi ? nodes_[x].hi : nodes_[x].lo;
  };
  Ref lo = ite(cof(f, false), cof(g, false), cof(h, false));
  Ref hi = ite(cof(f, true), cof(g, true), cof(h, true));
  Ref r = make(v, lo, hi);
  ite_cache_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::quantify(Ref f, const std::vector<bool>& vars,
                                     bool existential,
                                     std::unordered_map<Ref, Ref>& memo) {
  if (is_const(f)) return f;
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  const Node n = nodes_[f];
  Ref lo = quantify(n.lo, vars, existential, memo);
  Ref hi = quantify(n.hi, vars, existential, memo);
  Ref r;
  if (n.level < vars.size() && vars[n.level])
    r = existential ? disj(lo, hi) : conj(lo, hi);
  else
    r = make(n.level, lo, hi);
  memo.emplace(f, r);
  return r;
}

BddManager::Ref BddManager::exists(Ref f, const std::vector<bool>& vars) {
  std::unordered_map<Ref, Ref> memo;
  return quantify(f, vars, true, memo);
}

BddManager::Ref BddManager::forall(Ref f, const std::vector<bool>& vars) {
  std::unordered_map<Ref, Ref> memo;
  return quantify(f, vars, false, memo);
}

BddManager::Ref BddManager::compose_rec(Ref f, const std::vector<Ref>& sub,
                                        std::unordered_map<Ref, Ref>& memo) {
  if (is_const(f)) return f;
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  const Node n = nodes_[f];
  Ref lo = compose_rec(n.lo, sub, memo);
  Ref hi = compose_rec(n.hi, sub, memo);
  Ref r = ite(sub[n.level], hi, lo);
  memo.emplace(f, r);
  return r;
}

BddManager::Ref BddManager::compose(Ref f, const std::vector<Ref>& sub) {
  if (sub.size() != num_vars_)
    throw std::invalid_argument("BddManager::compose: substitution size");
  std::unordered_map<Ref, Ref> memo;
  return compose_rec(f, sub, memo);
}

BddManager::Ref BddManager::restrict(Ref f, unsigned v, bool value) {
  std::vector<Ref> sub(num_vars_);
  for (unsigned i = 0; i < num_vars_; ++i) sub[i] = var(i);
  sub[v] = value ? kTrue : kFalse;
  return compose(f, sub);
}

BddManager::Ref BddManager::simplify(Ref f, Ref care) {
  Table memo;
  return simplify_rec(f, care, memo);
}

BddManager::Ref BddManager::simplify_rec(Ref f, Ref care, Table& memo) {
  if (care == kFalse) return kFalse;
  if (care == kTrue || is_const(f)) return f;
  if (f == care) return kTrue;
  auto key = std::make_tuple(f, care, Ref{0});
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const unsigned vf = level(f);
  const unsigned vc = level(care);
  Ref r;
  if (vc < vf) {
    r = simplify_rec(f, disj(low(care), high(care)), memo);
  } else {
    const Ref f0 = low(f);
    const Ref f1 = high(f);
    const Ref c0 = vf == vc ? low(care) : care;
    const Ref c1 = vf == vc ? high(care) : care;
    if (c0 == kFalse) {
      r = simplify_rec(f1, c1, memo);
    } else if (c1 == kFalse) {
      r = simplify_rec(f0, c0, memo);
    } else {
      const Ref lo = simplify_rec(f0, c0, memo);
      const Ref hi = simplify_rec(f1, c1, memo);
      r = make(vf, lo, hi);
    }
  }
  memo.emplace(key, r);
  return r;
}

bool BddManager::eval(Ref f, const std::vector<bool>& assignment) const {
  while (!is_const(f)) {
    const Node& n = nodes_[f];
    f = n.level < assignment.size() && assignment[n.level] ? n.hi : n.lo;
  }
  return f == kTrue;
}

double BddManager::sat_count(Ref f) const {
  std::unordered_map<Ref, double> memo;
  // fraction of assignments satisfying the sub-diagram
  std::function<double(Ref)> frac = [&](Ref x) -> double {
    if (x == kFalse) return 0.0;
    if (x == kTrue) return 1.0;
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    double r = 0.5 * (frac(nodes_[x].lo) + frac(nodes_[x].hi));
    memo.emplace(x, r);
    return r;
  };
  return std::ldexp(frac(f), static_cast<int>(num_vars_));
}

std::size_t BddManager::dag_size(Ref f) const {
  std::vector<Ref> stack{f};
  std::unordered_map<Ref, bool> seen;
  while (!stack.empty()) {
    Ref x = stack.back();
    stack.pop_back();
    if (is_const(x) || !seen.emplace(x, true).second) continue;
    stack.push_back(nodes_[x].lo);
    stack.push_back(nodes_[x].hi);
  }
  return seen.size();
}

BddManager::Ref BddManager::from_table(
    unsigned k, const std::function<bool(std::uint64_t)>& table) {
  if (k > num_vars_ || k > 40)
    throw std::invalid_argument("BddManager::from_table: too many variables");
  std::function<Ref(unsigned, std::uint64_t)> build =
      [&](unsigned v, std::uint64_t prefix) -> Ref {
    if (v == k) return table(prefix) ? kTrue : kFalse;
    Ref lo = build(v + 1, prefix << 1);
    Ref hi = build(v + 1, (prefix << 1) | 1);
    return make(v, lo, hi);
  };
  return build(0, 0);
}

std::vector<std::vector<std::pair<unsigned, bool>>> BddManager::cubes(
    Ref f) const {
  std::vector<std::vector<std::pair<unsigned, bool>>> out;
  std::vector<std::pair<unsigned, bool>> path;
  std::function<void(Ref)> walk = [&](Ref x) {
    if (x == kFalse) return;
    if (x == kTrue) {
      out.push_back(path);
      return;
    }
    const Node& n = nodes_[x];
    path.emplace_back(n.level, false);
    walk(n.lo);
    path.back().second = true;
    walk(n.hi);
    path.pop_back();
  };
  walk(f);
  return out;
}

}  // namespace ebr
