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

#include "ebr/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace ebr {

ExprPool::ExprPool() {
  nodes_.push_back({Kind::False});
  nodes_.push_back({Kind::True});
}

Expr ExprPool::make(Kind kind, std::uint32_t a, std::uint32_t b) {
  const std::uint64_t key = (std::uint64_t(kind) << 58) ^
                            (std::uint64_t(a) << 29) ^ std::uint64_t(b);
  // the packed key is exact while operands stay below 2^29
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  if (nodes_.size() >= (1u << 29)) throw std::length_error("ExprPool: full");
  const Expr e = static_cast<Expr>(nodes_.size());
  nodes_.push_back({kind, a, b});
  unique_.emplace(key, e);
  return e;
}

Expr ExprPool::var(std::uint32_t index) {
  if (auto it = vars_.find(index); it != vars_.end()) return it->second;
  const Expr e = static_cast<Expr>(nodes_.size());
  nodes_.push_back({Kind::Var, index, 0});
  vars_.emplace(index, e);
  return e;
}

Expr ExprPool::neg(Expr e) {
  if (e == kFalse) return kTrue;
  if (e == kTrue) return kFalse;
  if (nodes_[e].kind == Kind::Not) return nodes_[e].a;
  return make(Kind::Not, e, 0);
}

namespace {

bool complementary(const ExprPool& p, Expr x, Expr y) {
  const auto& nx = p.node(x);
  const auto& ny = p.node(y);
  return (nx.kind == ExprPool::Kind::Not && nx.a == y) ||
         (ny.kind == ExprPool::Kind::Not && ny.a == x);
}

}  // namespace

Expr ExprPool::conj(Expr x, Expr y) {
  if (x == kFalse || y == kFalse) return kFalse;
  if (x == kTrue) return y;
  if (y == kTrue) return x;
  if (x == y) return x;
  if (complementary(*this, x, y)) return kFalse;
  return make(Kind::And, x, y);
}

Expr ExprPool::disj(Expr x, Expr y) {
  if (x == kTrue || y == kTrue) return kTrue;
  if (x == kFalse) return y;
  if (y == kFalse) return x;
  if (x == y) return x;
  if (complementary(*this, x, y)) return kTrue;
  return make(Kind::Or, x, y);
}

Expr ExprPool::ite(Expr c, Expr t, Expr e) {
  if (c == kTrue) return t;
  if (c == kFalse) return e;
  if (t == e) return t;
  const Expr hi = conj(c, t);
  const Expr lo = conj(neg(c), e);
  return disj(hi, lo);
}

Expr ExprPool::iff(Expr x, Expr y) { return ite(x, y, neg(y)); }

Expr ExprPool::conj_all(const std::vector<Expr>& xs) {
  Expr acc = kTrue;
  for (Expr x : xs) acc = conj(acc, x);
  return acc;
}

Expr ExprPool::disj_all(const std::vector<Expr>& xs) {
  Expr acc = kFalse;
  for (Expr x : xs) acc = disj(acc, x);
  return acc;
}

std::vector<Expr> ExprPool::cone(const std::vector<Expr>& roots) const {
  std::vector<char> mark(nodes_.size(), 0);
  std::vector<Expr> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    Expr e = stack.back();
    stack.pop_back();
    if (mark[e]) continue;
    mark[e] = 1;
    const Node& n = nodes_[e];
    if (n.kind == Kind::Not) stack.push_back(n.a);
    if (n.kind == Kind::And || n.kind == Kind::Or) {
      stack.push_back(n.a);
      stack.push_back(n.b);
    }
  }
  std::vector<Expr> out;
  for (Expr e = 0; e < nodes_.size(); ++e)
    if (mark[e]) out.push_back(e);
  return out;
}

std::size_t ExprPool::gate_count(const std::vector<Expr>& roots) const {
  std::size_t n = 0;
  for (Expr e : cone(roots)) {
    const Kind k = nodes_[e].kind;
    n += k == Kind::Not || k == Kind::And || k == Kind::Or;
  }
  return n;
}

std::vector<std::uint64_t> ExprPool::eval_all(
    const std::vector<std::uint64_t>& vars) const {
  std::vector<std::uint64_t> v(nodes_.size());
  for (std::size_t e = 0; e < nodes_.size(); ++e) {
    const Node& n = nodes_[e];
    switch (n.kind) {
      case Kind::False: v[e] = 0; break;
      case Kind::True: v[e] = ~std::uint64_t{0}; break;
      case Kind::Var: v[e] = n.a < vars.size() ? vars[n.a] : 0; break;
      case Kind::Not: v[e] = ~v[n.a]; break;
      case Kind::And: v[e] = v[n.a] & v[n.b]; break;
      case Kind::Or: v[e] = v[n.a] | v[n.b]; break;
    }
  }
  return v;
}

}  // namespace ebr
