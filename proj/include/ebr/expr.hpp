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
#include <unordered_map>
#include <vector>

namespace ebr {

/// Handle of a node in an ExprPool.
using Expr = std::uint32_t;

/// Hash-consed Boolean expression DAG over numbered variables.
///
/// Nodes are created in topological order (operands before their users),
/// so a single forward sweep evaluates every node.  Constants fold and
/// trivial identities (x & x, !!x, x | !x, ...) are simplified on creation.
class ExprPool {
public:
  enum class Kind : std::uint8_t { False, True, Var, Not, And, Or };

  struct Node {
    Kind kind;
    std::uint32_t a = 0;  // variable index, or first operand
    std::uint32_t b = 0;  // second operand
  };

  ExprPool();

  static constexpr Expr kFalse = 0;
  static constexpr Expr kTrue = 1;

  Expr var(std::uint32_t index);
  Expr neg(Expr e);
  Expr conj(Expr x, Expr y);
  Expr disj(Expr x, Expr y);
  Expr ite(Expr c, Expr t, Expr e);
  Expr iff(Expr x, Expr y);
  Expr conj_all(const std::vector<Expr>& xs);
  Expr disj_all(const std::vector<Expr>& xs);

  const Node& node(Expr e) const { return nodes_[e]; }
  std::size_t size() const { return nodes_.size(); }

  /// Nodes reachable from `roots`, in topological order.
  std::vector<Expr> cone(const std::vector<Expr>& roots) const;
  /// Number of Not/And/Or nodes reachable from `roots`.
  std::size_t gate_count(const std::vector<Expr>& roots) const;

  /// Bit-parallel evaluation of every node; `vars[i]` holds 64 values of
  /// variable i.
  std::vector<std::uint64_t> eval_all(const std::vector<std::uint64_t>& vars) const;

private:
  Expr make(Kind kind, std::uint32_t a, std::uint32_t b);

  struct KeyHash {
    std::size_t operator()(std::uint64_t k) const {
      return static_cast<std::size_t>(k * 0x9e3779b97f4a7c15ULL >> 7);
    }
  };

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, Expr, KeyHash> unique_;
  std::unordered_map<std::uint32_t, Expr> vars_;
};

}  // namespace ebr
