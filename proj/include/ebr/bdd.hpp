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
#include <functional>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace ebr {

/// Raised when a configured resource budget is exhausted.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reduced ordered binary decision diagrams.
///
/// Variables are identified with their level: variable 0 is tested first.
/// Nodes are never freed; the manager throws ResourceError once it holds
/// more than `node_limit` nodes.
class BddManager {
public:
  using Ref = std::uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  explicit BddManager(unsigned num_vars, std::size_t node_limit = 1u << 24);

  unsigned num_vars() const { return num_vars_; }
  std::size_t size() const { return nodes_.size(); }

  Ref var(unsigned v);
  Ref nvar(unsigned v);
  Ref make(unsigned v, Ref lo, Ref hi);

  Ref ite(Ref f, Ref g, Ref h);
  Ref neg(Ref f) { return ite(f, kFalse, kTrue); }
  Ref conj(Ref f, Ref g) { return ite(f, g, kFalse); }
  Ref disj(Ref f, Ref g) { return ite(f, kTrue, g); }
  Ref implies(Ref f, Ref g) { return ite(f, g, kTrue); }

  /// Quantify every variable v with `vars[v]` set.
  Ref exists(Ref f, const std::vector<bool>& vars);
  Ref forall(Ref f, const std::vector<bool>& vars);
  /// Simultaneous substitution: variable v becomes `sub[v]`.
  Ref compose(Ref f, const std::vector<Ref>& sub);
  /// Cofactor with respect to one variable.
  Ref restrict(Ref f, unsigned v, bool value);
  /// A function equal to `f` wherever `care` holds, usually smaller
  /// (the Coudert-Madre restrict operator).
  Ref simplify(Ref f, Ref care);

  bool eval(Ref f, const std::vector<bool>& assignment) const;
  /// Number of satisfying assignments over variables [0, num_vars).
  double sat_count(Ref f) const;
  std::size_t dag_size(Ref f) const;

  /// Builds the function whose value on the assignment with bits
  /// (x_0 ... x_{k-1}) is `table(index)`, where x_0 is the most significant
  /// bit of index and the table ranges over variables 0..k-1.
  Ref from_table(unsigned k, const std::function<bool(std::uint64_t)>& table);

  /// The disjoint cubes of the paths to `true`, as (variable, value) lists.
  std::vector<std::vector<std::pair<unsigned, bool>>> cubes(Ref f) const;

  bool is_const(Ref f) const { return f <= kTrue; }
  unsigned level(Ref f) const { return nodes_[f].level; }
  Ref low(Ref f) const { return nodes_[f].lo; }
  Ref high(Ref f) const { return nodes_[f].hi; }

private:
  struct Node {
    unsigned level;
    Ref lo;
    Ref hi;
  };
  struct TripleHash {
    std::size_t operator()(const std::tuple<Ref, Ref, Ref>& t) const {
      auto [a, b, c] = t;
      std::uint64_t h = a * 0x9e3779b97f4a7c15ULL;
      h ^= b + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
      h ^= c * 0xc2b2ae3d27d4eb4fULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };
  using Table = std::unordered_map<std::tuple<Ref, Ref, Ref>, Ref, TripleHash>;

  Ref quantify(Ref f, const std::vector<bool>& vars, bool existential,
               std::unordered_map<Ref, Ref>& memo);
  Ref compose_rec(Ref f, const std::vector<Ref>& sub,
                  std::unordered_map<Ref, Ref>& memo);

  Ref simplify_rec(Ref f, Ref care, Table& memo);

  unsigned num_vars_;
  std::size_t node_limit_;
  std::vector<Node> nodes_;
  Table unique_;
  Table ite_cache_;
};

}  // namespace ebr
