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

// Direct transcription of the satisfaction relation, with unbounded future
// quantifiers cut at a horizon large enough for lasso words: beyond
// stem + size * (loop + maxconst) every subformula is periodic.  Slow and
// only meant to cross-check the bit-sliced evaluator.

#pragma once

#include <map>

#include "ebr/oracle.hpp"

namespace ebr::testing {

class NaiveSemantics {
public:
  explicit NaiveSemantics(const LassoWord& w, const Formula& root) : w_(w) {
    horizon_ = w.stem.size() +
               (size(root) + 1) * (w.loop.size() + max_const(root) + 1);
  }

  bool holds(const Formula& f, std::size_t i) {
    auto key = std::make_pair(f.id(), i);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool v = compute(f, i);
    memo_.emplace(key, v);
    return v;
  }

private:
  bool compute(const Formula& f, std::size_t i) {
    switch (f.op()) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::Atom: return w_.at(i).count(f.name()) > 0;
      case Op::Not: return !holds(f.child(0), i);
      case Op::And: return holds(f.left(), i) && holds(f.right(), i);
      case Op::Or: return holds(f.left(), i) || holds(f.right(), i);
      case Op::Next: return holds(f.child(0), i + 1);
      case Op::Yesterday: return i > 0 && holds(f.child(0), i - 1);
      default: break;
    }
    auto at = [this](const Formula& g, bool positive) {
      return [this, g, positive](std::size_t j) { return holds(g, j) == positive; };
    };
    auto top = [](std::size_t) { return true; };
    const Formula x = f.child(0);
    const std::size_t a = f.lo(), b = f.hi();
    switch (f.op()) {
      case Op::Until: return until(at(x, true), at(f.right(), true), i, 0, horizon_);
      case Op::BoundedUntil: return until(at(x, true), at(f.right(), true), i, a, b);
      case Op::Eventually: return until(top, at(x, true), i, 0, horizon_);
      case Op::BoundedEventually: return until(top, at(x, true), i, a, b);
      case Op::Release:
        return !until(at(x, false), at(f.right(), false), i, 0, horizon_);
      case Op::Globally: return !until(top, at(x, false), i, 0, horizon_);
      case Op::BoundedGlobally: return !until(top, at(x, false), i, a, b);
      case Op::Since: return since(at(x, true), at(f.right(), true), i, 0, i);
      case Op::Once: return since(top, at(x, true), i, 0, i);
      case Op::BoundedOnce: return since(top, at(x, true), i, a, b);
      case Op::Triggered:
        return !since(at(x, false), at(f.right(), false), i, 0, i);
      case Op::Historically: return !since(top, at(x, false), i, 0, i);
      case Op::BoundedHistorically: return !since(top, at(x, false), i, a, b);
      default: break;
    }
    return false;
  }

  // exists j in [i+a, i+b]: g at j and f on [i, j)
  template <typename P, typename Q>
  bool until(P f, Q g, std::size_t i, std::size_t a, std::size_t b) {
    for (std::size_t j = i; j <= i + b; ++j) {
      if (j >= i + a && g(j)) return true;
      if (!f(j)) return false;
    }
    return false;
  }

  // exists j in [i-b, i-a], j >= 0: g at j and f on (j, i]
  template <typename P, typename Q>
  bool since(P f, Q g, std::size_t i, std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k <= b && k <= i; ++k) {
      const std::size_t j = i - k;
      if (k >= a && g(j)) return true;
      if (!f(j)) return false;
    }
    return false;
  }

  const LassoWord& w_;
  std::size_t horizon_;
  std::map<std::pair<const void*, std::size_t>, bool> memo_;
};

}  // namespace ebr::testing
