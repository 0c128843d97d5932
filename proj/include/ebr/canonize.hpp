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

#include <optional>
#include <vector>

#include "ebr/formula.hpp"

namespace ebr {

/// X^depth body, X^depth G body or X^depth (lhs R body), all operands
/// full-past.
struct CanonicalAtom {
  enum class Kind { Past, Globally, Release };

  Kind kind = Kind::Past;
  unsigned depth = 0;
  Formula lhs;  // Release only
  Formula body;

  Formula formula() const;
  friend bool operator==(const CanonicalAtom&, const CanonicalAtom&) = default;
};

std::optional<CanonicalAtom> match_canonical_atom(const Formula& f);

/// A canonical formula: And/Or tree over canonical atoms.
struct CanonicalFormula {
  Formula formula;

  /// Distinct atoms, in left-to-right order of first occurrence.  A
  /// subtree that is itself an atom (for instance a full-past
  /// conjunction) counts as one.
  std::vector<CanonicalAtom> atoms() const;
};

/// Bottom-up rewriting with the next/globally/release rules.  Full-past
/// subformulas are left as they are; the result is an And/Or tree over
/// atoms X^i psi, X^i G psi and release chains X^i (psi1 R (... R psin)).
/// Throws FragmentError if `f` is not past-EBR.
Formula apply_rules(const Formula& f);

/// G applied to one rewritten conjunct X^i body.
Formula resolve_globally(const Formula& f);

/// (X^i psi1) R f for one rewritten conjunct f.
Formula resolve_release(const Formula& lhs, const Formula& f);

/// Collapses every release chain of three or more operands into a single
/// release whose left side is a chain of once operators.  Only the
/// And/Or skeleton is descended.
Formula flatten(const Formula& f);

/// flatten(apply_rules(f)).
CanonicalFormula canonize(const Formula& f);

}  // namespace ebr
