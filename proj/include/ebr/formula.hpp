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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ebr {

/// Operators of LTL with past and bounded operators.
enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  // future
  Next,
  Until,
  Release,
  Eventually,
  Globally,
  BoundedUntil,
  BoundedEventually,
  BoundedGlobally,
  // past
  Yesterday,
  Since,
  Triggered,
  Once,
  Historically,
  BoundedOnce,
  BoundedHistorically,
};

/// Number of operands taken by `op` (0, 1 or 2).
std::size_t arity(Op op);

/// True for the operators that carry an interval [lo, hi].
bool is_bounded(Op op);

/// Immutable formula handle.
///
/// Formulas are trees of reference-counted nodes; subtrees may be shared
/// between formulas.  Equality and hashing are structural.
class Formula {
public:
  Formula();  // the constant `true`

  static Formula tt();
  static Formula ff();
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula f, Formula g);
  static Formula disj(Formula f, Formula g);
  static Formula implies(Formula f, Formula g);
  static Formula iff(Formula f, Formula g);

  static Formula next(Formula f, unsigned times = 1);
  static Formula until(Formula f, Formula g);
  static Formula release(Formula f, Formula g);
  static Formula eventually(Formula f);
  static Formula globally(Formula f);
  static Formula bounded_until(Formula f, Formula g, unsigned lo, unsigned hi);
  static Formula bounded_eventually(Formula f, unsigned lo, unsigned hi);
  static Formula bounded_globally(Formula f, unsigned lo, unsigned hi);

  static Formula yesterday(Formula f, unsigned times = 1);
  static Formula since(Formula f, Formula g);
  static Formula triggered(Formula f, Formula g);
  static Formula once(Formula f);
  static Formula historically(Formula f);
  static Formula bounded_once(Formula f, unsigned lo, unsigned hi);
  static Formula bounded_historically(Formula f, unsigned lo, unsigned hi);

  /// Generic constructor; `kids` must match arity(op).
  static Formula make(Op op, std::vector<Formula> kids, unsigned lo = 0,
                      unsigned hi = 0);

  Op op() const { return node_->op; }
  bool is(Op o) const { return node_->op == o; }
  std::size_t arity() const { return ebr::arity(node_->op); }
  const std::string& name() const { return node_->name; }
  unsigned lo() const { return node_->lo; }
  unsigned hi() const { return node_->hi; }
  Formula child(std::size_t i) const {
    return Formula(i == 0 ? node_->left : node_->right);
  }
  Formula left() const { return child(0); }
  Formula right() const { return child(1); }

  /// Cached structural hash.
  std::size_t hash() const { return node_->hash; }
  /// Node count of the formula tree.
  std::size_t size() const { return node_->size; }
  /// Address of the shared node; stable while any handle is alive.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

private:
  struct Node {
    Op op;
    unsigned lo = 0;
    unsigned hi = 0;
    std::string name;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula build(Op op, std::string name, Formula a, Formula b,
                       unsigned lo, unsigned hi);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// An interval [a, b] with a > b.
class BoundError : public ParseError {
public:
  using ParseError::ParseError;
};

/// A formula outside the fragment an operation accepts.
class FragmentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Concrete syntax
// ---------------------------------------------------------------------------

/// Parse one formula.
///
/// Grammar, loosest binding first:
///   <->, -> (right associative), |, &, binary temporal U R S T (right
///   associative, U may carry [a,b]), unary ! X F G Y O H (X takes [i],
///   F G O H take [a,b]).  A word starting with operator letters followed by
///   nothing or by a lowercase letter is split, so `GFp` reads as `G F p` and
///   `YYu1` as `Y Y u1`; atom names therefore start with a lowercase letter
///   or with letters other than X F G Y O H U R S T.  `line` offsets the
///   reported error positions.
Formula parse_formula(std::string_view text, std::size_t line = 1);

/// Printed form accepted back by parse_formula.
std::string to_string(const Formula& f);

// ---------------------------------------------------------------------------
// Structural utilities
// ---------------------------------------------------------------------------

std::size_t size(const Formula& f);

/// Greatest upper bound over all bounded operators, 0 if there is none.
unsigned max_const(const Formula& f);

std::set<std::string> atoms(const Formula& f);

/// Strips leading Next operators: returns the count and the remainder.
std::pair<unsigned, Formula> strip_next(const Formula& f);

/// Operands of a tree of And nodes, left to right.
std::vector<Formula> conjuncts(const Formula& f);

/// Left-nested conjunction of `fs`; `true` when empty.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

// ---------------------------------------------------------------------------
// Layers
// ---------------------------------------------------------------------------

enum class Layer {
  FullBounded,
  Future,
  Boolean,
  FullPast,
  CanonicalAtom,
  NotEBR,
};

std::string_view to_string(Layer layer);

/// Only propositional connectives, X and bounded future operators.
bool is_full_bounded(const Formula& f);
/// Only propositional connectives and past operators.
bool is_full_past(const Formula& f);
bool is_propositional(const Formula& f);

/// Membership in the LTL-EBR grammar (bounded / future / Boolean layers).
bool is_ltl_ebr(const Formula& f);
/// Membership in the past-EBR grammar: full-past bodies, future layer with
/// X, G and (X^i psi) R phi, Boolean layer on top.
bool is_past_ebr(const Formula& f);
/// The future layer of the past-EBR grammar alone (no disjunction above
/// future operators).
bool is_past_ebr_future(const Formula& f);
/// X^i psi, X^i G psi or X^i (psi1 R psi2) with full-past bodies.
bool is_canonical_atom(const Formula& f);
/// Boolean combination of canonical atoms.
bool is_canonical(const Formula& f);

/// Most specific layer generating `f`.  Precedence when several apply:
/// FullPast, FullBounded, CanonicalAtom, Future, Boolean.
Layer classify(const Formula& f);

// ---------------------------------------------------------------------------
// Specifications
// ---------------------------------------------------------------------------

/// Split of the alphabet into Controller (outputs) and Environment (inputs).
struct Partition {
  std::vector<std::string> controllable;
  std::vector<std::string> uncontrollable;

  bool is_controllable(const std::string& name) const;
  bool contains(const std::string& name) const;
  /// Throws FragmentError if the sets overlap or an atom of `f` is missing.
  void validate(const Formula& f) const;
};

struct Specification {
  Partition partition;
  Formula formula;
};

/// Reads the `.inputs` / `.outputs` header and the formula lines; several
/// formulas are conjoined.
Specification parse_specification(std::string_view text);

std::string to_string(const Specification& spec);

}  // namespace ebr
