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

#include "ebr/formula.hpp"

#include <algorithm>
#include <functional>

namespace ebr {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

}  // namespace

std::size_t arity(Op op) {
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
    case Op::BoundedEventually:
    case Op::BoundedGlobally:
    case Op::Yesterday:
    case Op::Once:
    case Op::Historically:
    case Op::BoundedOnce:
    case Op::BoundedHistorically:
      return 1;
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Release:
    case Op::BoundedUntil:
    case Op::Since:
    case Op::Triggered:
      return 2;
  }
  return 0;
}

bool is_bounded(Op op) {
  switch (op) {
    case Op::BoundedUntil:
    case Op::BoundedEventually:
    case Op::BoundedGlobally:
    case Op::BoundedOnce:
    case Op::BoundedHistorically:
      return true;
    default:
      return false;
  }
}

Formula::Formula() : Formula(tt()) {}

Formula Formula::build(Op op, std::string name, Formula a, Formula b,
                       unsigned lo, unsigned hi) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lo = lo;
  n->hi = hi;
  n->name = std::move(name);
  std::size_t h = mix(static_cast<std::size_t>(op) + 1, lo);
  h = mix(h, hi);
  if (op == Op::Atom) h = mix(h, std::hash<std::string>{}(n->name));
  if (a.node_) {
    h = mix(h, a.hash());
    n->size += a.size();
    n->left = std::move(a.node_);
  }
  if (b.node_) {
    h = mix(h, b.hash());
    n->size += b.size();
    n->right = std::move(b.node_);
  }
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::tt() {
  static const Formula t = build(Op::True, {}, Formula(nullptr),
                                 Formula(nullptr), 0, 0);
  return t;
}

Formula Formula::ff() {
  static const Formula f = build(Op::False, {}, Formula(nullptr),
                                 Formula(nullptr), 0, 0);
  return f;
}

Formula Formula::atom(std::string name) {
  return build(Op::Atom, std::move(name), Formula(nullptr), Formula(nullptr),
               0, 0);
}

Formula Formula::make(Op op, std::vector<Formula> kids, unsigned lo,
                      unsigned hi) {
  if (kids.size() != ebr::arity(op) || op == Op::Atom)
    throw std::invalid_argument("Formula::make: wrong operand count");
  if (is_bounded(op) && lo > hi)
    throw std::invalid_argument("Formula::make: interval with lo > hi");
  if (!is_bounded(op)) lo = hi = 0;
  Formula a = kids.size() > 0 ? std::move(kids[0]) : Formula(nullptr);
  Formula b = kids.size() > 1 ? std::move(kids[1]) : Formula(nullptr);
  return build(op, {}, std::move(a), std::move(b), lo, hi);
}

Formula Formula::neg(Formula f) { return make(Op::Not, {std::move(f)}); }
Formula Formula::conj(Formula f, Formula g) {
  return make(Op::And, {std::move(f), std::move(g)});
}
Formula Formula::disj(Formula f, Formula g) {
  return make(Op::Or, {std::move(f), std::move(g)});
}
Formula Formula::implies(Formula f, Formula g) {
  return disj(neg(std::move(f)), std::move(g));
}
Formula Formula::iff(Formula f, Formula g) {
  return conj(implies(f, g), implies(g, f));
}
Formula Formula::next(Formula f, unsigned times) {
  for (unsigned i = 0; i < times; ++i) f = make(Op::Next, {std::move(f)});
  return f;
}
Formula Formula::until(Formula f, Formula g) {
  return make(Op::Until, {std::move(f), std::move(g)});
}
Formula Formula::release(Formula f, Formula g) {
  return make(Op::Release, {std::move(f), std::move(g)});
}
Formula Formula::eventually(Formula f) {
  return make(Op::Eventually, {std::move(f)});
}
Formula Formula::globally(Formula f) {
  return make(Op::Globally, {std::move(f)});
}
Formula Formula::bounded_until(Formula f, Formula g, unsigned lo,
                               unsigned hi) {
  return make(Op::BoundedUntil, {std::move(f), std::move(g)}, lo, hi);
}
Formula Formula::bounded_eventually(Formula f, unsigned lo, unsigned hi) {
  return make(Op::BoundedEventually, {std::move(f)}, lo, hi);
}
Formula Formula::bounded_globally(Formula f, unsigned lo, unsigned hi) {
  return make(Op::BoundedGlobally, {std::move(f)}, lo, hi);
}
Formula Formula::yesterday(Formula f, unsigned times) {
  for (unsigned i = 0; i < times; ++i)
    f = make(Op::Yesterday, {std::move(f)});
  return f;
}
Formula Formula::since(Formula f, Formula g) {
  return make(Op::Since, {std::move(f), std::move(g)});
}
Formula Formula::triggered(Formula f, Formula g) {
  return make(Op::Triggered, {std::move(f), std::move(g)});
}
Formula Formula::once(Formula f) { return make(Op::Once, {std::move(f)}); }
Formula Formula::historically(Formula f) {
  return make(Op::Historically, {std::move(f)});
}
Formula Formula::bounded_once(Formula f, unsigned lo, unsigned hi) {
  return make(Op::BoundedOnce, {std::move(f)}, lo, hi);
}
Formula Formula::bounded_historically(Formula f, unsigned lo, unsigned hi) {
  return make(Op::BoundedHistorically, {std::move(f)}, lo, hi);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.lo != y.lo || x.hi != y.hi ||
      x.size != y.size || x.name != y.name)
    return false;
  return Formula(x.left) == Formula(y.left) &&
         Formula(x.right) == Formula(y.right);
}

// ---------------------------------------------------------------------------

ParseError::ParseError(const std::string& what, std::size_t line,
                       std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------

std::size_t size(const Formula& f) { return f.size(); }

unsigned max_const(const Formula& f) {
  unsigned m = is_bounded(f.op()) ? f.hi() : 0;
  for (std::size_t i = 0; i < f.arity(); ++i)
    m = std::max(m, max_const(f.child(i)));
  return m;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is(Op::Atom)) {
    out.insert(f.name());
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_atoms(f.child(i), out);
}

void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Op::And)) {
    collect_conjuncts(f.left(), out);
    collect_conjuncts(f.right(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::pair<unsigned, Formula> strip_next(const Formula& f) {
  unsigned n = 0;
  Formula g = f;
  while (g.is(Op::Next)) {
    g = g.child(0);
    ++n;
  }
  return {n, g};
}

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  collect_conjuncts(f, out);
  return out;
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::tt();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = Formula::conj(r, fs[i]);
  return r;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::ff();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = Formula::disj(r, fs[i]);
  return r;
}

// ---------------------------------------------------------------------------
// Layers
// ---------------------------------------------------------------------------

std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::FullBounded: return "FullBounded";
    case Layer::Future: return "Future";
    case Layer::Boolean: return "Boolean";
    case Layer::FullPast: return "FullPast";
    case Layer::CanonicalAtom: return "CanonicalAtom";
    case Layer::NotEBR: return "NotEBR";
  }
  return "?";
}

namespace {

bool is_connective(Op op) {
  return op == Op::True || op == Op::False || op == Op::Atom ||
         op == Op::Not || op == Op::And || op == Op::Or;
}

template <typename Pred>
bool all_nodes(const Formula& f, Pred pred) {
  if (!pred(f.op())) return false;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (!all_nodes(f.child(i), pred)) return false;
  return true;
}

bool ebr_future(const Formula& f) {
  if (is_full_bounded(f)) return true;
  switch (f.op()) {
    case Op::And:
      return ebr_future(f.left()) && ebr_future(f.right());
    case Op::Next:
    case Op::Globally:
      return ebr_future(f.child(0));
    case Op::Release:
      return is_full_bounded(f.left()) && ebr_future(f.right());
    default:
      return false;
  }
}

bool past_future(const Formula& f) {
  if (is_full_past(f)) return true;
  switch (f.op()) {
    case Op::And:
      return past_future(f.left()) && past_future(f.right());
    case Op::Next:
    case Op::Globally:
      return past_future(f.child(0));
    case Op::Release:
      return is_full_past(strip_next(f.left()).second) &&
             past_future(f.right());
    default:
      return false;
  }
}

template <typename Leaf>
bool boolean_over(const Formula& f, Leaf leaf) {
  if (leaf(f)) return true;
  if (f.is(Op::And) || f.is(Op::Or))
    return boolean_over(f.left(), leaf) && boolean_over(f.right(), leaf);
  return false;
}

}  // namespace

bool is_propositional(const Formula& f) { return all_nodes(f, is_connective); }

bool is_full_bounded(const Formula& f) {
  return all_nodes(f, [](Op op) {
    return is_connective(op) || op == Op::Next || op == Op::BoundedUntil ||
           op == Op::BoundedEventually || op == Op::BoundedGlobally;
  });
}

bool is_full_past(const Formula& f) {
  return all_nodes(f, [](Op op) {
    return is_connective(op) || op == Op::Yesterday || op == Op::Since ||
           op == Op::Triggered || op == Op::Once || op == Op::Historically ||
           op == Op::BoundedOnce || op == Op::BoundedHistorically;
  });
}

bool is_ltl_ebr(const Formula& f) { return boolean_over(f, ebr_future); }

bool is_past_ebr(const Formula& f) { return boolean_over(f, past_future); }

bool is_past_ebr_future(const Formula& f) { return past_future(f); }

bool is_canonical_atom(const Formula& f) {
  Formula body = strip_next(f).second;
  if (is_full_past(body)) return true;
  if (body.is(Op::Globally)) return is_full_past(body.child(0));
  if (body.is(Op::Release))
    return is_full_past(body.left()) && is_full_past(body.right());
  return false;
}

bool is_canonical(const Formula& f) {
  return boolean_over(f, [](const Formula& g) { return is_canonical_atom(g); });
}

Layer classify(const Formula& f) {
  if (is_full_past(f)) return Layer::FullPast;
  if (is_full_bounded(f)) return Layer::FullBounded;
  if (is_canonical_atom(f)) return Layer::CanonicalAtom;
  if (ebr_future(f) || past_future(f)) return Layer::Future;
  if (is_ltl_ebr(f) || is_past_ebr(f) || is_canonical(f))
    return Layer::Boolean;
  return Layer::NotEBR;
}

// ---------------------------------------------------------------------------
// Partition / specification
// ---------------------------------------------------------------------------

bool Partition::is_controllable(const std::string& name) const {
  return std::find(controllable.begin(), controllable.end(), name) !=
         controllable.end();
}

bool Partition::contains(const std::string& name) const {
  return is_controllable(name) ||
         std::find(uncontrollable.begin(), uncontrollable.end(), name) !=
             uncontrollable.end();
}

void Partition::validate(const Formula& f) const {
  for (const auto& c : controllable)
    if (std::find(uncontrollable.begin(), uncontrollable.end(), c) !=
        uncontrollable.end())
      throw FragmentError("variable '" + c +
                          "' is both controllable and uncontrollable");
  for (const auto& a : atoms(f))
    if (!contains(a))
      throw FragmentError("atom '" + a + "' is not declared as input or output");
}

}  // namespace ebr
