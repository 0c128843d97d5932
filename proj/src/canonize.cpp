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

#include "ebr/canonize.hpp"

#include <algorithm>

namespace ebr {

Formula CanonicalAtom::formula() const {
  switch (kind) {
    case Kind::Past: return Formula::next(body, depth);
    case Kind::Globally: return Formula::next(Formula::globally(body), depth);
    case Kind::Release:
      return Formula::next(Formula::release(lhs, body), depth);
  }
  return body;
}

std::optional<CanonicalAtom> match_canonical_atom(const Formula& f) {
  auto [depth, body] = strip_next(f);
  if (is_full_past(body)) return CanonicalAtom{CanonicalAtom::Kind::Past, depth, {}, body};
  if (body.is(Op::Globally) && is_full_past(body.child(0)))
    return CanonicalAtom{CanonicalAtom::Kind::Globally, depth, {}, body.child(0)};
  if (body.is(Op::Release) && is_full_past(body.left()) &&
      is_full_past(body.right()))
    return CanonicalAtom{CanonicalAtom::Kind::Release, depth, body.left(),
                         body.right()};
  return std::nullopt;
}

namespace {

void collect_atoms(const Formula& f, std::vector<CanonicalAtom>& out) {
  if (auto atom = match_canonical_atom(f)) {
    if (std::find(out.begin(), out.end(), *atom) == out.end())
      out.push_back(*atom);
    return;
  }
  if (!f.is(Op::And) && !f.is(Op::Or))
    throw FragmentError("not a canonical formula: " + to_string(f));
  collect_atoms(f.left(), out);
  collect_atoms(f.right(), out);
}

// Release chain psi1 R (psi2 R (... R psin)) with full-past operands.
bool chain_operands(const Formula& f, std::vector<Formula>& out) {
  Formula g = f;
  while (g.is(Op::Release) && is_full_past(g.left())) {
    out.push_back(g.left());
    g = g.right();
  }
  if (out.empty() || !is_full_past(g)) return false;
  out.push_back(g);
  return true;
}

Formula make_chain(const std::vector<Formula>& ops) {
  Formula g = ops.back();
  for (std::size_t k = ops.size() - 1; k-- > 0;) g = Formula::release(ops[k], g);
  return g;
}

Formula shift(const Formula& f, unsigned k) { return Formula::yesterday(f, k); }

std::vector<Formula> and_operands(const Formula& f) {
  if (is_full_past(f)) return {f};
  return conjuncts(f);
}

}  // namespace

std::vector<CanonicalAtom> CanonicalFormula::atoms() const {
  std::vector<CanonicalAtom> out;
  collect_atoms(formula, out);
  return out;
}

Formula resolve_globally(const Formula& f) {
  auto [i, body] = strip_next(f);
  if (is_full_past(body)) return Formula::next(Formula::globally(body), i);
  if (body.is(Op::Globally) && is_full_past(body.child(0))) return f;
  std::vector<Formula> ops;
  if (chain_operands(body, ops))
    return Formula::next(Formula::globally(ops.back()), i);
  return Formula::globally(f);
}

Formula resolve_release(const Formula& lhs, const Formula& f) {
  auto [i, psi1] = strip_next(lhs);
  if (!is_full_past(psi1))
    throw FragmentError("left release operand is not X^i of a past formula: " +
                        to_string(lhs));
  auto [j, body] = strip_next(f);
  if (is_full_past(body)) {
    if (i > j)
      return Formula::next(Formula::release(psi1, shift(body, i - j)), i);
    return Formula::next(Formula::release(shift(psi1, j - i), body), j);
  }
  if (body.is(Op::Globally) && is_full_past(body.child(0))) {
    if (i > j)
      return Formula::next(Formula::globally(shift(body.child(0), i - j)), i);
    return f;
  }
  std::vector<Formula> ops;
  if (chain_operands(body, ops)) {
    if (i > j) {
      for (auto& op : ops) op = shift(op, i - j);
      ops.insert(ops.begin(), psi1);
      return Formula::next(make_chain(ops), i);
    }
    ops.insert(ops.begin(), shift(psi1, j - i));
    return Formula::next(make_chain(ops), j);
  }
  return Formula::release(lhs, f);
}

Formula apply_rules(const Formula& f) {
  if (is_full_past(f)) return f;
  switch (f.op()) {
    case Op::And:
      return Formula::conj(apply_rules(f.left()), apply_rules(f.right()));
    case Op::Or:
      return Formula::disj(apply_rules(f.left()), apply_rules(f.right()));
    case Op::Next: {
      Formula g = apply_rules(f.child(0));
      if (g.is(Op::Or) && !is_full_past(g))
        throw FragmentError("disjunction below a future operator: " +
                            to_string(f));
      std::vector<Formula> parts = and_operands(g);
      for (auto& part : parts) part = Formula::next(part);
      return conj_all(parts);
    }
    case Op::Globally: {
      std::vector<Formula> parts = and_operands(apply_rules(f.child(0)));
      for (auto& part : parts) part = resolve_globally(part);
      return conj_all(parts);
    }
    case Op::Release: {
      std::vector<Formula> parts = and_operands(apply_rules(f.right()));
      for (auto& part : parts) part = resolve_release(f.left(), part);
      return conj_all(parts);
    }
    default:
      throw FragmentError("not a past-EBR formula: " + to_string(f));
  }
}

Formula flatten(const Formula& f) {
  if (f.is(Op::And) || f.is(Op::Or)) {
    if (is_full_past(f)) return f;
    Formula l = flatten(f.left()), r = flatten(f.right());
    return f.is(Op::And) ? Formula::conj(l, r) : Formula::disj(l, r);
  }
  auto [i, body] = strip_next(f);
  std::vector<Formula> ops;
  if (!chain_operands(body, ops) || ops.size() < 3) return f;
  // psi_{n-1} & O(psi_{n-2} & ... O(psi_1 & Y^i true))
  const Formula start = Formula::yesterday(Formula::tt(), i);
  Formula acc = i == 0 ? ops[0] : Formula::conj(ops[0], start);
  for (std::size_t k = 1; k + 1 < ops.size(); ++k)
    acc = Formula::conj(ops[k], Formula::once(acc));
  return Formula::next(Formula::release(acc, ops.back()), i);
}

CanonicalFormula canonize(const Formula& f) {
  if (!is_past_ebr(f))
    throw FragmentError("not a past-EBR formula: " + to_string(f));
  return {flatten(apply_rules(f))};
}

}  // namespace ebr
