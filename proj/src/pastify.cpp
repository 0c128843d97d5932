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

#include "ebr/pastify.hpp"

#include <algorithm>

namespace ebr {

unsigned temporal_depth(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
      return temporal_depth(f.child(0));
    case Op::And:
    case Op::Or:
      return std::max(temporal_depth(f.left()), temporal_depth(f.right()));
    case Op::Next:
      return 1 + temporal_depth(f.child(0));
    case Op::BoundedEventually:
    case Op::BoundedGlobally:
      return f.hi() + temporal_depth(f.child(0));
    case Op::BoundedUntil:
      return f.hi() +
             std::max(temporal_depth(f.left()), temporal_depth(f.right()));
    default:
      throw FragmentError("temporal depth of a formula that is not "
                          "full-bounded: " + to_string(f));
  }
}

namespace {

// O[0,n] f and H[0,n] f, with the empty window n = 0 collapsed.
Formula once_upto(Formula f, unsigned n) {
  return n == 0 ? f : Formula::bounded_once(std::move(f), 0, n);
}

Formula hist_upto(Formula f, unsigned n) {
  return n == 0 ? f : Formula::bounded_historically(std::move(f), 0, n);
}

Formula core(const Formula& f, unsigned d) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
      return Formula::yesterday(f, d);
    case Op::Not:
      return Formula::neg(core(f.child(0), d));
    case Op::And:
      return Formula::conj(core(f.left(), d), core(f.right(), d));
    case Op::Or:
      return Formula::disj(core(f.left(), d), core(f.right(), d));
    case Op::Next:
      return core(f.child(0), d - 1);
    case Op::BoundedEventually:
      return once_upto(core(f.child(0), d - f.hi()), f.hi() - f.lo());
    case Op::BoundedGlobally:
      return hist_upto(core(f.child(0), d - f.hi()), f.hi() - f.lo());
    case Op::BoundedUntil: {
      const unsigned a = f.lo(), b = f.hi();
      if (f.left().is(Op::True))
        return once_upto(core(f.right(), d - b), b - a);
      Formula lhs = Formula::yesterday(core(f.left(), d - b));
      Formula rhs = core(f.right(), d - b);
      std::vector<Formula> terms;
      for (unsigned t = 0; t <= b - a; ++t) {
        // H over [0, b-t-1]; the range is empty when t = b
        Formula held = t == b ? rhs
                              : Formula::conj(rhs, hist_upto(lhs, b - t - 1));
        terms.push_back(Formula::yesterday(held, t));
      }
      return disj_all(terms);
    }
    default:
      throw FragmentError("pastification of a formula that is not "
                          "full-bounded: " + to_string(f));
  }
}

// Left release operands must have the shape X^i psi with psi full-past.
bool next_over_past(const Formula& f) {
  return is_full_past(strip_next(f).second);
}

Formula past_ebr(const Formula& f, bool in_future) {
  if (is_full_bounded(f)) {
    const bool keep = in_future ? is_past_ebr_future(f) : is_past_ebr(f);
    return keep ? f : pastify(f);
  }
  switch (f.op()) {
    case Op::And:
      return Formula::conj(past_ebr(f.left(), in_future),
                           past_ebr(f.right(), in_future));
    case Op::Or:
      return Formula::disj(past_ebr(f.left(), in_future),
                           past_ebr(f.right(), in_future));
    case Op::Next:
      return Formula::next(past_ebr(f.child(0), true));
    case Op::Globally:
      return Formula::globally(past_ebr(f.child(0), true));
    case Op::Release: {
      Formula lhs = next_over_past(f.left()) ? f.left() : pastify(f.left());
      return Formula::release(lhs, past_ebr(f.right(), true));
    }
    default:
      throw FragmentError("not an LTL-EBR formula: " + to_string(f));
  }
}

}  // namespace

Formula pastify_core(const Formula& f, unsigned d) {
  const unsigned depth = temporal_depth(f);
  if (d < depth)
    throw FragmentError("pastification depth " + std::to_string(d) +
                        " below temporal depth " + std::to_string(depth));
  return core(f, d);
}

Formula pastify(const Formula& f) {
  const unsigned d = temporal_depth(f);
  return Formula::next(core(f, d), d);
}

Formula to_past_ebr(const Formula& f) {
  if (!is_ltl_ebr(f))
    throw FragmentError("not an LTL-EBR formula: " + to_string(f));
  return past_ebr(f, false);
}

}  // namespace ebr
