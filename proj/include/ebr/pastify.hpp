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

#include "ebr/formula.hpp"

namespace ebr {

/// Furthest future offset constrained by a full-bounded formula.
/// Throws FragmentError on anything else.
unsigned temporal_depth(const Formula& f);

/// Past formula equivalent to `f` when read `d` steps later:
/// sigma, i |= f  iff  sigma, i + d |= pastify_core(f, d).
/// Requires d >= temporal_depth(f).
Formula pastify_core(const Formula& f, unsigned d);

/// X^D pastify_core(f, D) with D = temporal_depth(f).
Formula pastify(const Formula& f);

/// Replaces the full-bounded subformulas of an LTL-EBR formula by past
/// formulas under next operators.  Subformulas already in past-EBR shape are
/// kept.  Throws FragmentError if `f` is not LTL-EBR.
Formula to_past_ebr(const Formula& f);

}  // namespace ebr
