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

#include <string>

#include "ebr/formula.hpp"

namespace ebr {

/// Formula text of the scalable benchmark families, n >= 1:
///   1: G(c0 & X G(c1 & ... X G(cn & u)))
///   2: G((c0 | u0) & X G((c1 | u1) & ... X G(cn | un)))
///   3: G(c) & (G(u1) | ... | G(un))
///   4: c & X(u1 | u2) & XX(u2 | u3) & ... & X^n(un | un+1)
/// In family 3 the i-th disjunct is a conjunction of copies of u_i only,
/// which collapses to G(u_i).  Atoms starting with `c` are controllable.
/// Throws std::invalid_argument for an unknown family or n = 0.
std::string benchmark_formula(unsigned family, unsigned n);

/// Specification file text (headers plus formula) of a benchmark.
std::string benchmark_spec(unsigned family, unsigned n);

}  // namespace ebr
