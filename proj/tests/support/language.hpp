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

#include <bit>
#include <optional>

#include "ebr/automaton.hpp"
#include "ebr/oracle.hpp"

namespace ebr::testing {

/// First word with stem <= max_stem and loop in [1, max_loop] on which the
/// automaton's verdict differs from the truth value of `f` at position 0.
/// Words range over the automaton's inputs.
inline std::optional<LassoWord> language_mismatch(const SymbolicAutomaton& a,
                                                  const Formula& f,
                                                  std::size_t max_stem,
                                                  std::size_t max_loop,
                                                  std::size_t* words = nullptr) {
  std::optional<LassoWord> found;
  for (std::size_t s = 0; s <= max_stem && !found; ++s) {
    for (std::size_t l = 1; l <= max_loop && !found; ++l) {
      for_each_batch(a.inputs, s, l, [&](const WordBatch& b) {
        if (found) return;
        const std::uint64_t want = evaluate(b, f, 1)[0];
        const std::uint64_t got = a.accepts(b);
        if (words) *words += b.count();
        if (const std::uint64_t diff = (want ^ got) & b.live())
          found = b.word(static_cast<std::size_t>(std::countr_zero(diff)));
      });
    }
  }
  return found;
}

}  // namespace ebr::testing
