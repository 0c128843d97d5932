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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebr/formula.hpp"

namespace ebr {

using State = std::set<std::string>;

/// Ultimately periodic word stem . loop^omega.
struct LassoWord {
  std::vector<State> stem;
  std::vector<State> loop;  // non-empty

  const State& at(std::size_t i) const;
  friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

std::string to_string(const LassoWord& w);

/// Up to 64 lasso words of identical shape, stored bit-sliced: bit k of
/// mask(pos, atom) is the value of the atom in word k at that position.
class WordBatch {
public:
  WordBatch(std::vector<std::string> atoms, std::size_t stem_len,
            std::size_t loop_len);

  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t stem_len() const { return stem_len_; }
  std::size_t loop_len() const { return loop_len_; }
  std::size_t count() const { return count_; }
  /// Bits of words that are present.
  std::uint64_t live() const {
    return count_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count_) - 1;
  }

  /// Appends a word of the batch's shape; at most 64.
  void push(const LassoWord& w);
  LassoWord word(std::size_t k) const;

  std::uint64_t& mask(std::size_t pos, std::size_t atom) {
    return masks_[pos * atoms_.size() + atom];
  }
  std::uint64_t mask(std::size_t pos, std::size_t atom) const {
    return masks_[pos * atoms_.size() + atom];
  }
  void set_count(std::size_t n) { count_ = n; }

private:
  std::vector<std::string> atoms_;
  std::size_t stem_len_;
  std::size_t loop_len_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> masks_;
};

/// Truth values of `f` on every word of `batch` at positions 0 .. n-1.
/// Atoms of `f` missing from the batch are false everywhere.
std::vector<std::uint64_t> evaluate(const WordBatch& batch, const Formula& f,
                                    std::size_t n);

bool eval_at(const LassoWord& w, std::size_t i, const Formula& f);

/// All words over `atoms` with the given shape, in counting order: word k
/// gives atom a at position t the value of bit (t * |atoms| + a) of k.
std::vector<LassoWord> enumerate_words(const std::vector<std::string>& atoms,
                                       std::size_t stem_len,
                                       std::size_t loop_len);

void for_each_word(const std::vector<std::string>& atoms, std::size_t stem_len,
                   std::size_t loop_len,
                   const std::function<void(const LassoWord&)>& fn);

/// Same enumeration, 64 words per batch.
void for_each_batch(const std::vector<std::string>& atoms, std::size_t stem_len,
                    std::size_t loop_len,
                    const std::function<void(const WordBatch&)>& fn);

/// Shapes (stem, loop) whose words cover, as infinite words, every word with
/// stem <= max_stem and loop <= max_loop: a shorter stem is unrolled into the
/// loop and a loop is repeated to a longer one.
std::vector<std::pair<std::size_t, std::size_t>> covering_shapes(
    std::size_t max_stem, std::size_t max_loop);

struct Mismatch {
  LassoWord word;
  std::size_t position;
};

/// First word and position <= max_pos where f and g differ, over all words
/// with stem <= max_stem and loop <= max_loop.
std::optional<Mismatch> find_mismatch(const Formula& f, const Formula& g,
                                      const std::vector<std::string>& atoms,
                                      std::size_t max_stem,
                                      std::size_t max_loop,
                                      std::size_t max_pos);

}  // namespace ebr
