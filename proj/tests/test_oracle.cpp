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

#include "doctest.h"
#include "ebr/oracle.hpp"
#include "support/generators.hpp"
#include "support/naive_semantics.hpp"

using namespace ebr;
using F = Formula;

namespace {

F P(const char* text) { return parse_formula(text); }

const std::vector<std::string> PQ{"p", "q"};

// Exhaustive agreement of two formulas at positions <= max_pos over every
// word of every shape with stem <= max_stem, loop <= max_loop; no covering
// shortcut.
bool agree_everywhere(const F& f, const F& g, std::size_t max_stem,
                      std::size_t max_loop, std::size_t max_pos) {
  for (std::size_t s = 0; s <= max_stem; ++s)
    for (std::size_t l = 1; l <= max_loop; ++l) {
      bool ok = true;
      for_each_batch(PQ, s, l, [&](const WordBatch& b) {
        auto vf = evaluate(b, f, max_pos + 1);
        auto vg = evaluate(b, g, max_pos + 1);
        if (vf != vg) ok = false;
      });
      if (!ok) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("constant loop") {
  LassoWord w{{}, {{"p"}}};
  CHECK(eval_at(w, 0, P("G p")));
}

TEST_CASE("bounded eventually one step") {
  LassoWord w{{{}}, {{"p"}}};
  CHECK(eval_at(w, 0, P("F[0,1] p")));
  CHECK_FALSE(eval_at(w, 0, P("p")));
}

TEST_CASE("position mapping and past at the origin") {
  LassoWord w{{{"p"}, {}}, {{"q"}, {"p", "q"}}};
  CHECK(w.at(0) == State{"p"});
  CHECK(w.at(2) == State{"q"});
  CHECK(w.at(5) == State{"p", "q"});
  CHECK_FALSE(eval_at(w, 0, P("Y true")));
  CHECK(eval_at(w, 1, P("Y p")));
  CHECK(eval_at(w, 0, P("H false | !Y true")));
  CHECK(eval_at(w, 0, P("!(Y p)")));
  CHECK(eval_at(w, 8, P("Y p & q")));
  CHECK_FALSE(eval_at(w, 9, P("Y p & q")));
  CHECK(eval_at(w, 1000, P("O[0,1] p & H[1,1] !p S p")) ==
        eval_at(w, 2, P("O[0,1] p & H[1,1] !p S p")));
  CHECK(eval_at(w, 0, P("F(p & !q)")));
  CHECK_FALSE(eval_at(w, 1, P("F(p & !q)")));
}

TEST_CASE("word enumeration counts and order") {
  CHECK(enumerate_words({"p"}, 0, 1).size() == 2);
  CHECK(enumerate_words(PQ, 1, 1).size() == 16);
  auto none = enumerate_words({}, 0, 1);
  REQUIRE(none.size() == 1);
  CHECK(none[0].loop == std::vector<State>{State{}});
  auto words = enumerate_words(PQ, 1, 1);
  CHECK(words[0] == LassoWord{{{}}, {{}}});
  CHECK(words[1] == LassoWord{{{"p"}}, {{}}});
  CHECK(words[2] == LassoWord{{{"q"}}, {{}}});
  CHECK(words[4] == LassoWord{{{}}, {{"p"}}});
  CHECK(enumerate_words(PQ, 4, 2).size() == 4096);
}

TEST_CASE("batch round trip") {
  auto words = enumerate_words(PQ, 2, 1);
  WordBatch b(PQ, 2, 1);
  for (std::size_t k = 0; k < 64; ++k) b.push(words[k]);
  for (std::size_t k = 0; k < 64; ++k) CHECK(b.word(k) == words[k]);
  CHECK_THROWS_AS(b.push(words[0]), std::length_error);
}

TEST_CASE("nested bounded eventually against its past form") {
  // F[0,1](q & F[0,1] p) read two steps later as O[0,1](Y q & O[0,1] p)
  F phi = P("F[0,1](q & F[0,1] p)");
  F past = P("X X O[0,1](Y q & O[0,1] p)");
  bool ok = true;
  for_each_word(PQ, 3, 1, [&](const LassoWord& w) {
    if (eval_at(w, 0, phi) != eval_at(w, 0, past)) ok = false;
  });
  CHECK(ok);
}

TEST_CASE("expansion laws") {
  testing::Rng rng(5);
  testing::GenOptions o;
  o.max_bound = 2;
  for (int k = 0; k < 60; ++k) {
    F a = testing::random_any(rng, o, 4);
    F b = testing::random_any(rng, o, 4);
    CAPTURE(to_string(a));
    CAPTURE(to_string(b));
    CHECK(agree_everywhere(F::until(a, b),
                           F::disj(b, F::conj(a, F::next(F::until(a, b)))), 3,
                           2, 3));
    CHECK(agree_everywhere(F::release(a, b),
                           F::conj(b, F::disj(a, F::next(F::release(a, b)))),
                           3, 2, 3));
    CHECK(agree_everywhere(F::since(a, b),
                           F::disj(b, F::conj(a, F::yesterday(F::since(a, b)))),
                           3, 2, 3));
    CHECK(agree_everywhere(F::neg(F::until(a, b)),
                           F::release(F::neg(a), F::neg(b)), 3, 2, 3));
  }
}

TEST_CASE("bounded operators equal their finite expansions") {
  auto next = [](F f, unsigned n) { return F::next(f, n); };
  F p = F::atom("p"), q = F::atom("q");
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = a; b <= 3; ++b) {
      std::vector<F> disjuncts;
      for (unsigned j = a; j <= b; ++j) {
        std::vector<F> hold{next(q, j)};
        for (unsigned k = 0; k < j; ++k) hold.push_back(next(p, k));
        disjuncts.push_back(conj_all(hold));
      }
      CHECK(agree_everywhere(F::bounded_until(p, q, a, b), disj_all(disjuncts),
                             3, 2, 3));
      std::vector<F> ev, g, once;
      for (unsigned j = a; j <= b; ++j) {
        ev.push_back(next(p, j));
        once.push_back(F::yesterday(p, j));
      }
      CHECK(agree_everywhere(F::bounded_eventually(p, a, b), disj_all(ev), 3, 2,
                             3));
      CHECK(agree_everywhere(F::bounded_globally(p, a, b),
                             F::neg(F::bounded_eventually(F::neg(p), a, b)), 3,
                             2, 3));
      CHECK(agree_everywhere(F::bounded_once(p, a, b), disj_all(once), 3, 2, 4));
      CHECK(agree_everywhere(F::bounded_historically(p, a, b),
                             F::neg(F::bounded_once(F::neg(p), a, b)), 3, 2, 4));
    }
}

TEST_CASE("bit-sliced evaluation matches the direct semantics") {
  testing::Rng rng(17);
  testing::GenOptions o;
  for (int k = 0; k < 300; ++k) {
    F f = testing::random_any(rng, o, 1 + k % 9);
    CAPTURE(to_string(f));
    const std::size_t s = k % 4, l = 1 + k % 3;
    for_each_batch(PQ, s, l, [&](const WordBatch& b) {
      auto v = evaluate(b, f, 7);
      for (std::size_t w = 0; w < b.count(); w += 7) {
        LassoWord word = b.word(w);
        testing::NaiveSemantics naive(word, f);
        for (std::size_t i = 0; i < 7; ++i)
          REQUIRE(((v[i] >> w) & 1) == naive.holds(f, i));
      }
    });
  }
}

TEST_CASE("covering shapes") {
  using S = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK(covering_shapes(4, 2) == S{{4, 2}});
  CHECK(covering_shapes(3, 1) == S{{3, 1}});
  CHECK(covering_shapes(5, 4) == S{{5, 3}, {5, 4}});
  // every smaller-shape word equals some covering word at each position
  F f = P("p S (q & Y true) | F(p & X q)");
  for (std::size_t s = 0; s <= 3; ++s)
    for (std::size_t l = 1; l <= 2; ++l)
      for_each_word(PQ, s, l, [&](const LassoWord& w) {
        LassoWord c = w;
        while (c.stem.size() < 3) {
          c.stem.push_back(c.loop.front());
          std::rotate(c.loop.begin(), c.loop.begin() + 1, c.loop.end());
        }
        if (c.loop.size() == 1) c.loop.push_back(c.loop[0]);
        for (std::size_t i = 0; i < 6; ++i)
          REQUIRE(eval_at(w, i, f) == eval_at(c, i, f));
      });
}

TEST_CASE("find_mismatch reports a witness") {
  auto m = find_mismatch(P("F[0,2] p"), P("p | X p"), PQ, 3, 2, 0);
  REQUIRE(m.has_value());
  CHECK(eval_at(m->word, m->position, P("F[0,2] p")) !=
        eval_at(m->word, m->position, P("p | X p")));
  CHECK_FALSE(find_mismatch(P("G p"), P("p & X G p"), PQ, 3, 2, 3));
}
