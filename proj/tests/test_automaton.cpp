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

#include <algorithm>

#include "doctest.h"
#include "ebr/automaton.hpp"
#include "ebr/canonize.hpp"
#include "ebr/pastify.hpp"
#include "support/generators.hpp"
#include "support/invariants.hpp"
#include "support/language.hpp"

using namespace ebr;
using namespace ebr::testing;

namespace {

Formula P(const char* text) { return parse_formula(text); }

Partition part(std::vector<std::string> u, std::vector<std::string> c) {
  Partition p;
  p.uncontrollable = std::move(u);
  p.controllable = std::move(c);
  return p;
}

SymbolicAutomaton from_canonical(const char* text, const Partition& pt) {
  return compile(CanonicalFormula{P(text)}, pt);
}

SymbolicAutomaton pipeline(const Formula& f, const Partition& pt) {
  return compile(canonize(to_past_ebr(f)), pt);
}

const Partition PQ = part({"p"}, {"q"});

std::size_t latch_index(const SymbolicAutomaton& a, const std::string& name) {
  for (std::size_t j = 0; j < a.latches.size(); ++j)
    if (a.latches[j].name == name) return j;
  FAIL("no latch " << name);
  return 0;
}

State S(std::initializer_list<const char*> xs) {
  State s;
  for (auto x : xs) s.insert(x);
  return s;
}

void check_run_invariants(const SymbolicAutomaton& a, Rng& rng, int n) {
  auto bad = run_violation(a, rng, n);
  if (bad) FAIL_CHECK(*bad);
}

}  // namespace

TEST_CASE("two-client example compiles to two error latches") {
  auto a = pipeline(P("G(u1 -> X X c1) & G(u2 -> X c2)"),
                    part({"u1", "u2"}, {"c1", "c2"}));
  CHECK(a.to_string(a.safe) == "!error_1 & !error_2");
  CHECK(a.max_depth == 2);
  CHECK(a.counter_bits == 2);
  std::size_t errors = 0, past = 0;
  for (const auto& l : a.latches) {
    errors += l.kind == LatchKind::Error;
    past += l.kind == LatchKind::Past;
  }
  CHECK(errors == 2);
  CHECK(past == 3);  // Y u1, Y Y u1, Y u2
  CHECK_FALSE(language_mismatch(a, P("XX G(YYu1 -> c1) & X G(Yu2 -> c2)"), 3, 2));
}

TEST_CASE("G p has a single error latch and no counter") {
  auto a = from_canonical("G p", part({"p"}, {}));
  REQUIRE(a.latches.size() == 1);
  CHECK(a.latches[0].name == "error_1");
  CHECK(a.counter_bits == 0);
  CHECK(a.to_string(a.latches[0].next) == "error_1 | !p");
  CHECK(a.to_string(a.safe) == "!error_1");

  Assignment next = a.step(a.init(), Assignment{false});
  CHECK(next == Assignment{true});
  CHECK(a.step(a.init(), Assignment{true}) == Assignment{false});
  CHECK(a.step(next, Assignment{true}) == Assignment{true});

  CHECK(a.accepts(LassoWord{{}, {S({"p"})}}));
  CHECK_FALSE(a.accepts(LassoWord{{S({})}, {S({"p"})}}));
  CHECK_FALSE(a.accepts(LassoWord{{S({"p"})}, {S({"p"}), S({})}}));
}

TEST_CASE("X p fires its error latch only for step one") {
  auto a = from_canonical("X p", part({"p"}, {}));
  const std::size_t err = latch_index(a, "error_1");
  // p values at steps 0, 1, 2
  auto run = [&](bool p0, bool p1, bool p2) {
    Assignment s = a.init();
    std::vector<bool> safe{a.is_safe(s)};
    for (bool p : {p0, p1, p2}) {
      s = a.step(s, Assignment{p});
      safe.push_back(a.is_safe(s));
    }
    return std::make_pair(bool(s[err]), safe);
  };
  auto [e1, safe1] = run(true, false, true);
  CHECK(e1);
  CHECK(safe1 == std::vector<bool>{true, true, false, false});
  auto [e2, safe2] = run(false, true, false);
  CHECK_FALSE(e2);
  CHECK(safe2 == std::vector<bool>{true, true, true, true});

  CHECK_FALSE(a.accepts(LassoWord{{S({"p"}), S({})}, {S({"p"})}}));
  CHECK(a.accepts(LassoWord{{S({}), S({"p"})}, {S({})}}));
}

TEST_CASE("counter saturates one past the deepest atom") {
  auto a = from_canonical("XXX p & X G q", PQ);
  CHECK(a.max_depth == 3);
  CHECK(a.counter_bits == 3);
  Assignment s = a.init();
  std::vector<unsigned> seen;
  for (int t = 0; t < 7; ++t) {
    seen.push_back(a.counter_value(s));
    s = a.step(s, Assignment{true, true});
  }
  CHECK(seen == std::vector<unsigned>{0, 1, 2, 3, 4, 4, 4});
}

TEST_CASE("release atom monitors") {
  auto a = from_canonical("X(p R q)", PQ);
  CHECK(a.latches.size() == 4);  // counter_0, counter_1, rel_1, error_1
  CHECK_FALSE(language_mismatch(a, P("X(p R q)"), 4, 2));
  auto b = from_canonical("p R q | G Y p", PQ);
  CHECK_FALSE(language_mismatch(b, P("p R q | G Y p"), 4, 2));
}

TEST_CASE("past monitors for every past operator") {
  const char* bodies[] = {"Y p",        "p S q",      "p T q",
                          "O p",        "H p",        "O[1,3] p",
                          "H[0,2] q",   "Y(p S (Y q))", "H[2,2] (p | Y q)",
                          "!(p T !q)",  "O[0,0] p",    "Y Y Y true"};
  for (const char* body : bodies) {
    for (const char* shape : {"%s", "G(%s)", "X X(%s)", "X G(%s)"}) {
      char buf[128];
      std::snprintf(buf, sizeof buf, shape, body);
      CAPTURE(buf);
      auto a = from_canonical(buf, PQ);
      CHECK_FALSE(language_mismatch(a, P(buf), 4, 2));
    }
  }
}

TEST_CASE("constant latches are swept") {
  auto a = from_canonical("G true", part({}, {}));
  CHECK(a.latches.empty());
  CHECK(a.safe == ExprPool::kTrue);
  auto b = from_canonical("G false", part({}, {}));
  CHECK(b.latches.size() == 1);
  CHECK_FALSE(b.accepts(LassoWord{{}, {S({})}}));
}

TEST_CASE("missing atom in the partition") {
  CHECK_THROWS_AS(from_canonical("G(p & r)", PQ), FragmentError);
}

TEST_CASE("dump lists every latch and parses back") {
  auto a = pipeline(P("G(u1 -> X X c1) & G(u2 -> X c2)"),
                    part({"u1", "u2"}, {"c1", "c2"}));
  const std::string d = a.dump();
  for (const auto& l : a.latches)
    CHECK(d.find("next(" + l.name + ") := ") != std::string::npos);
  CHECK(d.find("safe := !error_1 & !error_2") != std::string::npos);
  CHECK(d.find("define ") != std::string::npos);

  auto b = parse_automaton(d);
  CHECK(b.inputs == a.inputs);
  CHECK(b.controllable == a.controllable);
  REQUIRE(b.latches.size() == a.latches.size());
  CHECK(b.dump() == d);
  Rng rng(5);
  Assignment s = a.init();
  for (int t = 0; t < 200; ++t) {
    Assignment in(a.num_inputs());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = coin(rng);
    CHECK(a.step(s, in) == b.step(s, in));
    CHECK(a.is_safe(s) == b.is_safe(s));
    s = a.step(s, in);
  }
}

TEST_CASE("automaton listing errors") {
  CHECK_THROWS_AS(parse_automaton("input p sometimes\nsafe := true\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_automaton("latch x init 0 past\nsafe := true\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_automaton("input p uncontrollable\nsafe := p\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_automaton("safe := nothing\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("input p uncontrollable\n"), ParseError);
  auto a = parse_automaton(
      "input p uncontrollable\nlatch e init 0 error\n"
      "next(e) := e | !p\nsafe := !e\n");
  CHECK(a.accepts(LassoWord{{}, {S({"p"})}}));
  CHECK_FALSE(a.accepts(LassoWord{{}, {S({"p"}), S({})}}));
}

TEST_CASE("random canonical formulas: language equals formula") {
  Rng rng(2026);
  GenOptions o;
  std::size_t words = 0;
  double worst_latch_ratio = 0, worst_size_ratio = 0;
  for (int k = 0; k < 200; ++k) {
    Formula chi = random_canonical(rng, o, uniform(rng, 1, 10));
    CAPTURE(to_string(chi));
    auto a = compile(CanonicalFormula{chi}, PQ);
    auto bad = language_mismatch(a, chi, 4, 2, &words);
    if (bad) FAIL_CHECK("mismatch on " << to_string(*bad));
    check_run_invariants(a, rng, 12);
    const double n = static_cast<double>(chi.size());
    worst_latch_ratio = std::max(worst_latch_ratio, a.latches.size() / n);
    worst_size_ratio =
        std::max(worst_size_ratio, (a.latches.size() + a.gate_count()) / n);
  }
  MESSAGE("words checked " << words << ", latches/size <= "
                           << worst_latch_ratio << ", (latches+gates)/size <= "
                           << worst_size_ratio);
  CHECK(worst_latch_ratio <= 4.0);
  CHECK(worst_size_ratio <= 16.0);
}

TEST_CASE("random LTL-EBR pipelines: language equals formula") {
  Rng rng(77);
  GenOptions o;
  o.max_bound = 2;
  for (int k = 0; k < 100; ++k) {
    Formula f = random_ltl_ebr(rng, o, uniform(rng, 2, 8));
    CAPTURE(to_string(f));
    auto a = pipeline(f, PQ);
    auto bad = language_mismatch(a, f, 4, 2);
    if (bad) FAIL_CHECK("mismatch on " << to_string(*bad));
    check_run_invariants(a, rng, 12);
  }
}
