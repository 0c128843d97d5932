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
#include "ebr/benchmarks.hpp"
#include "ebr/pipeline.hpp"
#include "support/generators.hpp"
#include "support/minmax.hpp"

using namespace ebr;
using namespace ebr::testing;

TEST_CASE("benchmark formulas") {
  CHECK(benchmark_formula(1, 1) == "G(c0 & X G(c1 & u))");
  CHECK(benchmark_formula(1, 2) == "G(c0 & X G(c1 & X G(c2 & u)))");
  CHECK(benchmark_formula(2, 1) == "G((c0 | u0) & X G(c1 | u1))");
  CHECK(benchmark_formula(3, 1) == "G(c) & G(u1)");
  CHECK(benchmark_formula(3, 3) == "G(c) & (G(u1) | G(u2) | G(u3))");
  CHECK(benchmark_formula(4, 2) == "c & X(u1 | u2) & XX(u2 | u3)");
  CHECK(benchmark_formula(4, 3) == "c & X(u1 | u2) & XX(u2 | u3) & XXX(u3 | u4)");
  CHECK_THROWS_AS(benchmark_formula(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(benchmark_formula(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(benchmark_formula(2, 0), std::invalid_argument);
  for (unsigned fam = 1; fam <= 4; ++fam) {
    for (unsigned n = 1; n <= 20; ++n) {
      const Specification s = parse_specification(benchmark_spec(fam, n));
      CHECK(is_ltl_ebr(s.formula));
      for (const auto& c : s.partition.controllable) CHECK(c[0] == 'c');
      for (const auto& u : s.partition.uncontrollable) CHECK(u[0] == 'u');
    }
  }
}

TEST_CASE("benchmark verdicts agree with the min-max oracle") {
  for (unsigned fam = 1; fam <= 4; ++fam) {
    for (unsigned n = 1; n <= 3; ++n) {
      CAPTURE(fam);
      CAPTURE(n);
      PipelineOptions o;
      o.oracle_check = true;
      o.oracle_stem = n <= 2 ? 2 : 1;
      o.oracle_loop = n <= 2 ? 2 : 1;
      auto r = run_pipeline(benchmark_spec(fam, n), o);
      CHECK(r.oracle_words > 0);
      CHECK(r.game->realizable == MinMaxOracle(r.automaton).realizable());
      CHECK(r.game->realizable == (fam == 2));
    }
  }
}

TEST_CASE("stages report sizes and times") {
  auto r = run_pipeline(".inputs r\n.outputs g\nG(r -> F[0,2] g)\n");
  REQUIRE(r.input);
  REQUIRE(r.pastified);
  REQUIRE(r.canonical);
  CHECK(is_past_ebr(*r.pastified));
  CHECK(is_canonical(r.canonical->formula));
  CHECK(r.game->realizable);
  std::vector<std::string> stages;
  for (const auto& t : r.times) {
    stages.push_back(t.stage);
    CHECK(t.seconds >= 0);
  }
  CHECK(stages == std::vector<std::string>{"parse", "pastify", "canonize", "compile", "solve"});
  for (Stage s : {Stage::Formula, Stage::Pastified, Stage::Canonical, Stage::Automaton})
    CHECK(parse_stage(to_string(s)) == s);
  CHECK_FALSE(parse_stage("bogus"));
}

TEST_CASE("later stages reject earlier-stage input") {
  const char* future = ".inputs u\n.outputs c\nG(u -> X c)\n";
  PipelineOptions o;
  o.from = Stage::Pastified;
  CHECK_THROWS_AS(run_pipeline(future, o), FragmentError);
  o.from = Stage::Canonical;
  CHECK_THROWS_AS(run_pipeline(future, o), FragmentError);
  o.from = Stage::Automaton;
  CHECK_THROWS_AS(run_pipeline(future, o), ParseError);
  CHECK_THROWS_AS(run_pipeline(".inputs u\n.outputs c\nG(u U c)\n"), FragmentError);
}

TEST_CASE("replaying each stage gives the same automaton and verdict") {
  Rng rng(31);
  GenOptions g;
  g.max_bound = 2;
  for (int k = 0; k < 100; ++k) {
    Formula f = random_ltl_ebr(rng, g, uniform(rng, 2, 10));
    CAPTURE(to_string(f));
    Partition p;
    p.uncontrollable = {"p"};
    p.controllable = {"q"};
    auto base = run_pipeline(spec_text(p, f));
    PipelineOptions o;
    o.from = Stage::Pastified;
    auto r1 = run_pipeline(spec_text(p, *base.pastified), o);
    o.from = Stage::Canonical;
    auto r2 = run_pipeline(spec_text(p, base.canonical->formula), o);
    o.from = Stage::Automaton;
    auto r3 = run_pipeline(base.automaton.dump(), o);
    CHECK(r1.automaton.dump() == base.automaton.dump());
    CHECK(r2.automaton.dump() == base.automaton.dump());
    CHECK(r3.automaton.dump() == base.automaton.dump());
    for (const auto* r : {&r1, &r2, &r3}) {
      CHECK(r->game->realizable == base.game->realizable);
      CHECK(r->game->region_sizes == base.game->region_sizes);
    }
  }
}
