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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "ebr/aiger.hpp"
#include "ebr/benchmarks.hpp"
#include "ebr/canonize.hpp"
#include "ebr/oracle.hpp"
#include "ebr/pastify.hpp"
#include "ebr/pipeline.hpp"
#include "support/generators.hpp"
#include "support/invariants.hpp"
#include "support/language.hpp"
#include "support/minmax.hpp"
#include "support/rules.hpp"

using namespace ebr;
using namespace ebr::testing;

namespace {

// Pinned tolerances.
constexpr double kBenchSeconds = 60.0;
constexpr int kPastifyFormulas = 5000;
constexpr unsigned kPastifyMaxDepth = 4;  // larger depths are resampled
constexpr int kRuleRounds = 40;
constexpr int kCanonicalFormulas = 200;
constexpr int kPipelines = 100;
constexpr double kLatchConstant = 4.0;
constexpr double kCanonizeConstant = 8.0;
constexpr int kGames = 100;
constexpr int kPlaybacks = 100;
constexpr int kPlaybackLength = 20;
constexpr int kInvariantSteps = 30;

struct Outcome {
  bool pass;
  std::string detail;
};

Partition pq() {
  Partition p;
  p.uncontrollable = {"p"};
  p.controllable = {"q"};
  return p;
}

// Realizable instances and every compiled automaton, shared by 7 and 8.
struct Corpus {
  std::vector<SymbolicAutomaton> automata;
  std::vector<std::pair<std::string, std::size_t>> realizable;  // label, index
  std::vector<SafetyGameResult> games;
  std::vector<Partition> partitions;

  void add(std::string label, SymbolicAutomaton a, const Partition& p,
           std::optional<SafetyGameResult> g) {
    automata.push_back(std::move(a));
    partitions.push_back(p);
    games.push_back(g ? std::move(*g) : solve(automata.back()));
    if (games.back().realizable)
      realizable.emplace_back(std::move(label), automata.size() - 1);
  }
};

Outcome benchmarks(Corpus& corpus) {
  int correct = 0;
  double slowest = 0;
  std::vector<std::string> wrong;
  for (unsigned fam = 1; fam <= 4; ++fam) {
    const bool expect = fam <= 2;
    int fam_wrong = 0;
    for (unsigned n = 1; n <= 20; ++n) {
      const auto start = std::chrono::steady_clock::now();
      auto r = run_pipeline(benchmark_spec(fam, n));
      const std::chrono::duration<double> t = std::chrono::steady_clock::now() - start;
      slowest = std::max(slowest, t.count());
      const bool ok = r.game->realizable == expect && t.count() <= kBenchSeconds;
      correct += ok;
      fam_wrong += !ok;
      corpus.add("category " + std::to_string(fam) + " n=" + std::to_string(n),
                 std::move(r.automaton), r.partition, std::move(r.game));
    }
    if (fam_wrong)
      wrong.push_back("category " + std::to_string(fam) + ": " +
                      std::to_string(fam_wrong) + " of 20 differ from the expected " +
                      (expect ? "REALIZABLE" : "UNREALIZABLE"));
  }
  std::ostringstream d;
  d << correct << "/80 verdicts as expected, slowest " << slowest << " s";
  for (const auto& w : wrong) d << "; " << w;
  return {correct == 80, d.str()};
}

Outcome pastification() {
  Rng rng(0xE1);
  GenOptions o;
  o.max_bound = 3;
  int checked = 0, resampled = 0, mismatches = 0;
  std::string first;
  while (checked < kPastifyFormulas) {
    Formula f = random_full_bounded(rng, o, uniform(rng, 1, 8));
    const unsigned d = temporal_depth(f);
    if (size(f) > 8 || d > kPastifyMaxDepth) {
      ++resampled;
      continue;
    }
    ++checked;
    Formula past = Formula::next(pastify_core(f, d), d);
    if (auto m = find_mismatch(f, past, o.atoms, d + 3, 2, 2)) {
      if (!mismatches++) first = to_string(f) + " on " + to_string(m->word);
    }
  }
  std::ostringstream s;
  s << checked << " formulas, " << mismatches << " mismatches (" << resampled
    << " draws with depth > " << kPastifyMaxDepth << " or size > 8 resampled)";
  if (mismatches) s << ", first: " << first;
  return {mismatches == 0, s.str()};
}

Outcome rules() {
  Rng rng(0xE2);
  GenOptions o;
  int checked = 0, mismatches = 0;
  std::string first;
  for (int round = 0; round < kRuleRounds; ++round) {
    for (const auto& rule : rule_instances(rng, o)) {
      ++checked;
      if (auto m = find_mismatch(rule.lhs, rule.rhs, o.atoms, 6, 2, rule.strong ? 3 : 0))
        if (!mismatches++) first = rule.name + " " + to_string(rule.lhs);
    }
  }
  std::ostringstream s;
  s << checked << " rule instances, " << mismatches << " mismatches";
  if (mismatches) s << ", first: " << first;
  return {mismatches == 0, s.str()};
}

struct SizeStats {
  double latch_ratio = 0;
  double canonize_ratio = 0;
};

Outcome language(Corpus& corpus, SizeStats& sizes) {
  Rng rng(0xE4);
  GenOptions o;
  std::size_t words = 0;
  int mismatches = 0, canonical = 0;
  std::string first;
  auto note = [&](const SymbolicAutomaton& a, const Formula& f) {
    if (auto bad = language_mismatch(a, f, 4, 2, &words))
      if (!mismatches++) first = to_string(f) + " on " + to_string(*bad);
  };
  while (canonical < kCanonicalFormulas) {
    Formula chi = random_canonical(rng, o, uniform(rng, 1, 10));
    if (size(chi) > 10) continue;
    ++canonical;
    auto a = compile(CanonicalFormula{chi}, pq());
    note(a, chi);
    sizes.latch_ratio =
        std::max(sizes.latch_ratio, double(a.num_latches()) / double(size(chi)));
    corpus.add("canonical " + to_string(chi), std::move(a), pq(), std::nullopt);
  }
  GenOptions g;
  g.max_bound = 2;
  for (int k = 0; k < kPipelines; ++k) {
    Formula f = random_ltl_ebr(rng, g, uniform(rng, 2, 8));
    Formula past = to_past_ebr(f);
    CanonicalFormula c = canonize(past);
    auto a = compile(c, pq());
    note(a, f);
    sizes.canonize_ratio =
        std::max(sizes.canonize_ratio, double(size(c.formula)) / double(size(past)));
    sizes.latch_ratio =
        std::max(sizes.latch_ratio, double(a.num_latches()) / double(size(c.formula)));
    corpus.add("pipeline " + to_string(f), std::move(a), pq(), std::nullopt);
  }
  std::ostringstream s;
  s << canonical << " canonical formulas and " << kPipelines << " pipelines, "
    << words << " words, " << mismatches << " mismatches";
  if (mismatches) s << ", first: " << first;
  return {mismatches == 0, s.str()};
}

Outcome size_bounds(const SizeStats& sizes) {
  std::ostringstream s;
  s << "latches/size(canonical) <= " << sizes.latch_ratio << " (C = " << kLatchConstant
    << "), size(canonize)/size(input) <= " << sizes.canonize_ratio
    << " (C' = " << kCanonizeConstant << ")";
  return {sizes.latch_ratio <= kLatchConstant && sizes.canonize_ratio <= kCanonizeConstant,
          s.str()};
}

Outcome games() {
  Rng rng(0xE6);
  int agree = 0, realizable = 0;
  for (int k = 0; k < kGames; ++k) {
    auto a = random_automaton(rng, 12, 6);
    const bool expect = MinMaxOracle(a).realizable();
    SolveOptions e, s;
    e.backend = Backend::Explicit;
    s.backend = Backend::Symbolic;
    agree += solve(a, e).realizable == expect && solve(a, s).realizable == expect;
    realizable += expect;
  }
  std::ostringstream d;
  d << agree << "/" << kGames << " verdicts match the min-max oracle on both backends ("
    << realizable << " realizable)";
  return {agree == kGames, d.str()};
}

Outcome strategies(const Corpus& corpus) {
  Rng rng(0xE7);
  int bad = 0;
  std::size_t steps = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (!bad++) first = what;
  };
  for (const auto& [label, idx] : corpus.realizable) {
    const SymbolicAutomaton& a = corpus.automata[idx];
    const SafetyGameResult& g = corpus.games[idx];
    const Aiger circuit =
        parse_aiger(to_string(export_strategy(g, a, corpus.partitions[idx])));
    const auto U = a.uncontrollable_inputs();
    const auto C = a.controllable_inputs();
    // circuit outputs follow the partition's order; map them to C
    std::vector<std::size_t> out_of(C.size());
    for (std::size_t k = 0; k < C.size(); ++k)
      out_of[k] = static_cast<std::size_t>(
          std::find(circuit.output_names.begin(), circuit.output_names.end(),
                    a.inputs[C[k]]) -
          circuit.output_names.begin());
    for (int p = 0; p < kPlaybacks; ++p) {
      std::vector<Assignment> moves(kPlaybackLength, Assignment(U.size()));
      for (auto& m : moves)
        for (std::size_t i = 0; i < U.size(); ++i) m[i] = coin(rng);
      Trace trace;
      try {
        trace = play_strategy(g, a, moves);
      } catch (const StrategyError& e) {
        fail(label + ": " + e.what());
        break;
      }
      AigerSimulator sim(circuit);
      for (std::size_t t = 0; t < moves.size(); ++t) {
        ++steps;
        if (!a.is_safe(trace[t + 1].state)) fail(label + ": unsafe state");
        if (std::vector<bool>(sim.latches()) != trace[t].state)
          fail(label + ": circuit latches differ");
        auto c = sim.step(moves[t]);
        for (std::size_t k = 0; k < C.size(); ++k)
          if (c[out_of[k]] != trace[t].input[C[k]]) fail(label + ": circuit move differs");
      }
    }
  }
  std::ostringstream d;
  d << corpus.realizable.size() << " realizable instances, " << steps
    << " strategy steps, " << bad << " violations";
  if (bad) d << ", first: " << first;
  return {bad == 0 && !corpus.realizable.empty(), d.str()};
}

Outcome invariants(const Corpus& corpus) {
  Rng rng(0xE8);
  int bad = 0;
  std::string first;
  for (const auto& a : corpus.automata)
    if (auto v = run_violation(a, rng, kInvariantSteps))
      if (!bad++) first = *v;
  std::ostringstream d;
  d << corpus.automata.size() << " automata, " << bad << " violations";
  if (bad) d << ", first: " << first;
  return {bad == 0, d.str()};
}

}  // namespace

int main() {
  Corpus corpus;
  SizeStats sizes;
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> t = std::chrono::steady_clock::now() - start;
    failed += !o.pass;
    std::printf("%s %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), t.count());
    std::fflush(stdout);
  };
  report(1, "benchmark verdicts", [&] { return benchmarks(corpus); });
  report(2, "pastification soundness", pastification);
  report(3, "rewrite-rule strong equivalence", rules);
  report(4, "automaton language", [&] { return language(corpus, sizes); });
  report(5, "size bounds", [&] { return size_bounds(sizes); });
  report(6, "game solver against min-max oracle", games);
  report(7, "strategy validity", [&] { return strategies(corpus); });
  report(8, "determinism and monotonicity", [&] { return invariants(corpus); });
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed ? 1 : 0;
}
