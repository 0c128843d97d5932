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

#include "ebr/pipeline.hpp"

#include <bit>
#include <chrono>
#include <set>

#include "ebr/oracle.hpp"
#include "ebr/pastify.hpp"

namespace ebr {

const char* to_string(Stage s) {
  switch (s) {
    case Stage::Formula: return "formula";
    case Stage::Pastified: return "pastified";
    case Stage::Canonical: return "canonical";
    case Stage::Automaton: return "automaton";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : {Stage::Formula, Stage::Pastified, Stage::Canonical,
                  Stage::Automaton})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

std::string spec_text(const Partition& p, const Formula& f) {
  return to_string(Specification{p, f});
}

namespace {

class Timer {
public:
  Timer(std::vector<StageTime>& out, std::string stage)
      : out_(out), stage_(std::move(stage)),
        start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    out_.push_back({stage_, d.count()});
  }

private:
  std::vector<StageTime>& out_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

void oracle_check(PipelineReport& r, const PipelineOptions& o) {
  const Formula& f = *r.input;
  const std::set<std::string> used = atoms(f);
  std::vector<std::string> names(used.begin(), used.end());
  const std::size_t bits = names.size() * (o.oracle_stem + o.oracle_loop);
  if (bits > 26)
    throw ResourceError("oracle check: 2^" + std::to_string(bits) +
                        " words per shape is too many");
  for (std::size_t s = 0; s <= o.oracle_stem; ++s) {
    for (std::size_t l = 1; l <= o.oracle_loop; ++l) {
      for_each_batch(names, s, l, [&](const WordBatch& b) {
        const std::uint64_t want = evaluate(b, f, 1)[0];
        const std::uint64_t got = r.automaton.accepts(b);
        r.oracle_words += b.count();
        if (std::uint64_t diff = (want ^ got) & b.live()) {
          LassoWord w = b.word(static_cast<std::size_t>(std::countr_zero(diff)));
          throw OracleMismatch("oracle check: automaton and formula differ on " +
                               ebr::to_string(w));
        }
      });
    }
  }
}

}  // namespace

PipelineReport run_pipeline(std::string_view input, const PipelineOptions& o) {
  PipelineReport r;
  if (o.from == Stage::Automaton) {
    {
      Timer t(r.times, "parse");
      r.automaton = parse_automaton(input);
    }
    for (std::size_t i = 0; i < r.automaton.inputs.size(); ++i)
      (r.automaton.controllable[i] ? r.partition.controllable
                                   : r.partition.uncontrollable)
          .push_back(r.automaton.inputs[i]);
  } else {
    Specification spec;
    {
      Timer t(r.times, "parse");
      spec = parse_specification(input);
    }
    r.partition = spec.partition;
    r.input = spec.formula;
    r.layer = classify(spec.formula);
    Formula past;
    if (o.from == Stage::Formula) {
      Timer t(r.times, "pastify");
      past = to_past_ebr(spec.formula);
      r.pastified = past;
    } else {
      past = spec.formula;
    }
    if (o.from == Stage::Canonical) {
      if (!is_canonical(past))
        throw FragmentError("input is not a canonical formula: " +
                            to_string(past));
      r.canonical = CanonicalFormula{past};
    } else {
      if (!is_past_ebr(past))
        throw FragmentError("input is not a past-EBR formula: " +
                            to_string(past));
      Timer t(r.times, "canonize");
      r.canonical = canonize(past);
    }
    {
      Timer t(r.times, "compile");
      r.automaton = compile(*r.canonical, r.partition);
    }
    if (o.oracle_check) {
      Timer t(r.times, "oracle");
      oracle_check(r, o);
    }
  }
  if (!o.skip_solve) {
    Timer t(r.times, "solve");
    r.game = solve(r.automaton, o.solve);
  }
  return r;
}

}  // namespace ebr
