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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/automaton.hpp"
#include "ebr/canonize.hpp"
#include "ebr/formula.hpp"
#include "ebr/game.hpp"

namespace ebr {

/// Where a run starts.  Formula, Pastified and Canonical read a
/// specification file whose formula belongs to that stage; Automaton reads
/// an automaton listing.
enum class Stage { Formula, Pastified, Canonical, Automaton };

const char* to_string(Stage s);
/// Accepts "formula", "pastified", "canonical", "automaton".
std::optional<Stage> parse_stage(std::string_view name);

struct PipelineOptions {
  Stage from = Stage::Formula;
  SolveOptions solve;
  /// Cross-check the automaton against the formula on all lasso words with
  /// stem <= oracle_stem and loop in [1, oracle_loop] before solving.
  bool oracle_check = false;
  std::size_t oracle_stem = 0;
  std::size_t oracle_loop = 1;
  /// Skip the game, stopping after compilation.
  bool skip_solve = false;
};

struct StageTime {
  std::string stage;
  double seconds;
};

/// Thrown when the automaton disagrees with the formula during the oracle
/// cross-check.
class OracleMismatch : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct PipelineReport {
  Partition partition;
  std::optional<Formula> input;  // absent when starting from an automaton
  std::optional<Layer> layer;
  std::optional<Formula> pastified;
  std::optional<CanonicalFormula> canonical;
  SymbolicAutomaton automaton;
  std::optional<SafetyGameResult> game;
  std::vector<StageTime> times;
  std::size_t oracle_words = 0;
};

/// Runs the stages from `options.from` onwards.  Throws ParseError,
/// FragmentError, ResourceError or OracleMismatch.
PipelineReport run_pipeline(std::string_view input, const PipelineOptions& options = {});

/// Specification file text for the given partition and formula.
std::string spec_text(const Partition& p, const Formula& f);

}  // namespace ebr
