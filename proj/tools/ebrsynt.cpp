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

// ebrsynt: safety synthesis for LTL-EBR specifications.
//
//   ebrsynt [options] SPEC           solve a specification file ("-" = stdin)
//   ebrsynt bench CATEGORY N         print a generated benchmark specification
//
// Exit status: 0 realizable, 1 unrealizable, 2 input error (parse, fragment,
// usage, unreadable file), 3 resource budget exceeded, 4 oracle mismatch.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ebr/aiger.hpp"
#include "ebr/benchmarks.hpp"
#include "ebr/pipeline.hpp"

namespace {

enum Exit { kRealizable = 0, kUnrealizable = 1, kInput = 2, kResource = 3, kOracle = 4 };

struct Options {
  std::string spec;
  std::string from = "formula";
  std::optional<std::string> dump_pastified, dump_canonical, dump_automaton;
  std::string aiger, strategy;
  std::string oracle;
  std::string backend = "auto";
  std::uint64_t state_budget = std::uint64_t{1} << 20;
  std::uint64_t node_budget = std::uint64_t{1} << 24;
  bool json = false;
  bool verbose = false;
};

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// Deferred stdout sections so that the verdict stays on the first line.
struct Sections {
  std::vector<std::pair<std::string, std::string>> items;
  void emit(const std::optional<std::string>& target, const std::string& title,
            const std::string& text) {
    if (!target) return;
    if (target->empty())
      items.emplace_back(title, text);
    else
      write_file(*target, text);
  }
};

std::pair<std::size_t, std::size_t> parse_oracle(const std::string& s) {
  const auto comma = s.find(',');
  std::size_t stem = 0, loop = 0;
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    stem = std::stoul(s.substr(0, comma));
    loop = std::stoul(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw InputError("--oracle-check expects STEM,LOOP, got '" + s + "'");
  }
  if (loop == 0) throw InputError("--oracle-check: loop length must be >= 1");
  return {stem, loop};
}

ebr::Backend parse_backend(const std::string& s) {
  if (s == "auto") return ebr::Backend::Auto;
  if (s == "explicit") return ebr::Backend::Explicit;
  if (s == "symbolic") return ebr::Backend::Symbolic;
  throw InputError("unknown backend '" + s + "'");
}

nlohmann::json report_json(const ebr::PipelineReport& r, double solve_seconds) {
  using nlohmann::json;
  json j;
  j["realizable"] = r.game->realizable;
  j["inputs"] = {{"uncontrollable", r.partition.uncontrollable},
                 {"controllable", r.partition.controllable}};
  if (r.layer) j["layer"] = std::string(ebr::to_string(*r.layer));
  json sizes = json::object();
  if (r.input) sizes["formula"] = ebr::size(*r.input);
  if (r.pastified) sizes["pastified"] = ebr::size(*r.pastified);
  if (r.canonical) {
    sizes["canonical"] = ebr::size(r.canonical->formula);
    sizes["canonical_atoms"] = r.canonical->atoms().size();
  }
  const auto& a = r.automaton;
  sizes["latches"] = a.num_latches();
  sizes["gates"] = a.gate_count();
  sizes["counter_bits"] = a.counter_bits;
  j["sizes"] = sizes;
  j["max_depth"] = a.max_depth;
  json game;
  game["backend"] = ebr::to_string(r.game->backend);
  game["iterations"] = r.game->iterations;
  game["region_sizes"] = r.game->region_sizes;
  j["game"] = game;
  json times = json::object();
  for (const auto& t : r.times) times[t.stage] = t.seconds;
  times["solve"] = solve_seconds;
  j["times"] = times;
  if (r.oracle_words) j["oracle_words"] = r.oracle_words;
  return j;
}

int run(const Options& o) {
  ebr::PipelineOptions po;
  const auto stage = ebr::parse_stage(o.from);
  if (!stage) throw InputError("unknown stage '" + o.from + "'");
  po.from = *stage;
  po.skip_solve = true;
  po.solve.backend = parse_backend(o.backend);
  po.solve.state_budget = o.state_budget;
  po.solve.node_budget = o.node_budget;
  if (!o.oracle.empty()) {
    if (po.from == ebr::Stage::Automaton)
      throw InputError("--oracle-check needs a formula input");
    po.oracle_check = true;
    std::tie(po.oracle_stem, po.oracle_loop) = parse_oracle(o.oracle);
  }

  ebr::PipelineReport r = ebr::run_pipeline(read_input(o.spec), po);

  Sections out;
  if (o.dump_pastified && !r.pastified)
    std::cerr << "ebrsynt: no pastified stage when starting from " << o.from << "\n";
  if (r.pastified)
    out.emit(o.dump_pastified, "pastified", ebr::spec_text(r.partition, *r.pastified));
  if (o.dump_canonical && !r.canonical)
    std::cerr << "ebrsynt: no canonical stage when starting from " << o.from << "\n";
  if (r.canonical)
    out.emit(o.dump_canonical, "canonical",
             ebr::spec_text(r.partition, r.canonical->formula));
  out.emit(o.dump_automaton, "automaton", r.automaton.dump());
  if (!o.aiger.empty())
    write_file(o.aiger, ebr::to_string(ebr::export_monitor(r.automaton, r.partition)));

  const auto start = std::chrono::steady_clock::now();
  r.game = ebr::solve(r.automaton, po.solve);
  const std::chrono::duration<double> solve_time =
      std::chrono::steady_clock::now() - start;

  if (!o.strategy.empty()) {
    if (r.game->realizable)
      write_file(o.strategy, ebr::to_string(ebr::export_strategy(
                                 *r.game, r.automaton, r.partition)));
    else
      std::cerr << "ebrsynt: unrealizable, no strategy written\n";
  }

  std::cout << (r.game->realizable ? "REALIZABLE" : "UNREALIZABLE") << "\n";
  for (const auto& [title, text] : out.items) std::cout << "# " << title << "\n" << text;
  if (o.json) std::cout << report_json(r, solve_time.count()).dump(2) << "\n";
  if (o.verbose) {
    for (const auto& t : r.times) std::cerr << t.stage << ": " << t.seconds << " s\n";
    std::cerr << "solve: " << solve_time.count() << " s ("
              << ebr::to_string(r.game->backend) << ", " << r.game->iterations
              << " iterations)\n";
  }
  return r.game->realizable ? kRealizable : kUnrealizable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safety synthesis for LTL-EBR specifications"};
  app.require_subcommand(0, 1);
  Options o;
  app.add_option("spec", o.spec, "specification file, - for stdin");
  app.add_option("--from-stage", o.from,
                 "input stage: formula, pastified, canonical or automaton")
      ->capture_default_str();
  app.add_option("--dump-pastified", o.dump_pastified,
                 "write the past-EBR formula as a specification (stdout if no path)")
      ->expected(0, 1);
  app.add_option("--dump-canonical", o.dump_canonical,
                 "write the canonical formula as a specification (stdout if no path)")
      ->expected(0, 1);
  app.add_option("--dump-automaton", o.dump_automaton,
                 "write the symbolic automaton (stdout if no path)")
      ->expected(0, 1);
  app.add_option("--aiger", o.aiger, "write the monitor circuit (ASCII AIGER)");
  app.add_option("--strategy", o.strategy, "write the strategy circuit (ASCII AIGER)");
  app.add_option("--oracle-check", o.oracle,
                 "check the automaton against the formula on lassos STEM,LOOP");
  app.add_option("--backend", o.backend, "game solver: auto, explicit or symbolic")
      ->capture_default_str();
  app.add_option("--state-budget", o.state_budget, "explicit solver state limit")
      ->capture_default_str();
  app.add_option("--node-budget", o.node_budget, "symbolic solver node limit")
      ->capture_default_str();
  app.add_flag("--json", o.json, "print a JSON report after the verdict");
  app.add_flag("-v,--verbose", o.verbose, "stage timings on stderr");

  unsigned category = 0, n = 0;
  auto* bench = app.add_subcommand("bench", "print a generated benchmark specification");
  bench->add_option("category", category, "1..4")->required();
  bench->add_option("n", n, "instance size, >= 1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  try {
    if (*bench) {
      std::cout << ebr::benchmark_spec(category, n);
      return 0;
    }
    if (o.spec.empty()) throw InputError("no specification file given");
    return run(o);
  } catch (const ebr::ParseError& e) {
    std::cerr << "ebrsynt: parse error: " << e.what() << "\n";
    return kInput;
  } catch (const ebr::FragmentError& e) {
    std::cerr << "ebrsynt: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "ebrsynt: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ebrsynt: " << e.what() << "\n";
    return kInput;
  } catch (const ebr::ResourceError& e) {
    std::cerr << "ebrsynt: resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const ebr::OracleMismatch& e) {
    std::cerr << "ebrsynt: " << e.what() << "\n";
    return kOracle;
  }
}
