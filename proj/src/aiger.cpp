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

#include "ebr/aiger.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <sstream>

namespace ebr {

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

std::string to_string(const Aiger& g) {
  std::ostringstream out;
  out << "aag " << g.max_var << ' ' << g.inputs.size() << ' '
      << g.latches.size() << ' ' << g.outputs.size() << ' ' << g.ands.size()
      << '\n';
  for (auto i : g.inputs) out << i << '\n';
  for (const auto& l : g.latches) out << l.lit << ' ' << l.next << '\n';
  for (auto o : g.outputs) out << o << '\n';
  for (const auto& a : g.ands)
    out << a.lhs << ' ' << a.rhs0 << ' ' << a.rhs1 << '\n';
  for (std::size_t i = 0; i < g.input_names.size(); ++i)
    if (!g.input_names[i].empty()) out << 'i' << i << ' ' << g.input_names[i] << '\n';
  for (std::size_t i = 0; i < g.latch_names.size(); ++i)
    if (!g.latch_names[i].empty()) out << 'l' << i << ' ' << g.latch_names[i] << '\n';
  for (std::size_t i = 0; i < g.output_names.size(); ++i)
    if (!g.output_names[i].empty()) out << 'o' << i << ' ' << g.output_names[i] << '\n';
  if (!g.comments.empty()) {
    out << "c\n";
    for (const auto& c : g.comments) out << c << '\n';
  }
  return out.str();
}

namespace {

[[noreturn]] void fail(const std::string& what, std::size_t line) {
  throw ParseError("aiger: " + what, line, 1);
}

std::vector<std::uint64_t> numbers(const std::string& line, std::size_t ln) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(line[i])))
      fail("expected a number", ln);
    std::uint64_t v = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(line[i] - '0');
      if (v > 0xffffffffULL) fail("number out of range", ln);
      ++i;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

Aiger parse_aiger(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  if (lines.empty() || lines[0].rfind("aag ", 0) != 0)
    fail("missing `aag` header", 1);
  auto head = numbers(lines[0].substr(4), 1);
  if (head.size() != 5) fail("header needs M I L O A", 1);
  Aiger g;
  g.max_var = static_cast<std::uint32_t>(head[0]);
  const std::size_t I = head[1], L = head[2], O = head[3], A = head[4];
  if (I + L + A > g.max_var) fail("M is smaller than I + L + A", 1);
  if (lines.size() < 1 + I + L + O + A) fail("file is truncated", lines.size());

  const std::uint32_t max_lit = 2 * g.max_var + 1;
  std::vector<int> defined(g.max_var + 1, 0);  // 1 input, 2 latch, 3 and
  auto define = [&](std::uint64_t lit, int kind, std::size_t ln) {
    if (lit > max_lit) fail("literal out of range", ln);
    if (lit & 1) fail("defined literal must be even", ln);
    if (lit == 0) fail("constant cannot be defined", ln);
    if (defined[lit >> 1]) fail("variable defined twice", ln);
    defined[lit >> 1] = kind;
  };
  auto use = [&](std::uint64_t lit, std::size_t ln) {
    if (lit > max_lit) fail("literal out of range", ln);
    return static_cast<std::uint32_t>(lit);
  };
  std::size_t ln = 1;
  for (std::size_t i = 0; i < I; ++i, ++ln) {
    auto v = numbers(lines[ln], ln + 1);
    if (v.size() != 1) fail("input line needs one literal", ln + 1);
    define(v[0], 1, ln + 1);
    g.inputs.push_back(static_cast<std::uint32_t>(v[0]));
  }
  for (std::size_t i = 0; i < L; ++i, ++ln) {
    auto v = numbers(lines[ln], ln + 1);
    if (v.size() != 2 && v.size() != 3) fail("latch line needs 2 or 3 numbers", ln + 1);
    if (v.size() == 3 && v[2] != 0) fail("only reset value 0 is supported", ln + 1);
    define(v[0], 2, ln + 1);
    g.latches.push_back({static_cast<std::uint32_t>(v[0]), use(v[1], ln + 1)});
  }
  for (std::size_t i = 0; i < O; ++i, ++ln) {
    auto v = numbers(lines[ln], ln + 1);
    if (v.size() != 1) fail("output line needs one literal", ln + 1);
    g.outputs.push_back(use(v[0], ln + 1));
  }
  for (std::size_t i = 0; i < A; ++i, ++ln) {
    auto v = numbers(lines[ln], ln + 1);
    if (v.size() != 3) fail("and line needs three literals", ln + 1);
    define(v[0], 3, ln + 1);
    g.ands.push_back({static_cast<std::uint32_t>(v[0]), use(v[1], ln + 1),
                      use(v[2], ln + 1)});
  }
  auto check_defined = [&](std::uint32_t lit, std::size_t line) {
    if (lit > 1 && !defined[lit >> 1]) fail("literal refers to an undefined variable", line);
  };
  for (const auto& l : g.latches) check_defined(l.next, 1 + I + 1);
  for (auto o : g.outputs) check_defined(o, 1 + I + L + 1);
  for (const auto& a : g.ands) {
    check_defined(a.rhs0, 1 + I + L + O + 1);
    check_defined(a.rhs1, 1 + I + L + O + 1);
  }

  g.input_names.assign(I, "");
  g.latch_names.assign(L, "");
  g.output_names.assign(O, "");
  for (; ln < lines.size(); ++ln) {
    const std::string& s = lines[ln];
    if (s == "c") {
      for (++ln; ln < lines.size(); ++ln) g.comments.push_back(lines[ln]);
      break;
    }
    if (s.empty()) continue;
    const char kind = s[0];
    const std::size_t sp = s.find(' ');
    if ((kind != 'i' && kind != 'l' && kind != 'o') || sp == std::string::npos || sp < 2)
      fail("malformed symbol table entry", ln + 1);
    auto idx = numbers(s.substr(1, sp - 1), ln + 1);
    if (idx.size() != 1) fail("malformed symbol index", ln + 1);
    auto& names = kind == 'i' ? g.input_names
                  : kind == 'l' ? g.latch_names
                                : g.output_names;
    if (idx[0] >= names.size()) fail("symbol index out of range", ln + 1);
    names[idx[0]] = s.substr(sp + 1);
  }

  // combinational cycle check
  std::vector<std::size_t> and_of(g.max_var + 1, SIZE_MAX);
  for (std::size_t k = 0; k < g.ands.size(); ++k) and_of[g.ands[k].lhs >> 1] = k;
  std::vector<std::uint8_t> mark(g.ands.size(), 0);
  for (std::size_t root = 0; root < g.ands.size(); ++root) {
    if (mark[root]) continue;
    std::vector<std::pair<std::size_t, int>> stack{{root, 0}};
    mark[root] = 1;
    while (!stack.empty()) {
      auto& [k, child] = stack.back();
      if (child == 2) {
        mark[k] = 2;
        stack.pop_back();
        continue;
      }
      const std::uint32_t lit = child == 0 ? g.ands[k].rhs0 : g.ands[k].rhs1;
      ++child;
      const std::size_t next = and_of[lit >> 1];
      if (next == SIZE_MAX) continue;
      if (mark[next] == 1) fail("combinational cycle", 1 + I + L + O + k + 1);
      if (mark[next] == 0) {
        mark[next] = 1;
        stack.push_back({next, 0});
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Building
// ---------------------------------------------------------------------------

AigerBuilder::AigerBuilder(std::size_t num_inputs, std::size_t num_latches) {
  for (std::size_t i = 0; i < num_inputs; ++i)
    g_.inputs.push_back(static_cast<std::uint32_t>(2 * (i + 1)));
  for (std::size_t j = 0; j < num_latches; ++j)
    g_.latches.push_back(
        {static_cast<std::uint32_t>(2 * (num_inputs + j + 1)), 0});
  g_.max_var = static_cast<std::uint32_t>(num_inputs + num_latches);
  g_.input_names.assign(num_inputs, "");
  g_.latch_names.assign(num_latches, "");
}

std::uint32_t AigerBuilder::input(std::size_t i) const { return g_.inputs.at(i); }
std::uint32_t AigerBuilder::latch(std::size_t j) const {
  return g_.latches.at(j).lit;
}

std::uint32_t AigerBuilder::conj(std::uint32_t a, std::uint32_t b) {
  if (a == 0 || b == 0) return 0;
  if (a == 1) return b;
  if (b == 1) return a;
  if (a == b) return a;
  if ((a ^ 1) == b) return 0;
  if (a < b) std::swap(a, b);
  const std::uint64_t key = (std::uint64_t(a) << 32) | b;
  if (auto it = hash_.find(key); it != hash_.end()) return it->second;
  const std::uint32_t lhs = 2 * ++g_.max_var;
  g_.ands.push_back({lhs, a, b});
  hash_.emplace(key, lhs);
  return lhs;
}

std::uint32_t AigerBuilder::ite(std::uint32_t c, std::uint32_t t,
                                std::uint32_t e) {
  if (c == 1) return t;
  if (c == 0) return e;
  if (t == e) return t;
  const std::uint32_t hi = conj(c, t);
  const std::uint32_t lo = conj(c ^ 1, e);
  return disj(hi, lo);
}

void AigerBuilder::set_next(std::size_t j, std::uint32_t lit) {
  g_.latches.at(j).next = lit;
}

void AigerBuilder::add_output(std::uint32_t lit, std::string name) {
  g_.outputs.push_back(lit);
  g_.output_names.push_back(std::move(name));
}

Aiger AigerBuilder::finish() { return g_; }

namespace {

// Literal of every expression node, inputs and latches mapped by `var`.
class ExprToAig {
public:
  ExprToAig(const ExprPool& pool, AigerBuilder& b,
            std::function<std::uint32_t(std::uint32_t)> var)
      : pool_(pool), b_(b), var_(std::move(var)) {}

  std::uint32_t operator()(Expr e) {
    if (auto it = memo_.find(e); it != memo_.end()) return it->second;
    const auto& n = pool_.node(e);
    std::uint32_t r = 0;
    switch (n.kind) {
      case ExprPool::Kind::False: r = 0; break;
      case ExprPool::Kind::True: r = 1; break;
      case ExprPool::Kind::Var: r = var_(n.a); break;
      case ExprPool::Kind::Not: r = (*this)(n.a) ^ 1; break;
      case ExprPool::Kind::And:
      case ExprPool::Kind::Or: {
        const std::uint32_t x = (*this)(n.a);
        const std::uint32_t y = (*this)(n.b);
        r = n.kind == ExprPool::Kind::And ? b_.conj(x, y) : b_.disj(x, y);
        break;
      }
    }
    memo_.emplace(e, r);
    return r;
  }

private:
  const ExprPool& pool_;
  AigerBuilder& b_;
  std::function<std::uint32_t(std::uint32_t)> var_;
  std::unordered_map<Expr, std::uint32_t> memo_;
};

std::size_t find_input(const SymbolicAutomaton& a, const std::string& name) {
  for (std::size_t i = 0; i < a.inputs.size(); ++i)
    if (a.inputs[i] == name) return i;
  throw FragmentError("aiger: '" + name + "' is not an automaton input");
}

// Partition order of the automaton's inputs, checking that both agree.
std::vector<std::size_t> input_order(const SymbolicAutomaton& a,
                                     const Partition& part,
                                     bool include_controllable) {
  std::vector<std::size_t> order;
  for (const auto& u : part.uncontrollable) {
    std::size_t i = find_input(a, u);
    if (a.controllable[i])
      throw FragmentError("aiger: '" + u + "' is controllable in the automaton");
    order.push_back(i);
  }
  for (const auto& c : part.controllable) {
    std::size_t i = find_input(a, c);
    if (!a.controllable[i])
      throw FragmentError("aiger: '" + c + "' is uncontrollable in the automaton");
    if (include_controllable) order.push_back(i);
  }
  if (part.uncontrollable.size() + part.controllable.size() != a.inputs.size())
    throw FragmentError("aiger: partition and automaton inputs differ");
  return order;
}

}  // namespace

Aiger export_monitor(const SymbolicAutomaton& a, const Partition& part) {
  const std::vector<std::size_t> order = input_order(a, part, true);
  AigerBuilder b(order.size(), a.num_latches());
  std::vector<std::uint32_t> lit_of(a.num_inputs() + a.num_latches());
  for (std::size_t k = 0; k < order.size(); ++k) {
    lit_of[order[k]] = b.input(k);
    b.graph().input_names[k] = a.inputs[order[k]];
  }
  for (std::size_t j = 0; j < a.num_latches(); ++j) {
    lit_of[a.latch_var(j)] = b.latch(j);
    b.graph().latch_names[j] = a.latches[j].name;
  }
  ExprToAig conv(a.pool, b, [&](std::uint32_t v) { return lit_of.at(v); });
  for (std::size_t j = 0; j < a.num_latches(); ++j)
    b.set_next(j, conv(a.latches[j].next));
  b.add_output(conv(a.safe) ^ 1, "bad");
  b.graph().comments.push_back("monitor automaton; output bad = !safe");
  return b.finish();
}

Aiger export_strategy(const SafetyGameResult& result, const SymbolicAutomaton& a,
                      const Partition& part) {
  if (!result.realizable || !result.strategy)
    throw StrategyError("export_strategy: the game is not realizable");
  const Strategy& st = *result.strategy;
  const std::vector<std::size_t> order = input_order(a, part, false);
  AigerBuilder b(order.size(), a.num_latches());
  std::vector<std::uint32_t> lit_of(a.num_inputs() + a.num_latches(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    lit_of[order[k]] = b.input(k);
    b.graph().input_names[k] = a.inputs[order[k]];
  }
  for (std::size_t j = 0; j < a.num_latches(); ++j) {
    lit_of[a.latch_var(j)] = b.latch(j);
    b.graph().latch_names[j] = a.latches[j].name;
  }
  // diagram variable -> literal
  std::vector<std::uint32_t> lit_of_level(st.bdd->num_vars(), 0);
  for (std::size_t v = 0; v < st.level.size(); ++v)
    lit_of_level[st.level[v]] = lit_of[v];

  const auto C = a.controllable_inputs();
  std::vector<std::uint32_t> move(C.size());
  for (std::size_t k = 0; k < C.size(); ++k) {
    std::uint32_t sum = 0;
    for (const auto& cube : st.bdd->cubes(st.bdd->simplify(st.outputs[k], result.winning))) {
      std::uint32_t prod = 1;
      for (auto [level, value] : cube)
        prod = b.conj(prod, lit_of_level[level] ^ (value ? 0 : 1));
      sum = b.disj(sum, prod);
    }
    move[k] = sum;
    lit_of[C[k]] = sum;
  }
  ExprToAig conv(a.pool, b, [&](std::uint32_t v) { return lit_of.at(v); });
  for (std::size_t j = 0; j < a.num_latches(); ++j)
    b.set_next(j, conv(a.latches[j].next));
  // outputs follow the partition's controllable order
  for (const auto& name : part.controllable) {
    const std::size_t i = find_input(a, name);
    const std::size_t k = static_cast<std::size_t>(
        std::find(C.begin(), C.end(), i) - C.begin());
    b.add_output(move[k], name);
  }
  b.graph().comments.push_back("strategy: one output per controllable input");
  return b.finish();
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

AigerSimulator::AigerSimulator(const Aiger& g) : g_(g) {
  var_and_.assign(g.max_var + 1, ~0u);
  for (std::size_t k = 0; k < g.ands.size(); ++k)
    var_and_[g.ands[k].lhs >> 1] = static_cast<std::uint32_t>(k);
  // topological order of the gates
  std::vector<std::uint8_t> mark(g.ands.size(), 0);
  std::function<void(std::size_t)> visit = [&](std::size_t k) {
    if (mark[k]) return;
    mark[k] = 1;
    for (std::uint32_t lit : {g.ands[k].rhs0, g.ands[k].rhs1}) {
      const std::uint32_t d = var_and_[lit >> 1];
      if (d != ~0u) visit(d);
    }
    order_.push_back(k);
  };
  for (std::size_t k = 0; k < g.ands.size(); ++k) visit(k);
  value_.assign(g.max_var + 1, false);
  latch_.assign(g.latches.size(), false);
}

void AigerSimulator::reset() { std::fill(latch_.begin(), latch_.end(), false); }

void AigerSimulator::evaluate(const std::vector<bool>& inputs) {
  if (inputs.size() != g_.inputs.size())
    throw std::invalid_argument("AigerSimulator: wrong number of inputs");
  value_[0] = false;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    value_[g_.inputs[i] >> 1] = inputs[i];
  for (std::size_t j = 0; j < latch_.size(); ++j)
    value_[g_.latches[j].lit >> 1] = latch_[j];
  for (std::size_t k : order_) {
    const auto& a = g_.ands[k];
    value_[a.lhs >> 1] = lit(a.rhs0) && lit(a.rhs1);
  }
}

std::vector<bool> AigerSimulator::peek(const std::vector<bool>& inputs) {
  evaluate(inputs);
  std::vector<bool> out;
  for (auto o : g_.outputs) out.push_back(lit(o));
  return out;
}

std::vector<bool> AigerSimulator::step(const std::vector<bool>& inputs) {
  std::vector<bool> out = peek(inputs);
  for (std::size_t j = 0; j < latch_.size(); ++j)
    latch_[j] = lit(g_.latches[j].next);
  return out;
}

}  // namespace ebr
