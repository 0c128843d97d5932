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

#include "ebr/automaton.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace ebr {

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

StepEvaluator::StepEvaluator(const SymbolicAutomaton& a) : a_(a) {
  std::vector<Expr> roots{a.safe};
  for (const Latch& l : a.latches) roots.push_back(l.next);
  order_ = a.pool.cone(roots);
  value_.resize(a.pool.size());
}

void StepEvaluator::run(const std::uint64_t* state,
                        const std::uint64_t* input) {
  const std::size_t ni = a_.inputs.size();
  for (Expr e : order_) {
    const ExprPool::Node& n = a_.pool.node(e);
    std::uint64_t v = 0;
    switch (n.kind) {
      case ExprPool::Kind::False: v = 0; break;
      case ExprPool::Kind::True: v = ~std::uint64_t{0}; break;
      case ExprPool::Kind::Var:
        if (n.a < ni)
          v = input ? input[n.a] : 0;
        else
          v = state[n.a - ni];
        break;
      case ExprPool::Kind::Not: v = ~value_[n.a]; break;
      case ExprPool::Kind::And: v = value_[n.a] & value_[n.b]; break;
      case ExprPool::Kind::Or: v = value_[n.a] | value_[n.b]; break;
    }
    value_[e] = v;
  }
}

void StepEvaluator::step(const std::uint64_t* state,
                         const std::uint64_t* input, std::uint64_t* next) {
  run(state, input);
  for (std::size_t j = 0; j < a_.latches.size(); ++j)
    next[j] = value_[a_.latches[j].next];
}

std::uint64_t StepEvaluator::safe(const std::uint64_t* state) {
  run(state, nullptr);
  return value_[a_.safe];
}

namespace {

std::vector<std::uint64_t> pack(const Assignment& a) {
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ? 1 : 0;
  return out;
}

}  // namespace

std::vector<std::size_t> SymbolicAutomaton::uncontrollable_inputs() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (!controllable[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> SymbolicAutomaton::controllable_inputs() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (controllable[i]) out.push_back(i);
  return out;
}

std::vector<std::uint64_t> SymbolicAutomaton::step(
    const std::vector<std::uint64_t>& state,
    const std::vector<std::uint64_t>& input) const {
  if (state.size() != latches.size() || input.size() != inputs.size())
    throw std::invalid_argument("SymbolicAutomaton::step: assignment size");
  StepEvaluator ev(*this);
  std::vector<std::uint64_t> next(latches.size());
  ev.step(state.data(), input.data(), next.data());
  return next;
}

std::uint64_t SymbolicAutomaton::safe_mask(
    const std::vector<std::uint64_t>& state) const {
  if (state.size() != latches.size())
    throw std::invalid_argument("SymbolicAutomaton::safe_mask: state size");
  StepEvaluator ev(*this);
  return ev.safe(state.data());
}

Assignment SymbolicAutomaton::step(const Assignment& state,
                                   const Assignment& input) const {
  auto next = step(pack(state), pack(input));
  Assignment out(next.size());
  for (std::size_t j = 0; j < next.size(); ++j) out[j] = next[j] & 1;
  return out;
}

bool SymbolicAutomaton::is_safe(const Assignment& state) const {
  return safe_mask(pack(state)) & 1;
}

unsigned SymbolicAutomaton::counter_value(const Assignment& state) const {
  unsigned v = 0;
  for (std::size_t k = 0; k < counter_bits; ++k)
    if (state[k]) v |= 1u << k;
  return v;
}

std::uint64_t SymbolicAutomaton::accepts(const WordBatch& batch) const {
  const std::size_t stem = batch.stem_len();
  const std::size_t loop = batch.loop_len();
  if (loop == 0) throw std::invalid_argument("accepts: empty loop");
  std::vector<int> column(inputs.size(), -1);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (std::size_t k = 0; k < batch.atoms().size(); ++k)
      if (batch.atoms()[k] == inputs[i]) column[i] = static_cast<int>(k);

  StepEvaluator ev(*this);
  const std::size_t nl = latches.size();
  std::vector<std::uint64_t> state(nl, 0), next(nl), in(inputs.size());
  std::vector<std::vector<std::uint64_t>> ring(loop);
  const std::uint64_t live = batch.live();
  std::uint64_t bad = 0, done = 0;
  // A run is decided once its state recurs at the same loop offset.
  for (std::size_t t = 0;; ++t) {
    bad |= ~ev.safe(state.data());
    if (t >= stem) {
      auto& slot = ring[(t - stem) % loop];
      if (t >= stem + loop) {
        std::uint64_t eq = ~std::uint64_t{0};
        for (std::size_t j = 0; j < nl; ++j) eq &= ~(state[j] ^ slot[j]);
        done |= eq;
      }
      slot = state;
    }
    if ((done & live) == live) break;
    if (t > (1u << 22)) throw std::logic_error("accepts: run did not cycle");
    const std::size_t pos = t < stem ? t : stem + (t - stem) % loop;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      in[i] = column[i] < 0 ? 0 : batch.mask(pos, column[i]);
    ev.step(state.data(), in.data(), next.data());
    state.swap(next);
  }
  return ~bad & live;
}

bool SymbolicAutomaton::accepts(const LassoWord& w) const {
  WordBatch batch(inputs, w.stem.size(), w.loop.size());
  batch.push(w);
  return accepts(batch) & 1;
}

std::size_t SymbolicAutomaton::gate_count() const {
  std::vector<Expr> roots{safe};
  for (const Latch& l : latches) roots.push_back(l.next);
  return pool.gate_count(roots);
}

void SymbolicAutomaton::validate() const {
  if (controllable.size() != inputs.size())
    throw std::logic_error("automaton: controllable flags size");
  const std::size_t nv = inputs.size() + latches.size();
  std::vector<Expr> roots{safe};
  for (const Latch& l : latches) roots.push_back(l.next);
  for (const Define& d : defines) roots.push_back(d.expr);
  for (Expr e : pool.cone(roots)) {
    const auto& n = pool.node(e);
    if (n.kind == ExprPool::Kind::Var && n.a >= nv)
      throw std::logic_error("automaton: undeclared variable");
  }
  for (Expr e : pool.cone({safe})) {
    const auto& n = pool.node(e);
    if (n.kind == ExprPool::Kind::Var && n.a < inputs.size())
      throw std::logic_error("automaton: safe reads input " + inputs[n.a]);
  }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string latch_kind_name(LatchKind k) {
  switch (k) {
    case LatchKind::Counter: return "counter";
    case LatchKind::Past: return "past";
    case LatchKind::Released: return "released";
    case LatchKind::Error: return "error";
  }
  return "?";
}

class Printer {
public:
  explicit Printer(const SymbolicAutomaton& a) : a_(a) {
    for (std::size_t k = 0; k < a.defines.size(); ++k)
      names_.emplace(a.defines[k].expr, std::pair{k, a.defines[k].name});
    limit_ = a.defines.size();
  }

  // Only defines before `k` may be referred to by name.
  void limit(std::size_t k) { limit_ = k; }

  std::string print(Expr e, bool top) const {
    const auto& n = a_.pool.node(e);
    if (!top && named(e)) return names_.at(e).second;
    switch (n.kind) {
      case ExprPool::Kind::False: return "false";
      case ExprPool::Kind::True: return "true";
      case ExprPool::Kind::Var: return var_name(n.a);
      case ExprPool::Kind::Not: {
        std::string inner = print(n.a, false);
        return "!" + (is_compound(n.a) ? "(" + inner + ")" : inner);
      }
      case ExprPool::Kind::And:
      case ExprPool::Kind::Or: {
        std::vector<Expr> ops;
        collect(e, n.kind, ops, true);
        std::string out;
        for (Expr o : ops) {
          if (!out.empty()) out += n.kind == ExprPool::Kind::And ? " & " : " | ";
          std::string s = print(o, false);
          out += is_compound(o) ? "(" + s + ")" : s;
        }
        return out;
      }
    }
    return "?";
  }

private:
  std::string var_name(std::uint32_t v) const {
    if (v < a_.inputs.size()) return a_.inputs[v];
    return a_.latches.at(v - a_.inputs.size()).name;
  }

  bool named(Expr e) const {
    auto it = names_.find(e);
    return it != names_.end() && it->second.first < limit_;
  }

  bool is_compound(Expr e) const {
    if (named(e)) return false;
    auto k = a_.pool.node(e).kind;
    return k == ExprPool::Kind::And || k == ExprPool::Kind::Or;
  }

  void collect(Expr e, ExprPool::Kind kind, std::vector<Expr>& out,
               bool top) const {
    const auto& n = a_.pool.node(e);
    if (n.kind == kind && (top || !named(e))) {
      // only the left spine is flattened, matching the left-associative reader
      collect(n.a, kind, out, false);
      out.push_back(n.b);
    } else {
      out.push_back(e);
    }
  }

  const SymbolicAutomaton& a_;
  std::unordered_map<Expr, std::pair<std::size_t, std::string>> names_;
  std::size_t limit_ = 0;
};

}  // namespace

std::string SymbolicAutomaton::to_string(Expr e) const {
  return Printer(*this).print(e, true);
}

std::string SymbolicAutomaton::dump() const {
  Printer p(*this);
  std::ostringstream out;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    out << "input " << inputs[i]
        << (controllable[i] ? " controllable" : " uncontrollable") << "\n";
  for (const Latch& l : latches) {
    out << "latch " << l.name << " init 0 " << latch_kind_name(l.kind);
    if (!l.source.empty()) out << "  # " << l.source;
    out << "\n";
  }
  for (std::size_t k = 0; k < defines.size(); ++k) {
    const Define& d = defines[k];
    p.limit(k);
    out << "define " << d.name << " := " << p.print(d.expr, true);
    if (!d.source.empty()) out << "  # " << d.source;
    out << "\n";
  }
  p.limit(defines.size());
  for (const Latch& l : latches)
    out << "next(" << l.name << ") := " << p.print(l.next, true) << "\n";
  out << "safe := " << p.print(safe, true) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Reading the listing back
// ---------------------------------------------------------------------------

namespace {

class ListingParser {
public:
  ListingParser(SymbolicAutomaton& a, std::size_t line) : a_(a), line_(line) {}

  void declare(const std::string& name, Expr e) {
    if (!names_.emplace(name, e).second)
      fail("duplicate name '" + name + "'", 1);
  }

  Expr parse(std::string_view text, std::size_t col0) {
    text_ = text;
    pos_ = 0;
    col0_ = col0;
    Expr e = disj();
    skip();
    if (pos_ != text_.size()) fail("unexpected character", pos_);
    return e;
  }

  [[noreturn]] void fail(const std::string& what, std::size_t pos) const {
    throw ParseError("automaton listing: " + what, line_, col0_ + pos + 1);
  }

private:
  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  Expr disj() {
    Expr e = conj();
    for (skip(); pos_ < text_.size() && text_[pos_] == '|'; skip()) {
      ++pos_;
      e = a_.pool.disj(e, conj());
    }
    return e;
  }

  Expr conj() {
    Expr e = unary();
    for (skip(); pos_ < text_.size() && text_[pos_] == '&'; skip()) {
      ++pos_;
      e = a_.pool.conj(e, unary());
    }
    return e;
  }

  Expr unary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression", pos_);
    char ch = text_[pos_];
    if (ch == '!') {
      ++pos_;
      return a_.pool.neg(unary());
    }
    if (ch == '(') {
      ++pos_;
      Expr e = disj();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'", pos_);
      ++pos_;
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '.' || text_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("expected a name", pos_);
    std::string word(text_.substr(start, pos_ - start));
    if (word == "true") return ExprPool::kTrue;
    if (word == "false") return ExprPool::kFalse;
    auto it = names_.find(word);
    if (it == names_.end()) fail("unknown name '" + word + "'", start);
    return it->second;
  }

  SymbolicAutomaton& a_;
  std::size_t line_;
  std::unordered_map<std::string, Expr> names_;
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t col0_ = 0;

public:
  void set_line(std::size_t line) { line_ = line; }
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

LatchKind parse_latch_kind(const std::string& s, ListingParser& p) {
  if (s == "counter") return LatchKind::Counter;
  if (s == "past") return LatchKind::Past;
  if (s == "released") return LatchKind::Released;
  if (s == "error") return LatchKind::Error;
  p.fail("unknown latch kind '" + s + "'", 0);
}

}  // namespace

SymbolicAutomaton parse_automaton(std::string_view text) {
  SymbolicAutomaton a;
  ListingParser p(a, 1);
  struct Pending {
    std::size_t line;
    std::string name;
    std::string body;
    std::size_t col;
  };
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }

  // Declarations come first so that next functions may refer to any latch.
  std::vector<std::pair<std::size_t, std::string>> decl_lines;
  std::vector<Pending> defines, nexts;
  std::optional<Pending> safe;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view raw = lines[ln];
    p.set_line(ln + 1);
    std::string_view body = raw;
    std::size_t comment = body.find('#');
    std::string source;
    if (comment != std::string_view::npos) {
      source = std::string(trim(body.substr(comment + 1)));
      body = body.substr(0, comment);
    }
    body = trim(body);
    if (body.empty()) continue;
    std::istringstream words{std::string(body)};
    std::string head;
    words >> head;
    if (head == "input") {
      std::string name, kind;
      words >> name >> kind;
      if (name.empty() || (kind != "controllable" && kind != "uncontrollable"))
        p.fail("malformed input declaration", 0);
      p.declare(name, a.pool.var(static_cast<std::uint32_t>(a.inputs.size())));
      a.inputs.push_back(name);
      a.controllable.push_back(kind == "controllable");
    } else if (head == "latch") {
      std::string name, init, zero, kind;
      words >> name >> init >> zero >> kind;
      if (name.empty() || init != "init" || zero != "0")
        p.fail("malformed latch declaration", 0);
      a.latches.push_back({name, parse_latch_kind(kind, p), ExprPool::kFalse,
                           source});
      decl_lines.emplace_back(ln + 1, name);
    } else if (head == "define" || head.rfind("next(", 0) == 0 ||
               head == "safe") {
      std::size_t assign = body.find(":=");
      if (assign == std::string_view::npos) p.fail("expected ':='", 0);
      std::string lhs(trim(body.substr(0, assign)));
      Pending item{ln + 1, "", std::string(body.substr(assign + 2)),
                   static_cast<std::size_t>(
                       body.data() - raw.data() + assign + 2)};
      if (head == "define") {
        item.name = std::string(trim(lhs.substr(6)));
        defines.push_back(item);
        a.defines.push_back({item.name, ExprPool::kFalse, source});
      } else if (head == "safe") {
        if (lhs != "safe" || safe) p.fail("malformed safe line", 0);
        safe = item;
      } else {
        if (lhs.size() < 7 || lhs.back() != ')')
          p.fail("malformed next line", 0);
        item.name = lhs.substr(5, lhs.size() - 6);
        nexts.push_back(item);
      }
    } else {
      p.fail("unknown line kind '" + head + "'", 0);
    }
  }
  // inputs must precede latches in the variable numbering
  for (std::size_t j = 0; j < a.latches.size(); ++j) {
    p.set_line(decl_lines[j].first);
    p.declare(a.latches[j].name, a.pool.var(a.latch_var(j)));
  }
  for (std::size_t k = 0; k < defines.size(); ++k) {
    p.set_line(defines[k].line);
    Expr e = p.parse(defines[k].body, defines[k].col);
    a.defines[k].expr = e;
    p.declare(defines[k].name, e);
  }
  std::vector<bool> seen(a.latches.size(), false);
  for (const Pending& n : nexts) {
    p.set_line(n.line);
    std::size_t j = 0;
    while (j < a.latches.size() && a.latches[j].name != n.name) ++j;
    if (j == a.latches.size()) p.fail("next of undeclared latch", 0);
    if (seen[j]) p.fail("second next function for " + n.name, 0);
    seen[j] = true;
    a.latches[j].next = p.parse(n.body, n.col);
  }
  for (std::size_t j = 0; j < a.latches.size(); ++j) {
    if (!seen[j]) {
      p.set_line(decl_lines[j].first);
      p.fail("latch " + a.latches[j].name + " has no next function", 0);
    }
  }
  if (!safe) {
    p.set_line(lines.size());
    p.fail("missing safe line", 0);
  }
  p.set_line(safe->line);
  a.safe = p.parse(safe->body, safe->col);
  for (const Latch& l : a.latches)
    if (l.kind == LatchKind::Counter) ++a.counter_bits;
  try {
    a.validate();
  } catch (const std::logic_error& e) {
    p.fail(e.what(), 0);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Compilation
// ---------------------------------------------------------------------------

namespace {

class Compiler {
public:
  Compiler(SymbolicAutomaton& a, const Partition& part) : a_(a) {
    for (const auto& u : part.uncontrollable) add_input(u, false);
    for (const auto& c : part.controllable) add_input(c, true);
  }

  void build(const CanonicalFormula& chi) {
    const std::vector<CanonicalAtom> atoms = chi.atoms();
    bool need_counter = false;
    for (const auto& at : atoms) {
      a_.max_depth = std::max(a_.max_depth, at.depth);
      need_counter |= at.depth > 0 || at.kind == CanonicalAtom::Kind::Past;
    }
    if (need_counter) build_counter();

    std::vector<Expr> error(atoms.size());
    for (std::size_t k = 0; k < atoms.size(); ++k)
      error[k] = build_atom(atoms[k], k + 1);

    std::function<Expr(const Formula&)> tree = [&](const Formula& f) -> Expr {
      if (auto at = match_canonical_atom(f)) {
        for (std::size_t k = 0; k < atoms.size(); ++k)
          if (atoms[k] == *at) return a_.pool.neg(error[k]);
      }
      if (f.is(Op::And) || f.is(Op::Or)) {
        const Expr l = tree(f.left());
        const Expr r = tree(f.right());
        return f.is(Op::And) ? a_.pool.conj(l, r) : a_.pool.disj(l, r);
      }
      throw FragmentError("compile: not a canonical formula: " + to_string(f));
    };
    a_.safe = tree(chi.formula);
  }

private:
  void add_input(const std::string& name, bool controllable) {
    inputs_.emplace(name, a_.pool.var(static_cast<std::uint32_t>(a_.inputs.size())));
    a_.inputs.push_back(name);
    a_.controllable.push_back(controllable);
  }

  std::size_t new_latch(std::string name, LatchKind kind, std::string source) {
    a_.latches.push_back({std::move(name), kind, ExprPool::kFalse,
                          std::move(source)});
    return a_.latches.size() - 1;
  }

  Expr latch_expr(std::size_t j) { return a_.pool.var(a_.latch_var(j)); }

  void define(const std::string& name, Expr e, std::string source = "") {
    a_.defines.push_back({name, e, std::move(source)});
  }

  // ---- counter ----

  void build_counter() {
    const unsigned sat = a_.max_depth + 1;
    const std::size_t bits = std::bit_width(sat);
    a_.counter_bits = bits;
    for (std::size_t k = 0; k < bits; ++k) {
      counter_.push_back(new_latch("counter_" + std::to_string(k),
                                   LatchKind::Counter, ""));
    }
    ExprPool& p = a_.pool;
    const Expr at_sat = counter_eq(sat);
    Expr carry = ExprPool::kTrue;
    for (std::size_t k = 0; k < bits; ++k) {
      const Expr b = latch_expr(counter_[k]);
      const Expr inc = p.disj(p.conj(b, p.neg(carry)), p.conj(p.neg(b), carry));
      carry = p.conj(b, carry);
      const Expr keep = (sat >> k) & 1 ? ExprPool::kTrue : ExprPool::kFalse;
      a_.latches[counter_[k]].next = p.ite(at_sat, keep, inc);
    }
  }

  Expr counter_eq(unsigned i) {
    if (auto it = eq_.find(i); it != eq_.end()) return it->second;
    std::vector<Expr> lits;
    for (std::size_t k = 0; k < counter_.size(); ++k) {
      Expr b = latch_expr(counter_[k]);
      lits.push_back((i >> k) & 1 ? b : a_.pool.neg(b));
    }
    Expr e = a_.pool.conj_all(lits);
    eq_.emplace(i, e);
    define("counter_eq_" + std::to_string(i), e);
    return e;
  }

  Expr counter_lt(unsigned i) {
    if (i == 0) return ExprPool::kFalse;
    if (auto it = lt_.find(i); it != lt_.end()) return it->second;
    ExprPool& p = a_.pool;
    Expr lt = ExprPool::kFalse;
    for (std::size_t k = 0; k < counter_.size(); ++k) {
      Expr b = latch_expr(counter_[k]);
      if ((i >> k) & 1)
        lt = p.disj(p.neg(b), lt);
      else
        lt = p.conj(p.neg(b), lt);
    }
    lt_.emplace(i, lt);
    define("counter_lt_" + std::to_string(i), lt);
    return lt;
  }

  // ---- past monitors ----

  Expr yesterday_latch(const Formula& yf, const std::function<Expr()>& value) {
    std::size_t j = new_latch("y_" + std::to_string(++y_count_),
                              LatchKind::Past, to_string(yf));
    Expr y = latch_expr(j);
    past_.emplace(yf, y);
    a_.latches[j].next = value();
    return y;
  }

  Expr named(const Formula& f, Expr e) {
    const auto k = a_.pool.node(e).kind;
    const bool gate = k == ExprPool::Kind::And || k == ExprPool::Kind::Or;
    if (gate && !named_.count(e)) {
      named_.emplace(e);
      define("v_" + std::to_string(++v_count_), e, to_string(f));
    }
    return e;
  }

  Expr past(const Formula& f) {
    if (auto it = past_.find(f); it != past_.end()) return it->second;
    ExprPool& p = a_.pool;
    Expr e = ExprPool::kFalse;
    switch (f.op()) {
      case Op::True: e = ExprPool::kTrue; break;
      case Op::False: e = ExprPool::kFalse; break;
      case Op::Atom: {
        auto it = inputs_.find(f.name());
        if (it == inputs_.end())
          throw FragmentError("compile: atom '" + f.name() +
                              "' is not in the partition");
        e = it->second;
        break;
      }
      case Op::Not: e = p.neg(past(f.left())); break;
      case Op::And:
      case Op::Or: {
        const Expr l = past(f.left());
        const Expr r = past(f.right());
        e = f.is(Op::And) ? p.conj(l, r) : p.disj(l, r);
        break;
      }
      case Op::Yesterday: {
        Formula body = f.left();
        return yesterday_latch(f, [&] { return past(body); });
      }
      case Op::Since: {
        // v := b | (a & Y(a S b))
        Expr va = past(f.left()), vb = past(f.right());
        std::size_t j = new_latch("y_" + std::to_string(++y_count_),
                                  LatchKind::Past,
                                  to_string(Formula::yesterday(f)));
        e = p.disj(vb, p.conj(va, latch_expr(j)));
        a_.latches[j].next = e;
        break;
      }
      case Op::Triggered: {
        // latch holds Y(!a S !b)
        Expr va = past(f.left()), vb = past(f.right());
        Formula dual = Formula::since(Formula::neg(f.left()),
                                      Formula::neg(f.right()));
        std::size_t j = new_latch("y_" + std::to_string(++y_count_),
                                  LatchKind::Past,
                                  to_string(Formula::yesterday(dual)));
        e = p.conj(vb, p.disj(va, p.neg(latch_expr(j))));
        a_.latches[j].next = p.neg(e);
        break;
      }
      case Op::Once: {
        Expr va = past(f.left());
        std::size_t j = new_latch("y_" + std::to_string(++y_count_),
                                  LatchKind::Past,
                                  to_string(Formula::yesterday(f)));
        e = p.disj(va, latch_expr(j));
        a_.latches[j].next = e;
        break;
      }
      case Op::Historically: {
        // latch holds Y O !a
        Expr va = past(f.left());
        std::size_t j = new_latch(
            "y_" + std::to_string(++y_count_), LatchKind::Past,
            to_string(Formula::yesterday(Formula::once(Formula::neg(f.left())))));
        e = p.conj(va, p.neg(latch_expr(j)));
        a_.latches[j].next = p.neg(e);
        break;
      }
      case Op::BoundedOnce: {
        std::vector<Expr> terms;
        for (unsigned k = f.lo(); k <= f.hi(); ++k)
          terms.push_back(past(Formula::yesterday(f.left(), k)));
        e = p.disj_all(terms);
        break;
      }
      case Op::BoundedHistorically: {
        std::vector<Expr> terms;
        Formula neg = Formula::neg(f.left());
        for (unsigned k = f.lo(); k <= f.hi(); ++k)
          terms.push_back(p.neg(past(Formula::yesterday(neg, k))));
        e = p.conj_all(terms);
        break;
      }
      default:
        throw FragmentError("compile: not a past formula: " + to_string(f));
    }
    named(f, e);
    past_.emplace(f, e);
    return e;
  }

  // ---- atom monitors ----

  Expr build_atom(const CanonicalAtom& at, std::size_t k) {
    ExprPool& p = a_.pool;
    const std::string src = to_string(at.formula());
    const std::string id = std::to_string(k);
    switch (at.kind) {
      case CanonicalAtom::Kind::Past: {
        const Expr v = past(at.body);
        const Expr fire = p.conj(counter_eq(at.depth), p.neg(v));
        std::size_t j = new_latch("error_" + id, LatchKind::Error, src);
        const Expr err = latch_expr(j);
        a_.latches[j].next = p.disj(err, fire);
        return err;
      }
      case CanonicalAtom::Kind::Globally: {
        const Expr v = past(at.body);
        const Expr active = p.neg(counter_lt(at.depth));
        std::size_t j = new_latch("error_" + id, LatchKind::Error, src);
        const Expr err = latch_expr(j);
        a_.latches[j].next = p.conj(active, p.disj(err, p.neg(v)));
        return err;
      }
      case CanonicalAtom::Kind::Release: {
        const Expr v1 = past(at.lhs);
        const Expr v2 = past(at.body);
        const Expr active = p.neg(counter_lt(at.depth));
        std::size_t r = new_latch("rel_" + id, LatchKind::Released, src);
        std::size_t j = new_latch("error_" + id, LatchKind::Error, src);
        const Expr rel = latch_expr(r);
        const Expr err = latch_expr(j);
        a_.latches[r].next = p.conj(active, p.disj(rel, p.conj(v1, v2)));
        a_.latches[j].next =
            p.conj(active, p.disj(err, p.conj(p.neg(rel), p.neg(v2))));
        return err;
      }
    }
    return ExprPool::kFalse;
  }

  SymbolicAutomaton& a_;
  std::unordered_map<std::string, Expr> inputs_;
  std::unordered_map<Formula, Expr, FormulaHash> past_;
  std::vector<std::size_t> counter_;
  std::unordered_map<unsigned, Expr> eq_, lt_;
  std::unordered_set<Expr> named_;
  std::size_t y_count_ = 0;
  std::size_t v_count_ = 0;
};

// Copies `e` into `dst`, mapping each variable through `var`.
class Rebuilder {
public:
  Rebuilder(const ExprPool& src, ExprPool& dst,
            std::function<Expr(std::uint32_t)> var)
      : src_(src), dst_(dst), var_(std::move(var)) {}

  Expr operator()(Expr e) {
    if (auto it = memo_.find(e); it != memo_.end()) return it->second;
    const auto& n = src_.node(e);
    Expr r = ExprPool::kFalse;
    switch (n.kind) {
      case ExprPool::Kind::False: r = ExprPool::kFalse; break;
      case ExprPool::Kind::True: r = ExprPool::kTrue; break;
      case ExprPool::Kind::Var: r = var_(n.a); break;
      case ExprPool::Kind::Not: r = dst_.neg((*this)(n.a)); break;
      case ExprPool::Kind::And:
      case ExprPool::Kind::Or: {
        const Expr l = (*this)(n.a);
        const Expr rr = (*this)(n.b);
        r = n.kind == ExprPool::Kind::And ? dst_.conj(l, rr) : dst_.disj(l, rr);
        break;
      }
    }
    memo_.emplace(e, r);
    return r;
  }

private:
  const ExprPool& src_;
  ExprPool& dst_;
  std::function<Expr(std::uint32_t)> var_;
  std::unordered_map<Expr, Expr> memo_;
};

// Removes latches that stay false on every run: the greatest set K of
// latches whose next functions simplify to false once K is set to false.
SymbolicAutomaton sweep_constant_latches(const SymbolicAutomaton& a) {
  const std::size_t ni = a.inputs.size();
  std::vector<bool> constant(a.latches.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    ExprPool scratch;
    Rebuilder rb(a.pool, scratch, [&](std::uint32_t v) -> Expr {
      if (v >= ni && constant[v - ni]) return ExprPool::kFalse;
      return scratch.var(v);
    });
    for (std::size_t j = 0; j < a.latches.size(); ++j) {
      if (constant[j] && rb(a.latches[j].next) != ExprPool::kFalse) {
        constant[j] = false;
        changed = true;
      }
    }
  }
  bool any = false;
  for (bool c : constant) any |= c;
  if (!any) return a;

  SymbolicAutomaton out;
  out.inputs = a.inputs;
  out.controllable = a.controllable;
  out.max_depth = a.max_depth;
  std::vector<std::uint32_t> renumber(a.latches.size());
  std::size_t kept = 0;
  for (std::size_t j = 0; j < a.latches.size(); ++j)
    if (!constant[j]) renumber[j] = static_cast<std::uint32_t>(ni + kept++);
  for (std::size_t v = 0; v < ni; ++v)
    out.pool.var(static_cast<std::uint32_t>(v));
  Rebuilder rb(a.pool, out.pool, [&](std::uint32_t v) -> Expr {
    if (v < ni) return out.pool.var(v);
    if (constant[v - ni]) return ExprPool::kFalse;
    return out.pool.var(renumber[v - ni]);
  });
  for (std::size_t j = 0; j < a.latches.size(); ++j) {
    if (constant[j]) continue;
    Latch l = a.latches[j];
    l.next = rb(l.next);
    out.latches.push_back(l);
    if (l.kind == LatchKind::Counter) ++out.counter_bits;
  }
  for (const Define& d : a.defines) {
    Expr e = rb(d.expr);
    const auto k = out.pool.node(e).kind;
    if (k == ExprPool::Kind::And || k == ExprPool::Kind::Or)
      out.defines.push_back({d.name, e, d.source});
  }
  out.safe = rb(a.safe);
  return out;
}

}  // namespace

SymbolicAutomaton compile(const CanonicalFormula& chi, const Partition& part) {
  SymbolicAutomaton a;
  Compiler c(a, part);
  c.build(chi);
  SymbolicAutomaton out = sweep_constant_latches(a);
  out.validate();
  return out;
}

}  // namespace ebr
