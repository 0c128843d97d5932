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

#include <cctype>
#include <algorithm>
#include <charconv>
#include <sstream>

#include "ebr/formula.hpp"

namespace ebr {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Not,
  And,
  Or,
  Implies,
  Iff,
  True,
  False,
  Unary,   // X F G Y O H
  Binary,  // U R S T
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t column = 0;
};

bool is_unary_letter(char c) {
  return c == 'X' || c == 'F' || c == 'G' || c == 'Y' || c == 'O' || c == 'H';
}

bool is_binary_word(std::string_view w) {
  return w == "U" || w == "R" || w == "S" || w == "T";
}

class Lexer {
public:
  Lexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t col = pos_ + 1;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", col});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
          ++pos_;
        std::string word(text_.substr(start, pos_ - start));
        emit_word(word, col, out);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
        out.push_back(
            {Tok::Number, std::string(text_.substr(start, pos_ - start)), col});
        continue;
      }
      if (match("<->") || match("<=>")) {
        out.push_back({Tok::Iff, "<->", col});
      } else if (match("->") || match("=>")) {
        out.push_back({Tok::Implies, "->", col});
      } else if (match("&&") || match("&") || match("/\\")) {
        out.push_back({Tok::And, "&", col});
      } else if (match("||") || match("|") || match("\\/")) {
        out.push_back({Tok::Or, "|", col});
      } else if (match("!") || match("~")) {
        out.push_back({Tok::Not, "!", col});
      } else if (match("(")) {
        out.push_back({Tok::LParen, "(", col});
      } else if (match(")")) {
        out.push_back({Tok::RParen, ")", col});
      } else if (match("[")) {
        out.push_back({Tok::LBracket, "[", col});
      } else if (match("]")) {
        out.push_back({Tok::RBracket, "]", col});
      } else if (match(",")) {
        out.push_back({Tok::Comma, ",", col});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line_, col);
      }
    }
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool match(std::string_view s) {
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  void emit_word(const std::string& w, std::size_t col,
                 std::vector<Token>& out) {
    if (w == "true" || w == "TRUE") {
      out.push_back({Tok::True, w, col});
    } else if (w == "false" || w == "FALSE") {
      out.push_back({Tok::False, w, col});
    } else if (is_binary_word(w)) {
      out.push_back({Tok::Binary, w, col});
    } else {
      // A leading run of operator letters is split off when the rest is
      // empty or starts with a lowercase letter: `GFp`, `YYu1`, `XXG`.
      std::size_t run = 0;
      while (run < w.size() && is_unary_letter(w[run])) ++run;
      const bool split =
          run > 0 && (run == w.size() ||
                      std::islower(static_cast<unsigned char>(w[run])));
      if (!split) {
        out.push_back({Tok::Ident, w, col});
        return;
      }
      for (std::size_t i = 0; i < run; ++i)
        out.push_back({Tok::Unary, std::string(1, w[i]), col + i});
      if (run < w.size()) emit_word(w.substr(run), col + run, out);
    }
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  Parser(std::vector<Token> toks, std::size_t line)
      : toks_(std::move(toks)), line_(line) {}

  Formula run() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, peek().column);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }

  unsigned number() {
    if (peek().kind != Tok::Number) fail("expected a number");
    const Token t = take();
    unsigned v = 0;
    auto [ptr, ec] =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw ParseError("bound out of range", line_, t.column);
    return v;
  }

  // [a,b]
  std::pair<unsigned, unsigned> interval() {
    std::size_t col = peek().column;
    expect(Tok::LBracket, "'['");
    unsigned a = number();
    expect(Tok::Comma, "','");
    unsigned b = number();
    expect(Tok::RBracket, "']'");
    if (a > b)
      throw BoundError("interval [" + std::to_string(a) + "," +
                           std::to_string(b) + "] has lower bound above upper",
                       line_, col);
    return {a, b};
  }

  Formula parse_iff() {
    Formula l = parse_implies();
    while (peek().kind == Tok::Iff) {
      ++pos_;
      l = Formula::iff(l, parse_implies());
    }
    return l;
  }

  Formula parse_implies() {
    Formula l = parse_or();
    if (peek().kind == Tok::Implies) {
      ++pos_;
      return Formula::implies(l, parse_implies());
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (peek().kind == Tok::Or) {
      ++pos_;
      l = Formula::disj(l, parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_binary();
    while (peek().kind == Tok::And) {
      ++pos_;
      l = Formula::conj(l, parse_binary());
    }
    return l;
  }

  Formula parse_binary() {
    Formula l = parse_unary();
    if (peek().kind != Tok::Binary) return l;
    const std::string op = take().text;
    if (op == "U" && peek().kind == Tok::LBracket) {
      auto [a, b] = interval();
      return Formula::bounded_until(l, parse_binary(), a, b);
    }
    Formula r = parse_binary();
    if (op == "U") return Formula::until(l, r);
    if (op == "R") return Formula::release(l, r);
    if (op == "S") return Formula::since(l, r);
    return Formula::triggered(l, r);
  }

  Formula parse_unary() {
    if (peek().kind == Tok::Not) {
      ++pos_;
      return Formula::neg(parse_unary());
    }
    if (peek().kind != Tok::Unary) return parse_primary();
    const char op = take().text[0];
    switch (op) {
      case 'X': {
        unsigned n = 1;
        if (peek().kind == Tok::LBracket) {
          ++pos_;
          n = number();
          expect(Tok::RBracket, "']'");
        }
        return Formula::next(parse_unary(), n);
      }
      case 'Y':
        return Formula::yesterday(parse_unary());
      default:
        break;
    }
    if (peek().kind == Tok::LBracket) {
      auto [a, b] = interval();
      Formula f = parse_unary();
      if (op == 'F') return Formula::bounded_eventually(f, a, b);
      if (op == 'G') return Formula::bounded_globally(f, a, b);
      if (op == 'O') return Formula::bounded_once(f, a, b);
      return Formula::bounded_historically(f, a, b);
    }
    Formula f = parse_unary();
    if (op == 'F') return Formula::eventually(f);
    if (op == 'G') return Formula::globally(f);
    if (op == 'O') return Formula::once(f);
    return Formula::historically(f);
  }

  Formula parse_primary() {
    switch (peek().kind) {
      case Tok::True:
        ++pos_;
        return Formula::tt();
      case Tok::False:
        ++pos_;
        return Formula::ff();
      case Tok::Ident:
        return Formula::atom(take().text);
      case Tok::LParen: {
        ++pos_;
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::End:
        fail("unexpected end of formula");
      default:
        fail("unexpected '" + peek().text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string interval_text(const Formula& f) {
  return "[" + std::to_string(f.lo()) + "," + std::to_string(f.hi()) + "]";
}

void print(const Formula& f, bool top, std::string& out) {
  auto unary = [&](std::string op) {
    out += op;
    out += ' ';
    print(f.child(0), false, out);
  };
  auto binary = [&](const char* op) {
    if (!top) out += '(';
    print(f.left(), false, out);
    out += op;
    print(f.right(), false, out);
    if (!top) out += ')';
  };
  switch (f.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += f.name(); return;
    case Op::Not:
      out += '!';
      print(f.child(0), false, out);
      return;
    case Op::And: binary(" & "); return;
    case Op::Or: binary(" | "); return;
    case Op::Next: unary("X"); return;
    case Op::Eventually: unary("F"); return;
    case Op::Globally: unary("G"); return;
    case Op::Yesterday: unary("Y"); return;
    case Op::Once: unary("O"); return;
    case Op::Historically: unary("H"); return;
    case Op::BoundedEventually: unary("F" + interval_text(f)); return;
    case Op::BoundedGlobally: unary("G" + interval_text(f)); return;
    case Op::BoundedOnce: unary("O" + interval_text(f)); return;
    case Op::BoundedHistorically: unary("H" + interval_text(f)); return;
    case Op::Until: binary(" U "); return;
    case Op::Release: binary(" R "); return;
    case Op::Since: binary(" S "); return;
    case Op::Triggered: binary(" T "); return;
    case Op::BoundedUntil: {
      const std::string op = " U" + interval_text(f) + " ";
      binary(op.c_str());
      return;
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text, std::size_t line) {
  return Parser(Lexer(text, line).run(), line).run();
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, true, out);
  return out;
}

Specification parse_specification(std::string_view text) {
  Specification spec;
  std::vector<Formula> formulas;
  bool have_inputs = false;
  bool have_outputs = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line = line.substr(first);
    if (line.starts_with(".inputs") || line.starts_with(".outputs")) {
      const bool inputs = line.starts_with(".inputs");
      if (inputs ? have_inputs : have_outputs)
        throw ParseError("duplicate header line", line_no, 1);
      (inputs ? have_inputs : have_outputs) = true;
      std::istringstream words{std::string(line.substr(inputs ? 7 : 8))};
      auto& target = inputs ? spec.partition.uncontrollable
                            : spec.partition.controllable;
      for (std::string w; words >> w;) target.push_back(w);
      continue;
    }
    if (line.starts_with(".")) throw ParseError("unknown directive", line_no, 1);
    formulas.push_back(parse_formula(line, line_no));
  }
  if (!have_inputs || !have_outputs)
    throw ParseError("missing .inputs or .outputs header", 1, 1);
  if (formulas.empty()) throw ParseError("no formula", line_no, 1);
  spec.formula = conj_all(formulas);
  spec.partition.validate(spec.formula);
  return spec;
}

std::string to_string(const Specification& spec) {
  std::string out = ".inputs";
  for (const auto& u : spec.partition.uncontrollable) out += " " + u;
  out += "\n.outputs";
  for (const auto& c : spec.partition.controllable) out += " " + c;
  out += "\n" + to_string(spec.formula) + "\n";
  return out;
}

}  // namespace ebr
