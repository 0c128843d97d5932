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

#include "ebr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace ebr {

const State& LassoWord::at(std::size_t i) const {
  if (i < stem.size()) return stem[i];
  return loop[(i - stem.size()) % loop.size()];
}

namespace {

std::string state_text(const State& s) {
  std::string out = "{";
  for (const auto& a : s) {
    if (out.size() > 1) out += ",";
    out += a;
  }
  return out + "}";
}

}  // namespace

std::string to_string(const LassoWord& w) {
  std::string out = "stem [";
  for (const auto& s : w.stem) out += state_text(s);
  out += "] loop [";
  for (const auto& s : w.loop) out += state_text(s);
  return out + "]";
}

WordBatch::WordBatch(std::vector<std::string> atoms, std::size_t stem_len,
                     std::size_t loop_len)
    : atoms_(std::move(atoms)),
      stem_len_(stem_len),
      loop_len_(loop_len),
      masks_((stem_len + loop_len) * atoms_.size(), 0) {
  if (loop_len == 0) throw std::invalid_argument("WordBatch: empty loop");
}

void WordBatch::push(const LassoWord& w) {
  if (count_ == 64) throw std::length_error("WordBatch: full");
  if (w.stem.size() != stem_len_ || w.loop.size() != loop_len_)
    throw std::invalid_argument("WordBatch: word shape differs");
  const std::uint64_t bit = std::uint64_t{1} << count_;
  for (std::size_t t = 0; t < stem_len_ + loop_len_; ++t) {
    const State& s = t < stem_len_ ? w.stem[t] : w.loop[t - stem_len_];
    for (std::size_t a = 0; a < atoms_.size(); ++a)
      if (s.count(atoms_[a])) mask(t, a) |= bit;
  }
  ++count_;
}

LassoWord WordBatch::word(std::size_t k) const {
  LassoWord w;
  for (std::size_t t = 0; t < stem_len_ + loop_len_; ++t) {
    State s;
    for (std::size_t a = 0; a < atoms_.size(); ++a)
      if ((mask(t, a) >> k) & 1) s.insert(atoms_[a]);
    (t < stem_len_ ? w.stem : w.loop).push_back(std::move(s));
  }
  return w;
}

namespace {

using Mask = std::uint64_t;
using Values = std::vector<Mask>;

// Bit-sliced evaluation over a finite window [0, T).  Every subformula's
// value sequence is periodic with the loop length from some position on;
// `settle` bounds that position.  T is chosen so that all subformulas are
// periodic on [P, T) with T = P + loop, and position T is identified with P.
class Evaluator {
public:
  explicit Evaluator(const WordBatch& b) : b_(b) {}

  std::size_t settle(const Formula& f) {
    if (auto it = settle_.find(f.id()); it != settle_.end()) return it->second;
    std::size_t s = 0;
    for (std::size_t i = 0; i < f.arity(); ++i)
      s = std::max(s, settle(f.child(i)));
    switch (f.op()) {
      case Op::Atom: s = b_.stem_len(); break;
      case Op::Yesterday: s += 1; break;
      case Op::Since:
      case Op::Triggered:
      case Op::Once:
      case Op::Historically: s += b_.loop_len(); break;
      case Op::BoundedOnce:
      case Op::BoundedHistorically: s += f.hi(); break;
      default: break;
    }
    settle_.emplace(f.id(), s);
    return s;
  }

  void prepare(const Formula& f) {
    period_start_ = settle(f);
    window_ = period_start_ + b_.loop_len();
  }

  std::size_t window() const { return window_; }
  std::size_t period_start() const { return period_start_; }

  std::size_t succ(std::size_t i) const {
    return i + 1 < window_ ? i + 1 : period_start_;
  }

  const Values& eval(const Formula& f) {
    if (auto it = cache_.find(f.id()); it != cache_.end()) return it->second;
    Values v = compute(f);
    return cache_.emplace(f.id(), std::move(v)).first->second;
  }

private:
  Values compute(const Formula& f) {
    const std::size_t T = window_;
    const Mask all = ~Mask{0};
    Values out(T, 0);
    switch (f.op()) {
      case Op::True:
        std::fill(out.begin(), out.end(), all);
        return out;
      case Op::False:
        return out;
      case Op::Atom: {
        auto it = std::find(b_.atoms().begin(), b_.atoms().end(), f.name());
        if (it == b_.atoms().end()) return out;
        const std::size_t a = it - b_.atoms().begin();
        const std::size_t S = b_.stem_len(), L = b_.loop_len();
        for (std::size_t i = 0; i < T; ++i)
          out[i] = b_.mask(i < S ? i : S + (i - S) % L, a);
        return out;
      }
      default:
        break;
    }
    const Values& x = eval(f.child(0));
    switch (f.op()) {
      case Op::Not:
        for (std::size_t i = 0; i < T; ++i) out[i] = ~x[i];
        return out;
      case Op::Next:
        for (std::size_t i = 0; i < T; ++i) out[i] = x[succ(i)];
        return out;
      case Op::Yesterday:
        for (std::size_t i = 1; i < T; ++i) out[i] = x[i - 1];
        return out;
      case Op::Once: {
        Mask acc = 0;
        for (std::size_t i = 0; i < T; ++i) out[i] = acc |= x[i];
        return out;
      }
      case Op::Historically: {
        Mask acc = all;
        for (std::size_t i = 0; i < T; ++i) out[i] = acc &= x[i];
        return out;
      }
      case Op::BoundedOnce:
      case Op::BoundedHistorically: {
        const bool once = f.is(Op::BoundedOnce);
        for (std::size_t i = 0; i < T; ++i) {
          Mask acc = once ? 0 : all;
          for (std::size_t j = f.lo(); j <= f.hi() && j <= i; ++j)
            acc = once ? (acc | x[i - j]) : (acc & x[i - j]);
          out[i] = acc;
        }
        return out;
      }
      case Op::Eventually:
        return fixpoint(Values(T, all), x, false);
      case Op::Globally:
        return fixpoint(x, Values(T, 0), true);
      case Op::BoundedEventually:
      case Op::BoundedGlobally: {
        const bool ev = f.is(Op::BoundedEventually);
        for (std::size_t i = 0; i < T; ++i) {
          std::size_t k = i;
          for (unsigned j = 0; j < f.lo(); ++j) k = succ(k);
          Mask acc = ev ? 0 : all;
          for (unsigned j = f.lo(); j <= f.hi(); ++j, k = succ(k))
            acc = ev ? (acc | x[k]) : (acc & x[k]);
          out[i] = acc;
        }
        return out;
      }
      default:
        break;
    }
    const Values& y = eval(f.child(1));
    switch (f.op()) {
      case Op::And:
        for (std::size_t i = 0; i < T; ++i) out[i] = x[i] & y[i];
        return out;
      case Op::Or:
        for (std::size_t i = 0; i < T; ++i) out[i] = x[i] | y[i];
        return out;
      case Op::Until:
        return fixpoint(x, y, false);
      case Op::Release:
        return fixpoint(y, x, true);
      case Op::Since: {
        Mask prev = 0;
        for (std::size_t i = 0; i < T; ++i) out[i] = prev = y[i] | (x[i] & prev);
        return out;
      }
      case Op::Triggered: {
        Mask prev = all;
        for (std::size_t i = 0; i < T; ++i) out[i] = prev = y[i] & (x[i] | prev);
        return out;
      }
      case Op::BoundedUntil: {
        for (std::size_t i = 0; i < T; ++i) {
          Mask hold = all;  // x held on [i, i + j)
          Mask acc = 0;
          std::size_t k = i;
          for (unsigned j = 0; j <= f.hi(); ++j, k = succ(k)) {
            if (j >= f.lo()) acc |= hold & y[k];
            hold &= x[k];
          }
          out[i] = acc;
        }
        return out;
      }
      default:
        throw std::logic_error("evaluate: unhandled operator");
    }
  }

  // Least solution of out = b | (a & X out), or greatest solution of
  // out = a & (b | X out), by backward sweeps until stable.
  Values fixpoint(const Values& a, const Values& b, bool greatest) {
    const std::size_t T = window_;
    Values out(T, greatest ? ~Mask{0} : 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = T; i-- > 0;) {
        const Mask next = out[succ(i)];
        const Mask v = greatest ? (a[i] & (b[i] | next)) : (b[i] | (a[i] & next));
        if (v != out[i]) {
          out[i] = v;
          changed = true;
        }
      }
    }
    return out;
  }

  const WordBatch& b_;
  std::size_t period_start_ = 0;
  std::size_t window_ = 0;
  std::unordered_map<const void*, std::size_t> settle_;
  std::unordered_map<const void*, Values> cache_;
};

}  // namespace

std::vector<std::uint64_t> evaluate(const WordBatch& batch, const Formula& f,
                                    std::size_t n) {
  Evaluator ev(batch);
  ev.prepare(f);
  const Values& v = ev.eval(f);
  std::vector<std::uint64_t> out(n);
  const std::size_t P = ev.period_start(), L = batch.loop_len();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = v[i < ev.window() ? i : P + (i - P) % L] & batch.live();
  return out;
}

bool eval_at(const LassoWord& w, std::size_t i, const Formula& f) {
  std::set<std::string> names = atoms(f);
  WordBatch batch({names.begin(), names.end()}, w.stem.size(), w.loop.size());
  batch.push(w);
  return evaluate(batch, f, i + 1)[i] & 1;
}

namespace {

void fill_batch(WordBatch& b, std::uint64_t first, std::size_t count) {
  const std::size_t n = b.atoms().size();
  const std::size_t len = b.stem_len() + b.loop_len();
  for (std::size_t t = 0; t < len; ++t)
    for (std::size_t a = 0; a < n; ++a) b.mask(t, a) = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t code = first + k;
    for (std::size_t t = 0; t < len; ++t)
      for (std::size_t a = 0; a < n; ++a)
        if ((code >> (t * n + a)) & 1) b.mask(t, a) |= std::uint64_t{1} << k;
  }
  b.set_count(count);
}

std::uint64_t word_count(std::size_t atoms, std::size_t len) {
  const std::size_t bits = atoms * len;
  if (bits >= 63) throw std::length_error("enumerate_words: too many words");
  return std::uint64_t{1} << bits;
}

}  // namespace

void for_each_batch(const std::vector<std::string>& atoms, std::size_t stem_len,
                    std::size_t loop_len,
                    const std::function<void(const WordBatch&)>& fn) {
  const std::uint64_t total = word_count(atoms.size(), stem_len + loop_len);
  WordBatch b(atoms, stem_len, loop_len);
  for (std::uint64_t first = 0; first < total; first += 64) {
    fill_batch(b, first, static_cast<std::size_t>(std::min<std::uint64_t>(
                             64, total - first)));
    fn(b);
  }
}

void for_each_word(const std::vector<std::string>& atoms, std::size_t stem_len,
                   std::size_t loop_len,
                   const std::function<void(const LassoWord&)>& fn) {
  for_each_batch(atoms, stem_len, loop_len, [&](const WordBatch& b) {
    for (std::size_t k = 0; k < b.count(); ++k) fn(b.word(k));
  });
}

std::vector<LassoWord> enumerate_words(const std::vector<std::string>& atoms,
                                       std::size_t stem_len,
                                       std::size_t loop_len) {
  std::vector<LassoWord> out;
  for_each_word(atoms, stem_len, loop_len,
                [&](const LassoWord& w) { out.push_back(w); });
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> covering_shapes(
    std::size_t max_stem, std::size_t max_loop) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t l = max_loop / 2 + 1; l <= max_loop; ++l)
    out.emplace_back(max_stem, l);
  return out;
}

std::optional<Mismatch> find_mismatch(const Formula& f, const Formula& g,
                                      const std::vector<std::string>& atoms,
                                      std::size_t max_stem,
                                      std::size_t max_loop,
                                      std::size_t max_pos) {
  std::optional<Mismatch> found;
  for (auto [s, l] : covering_shapes(max_stem, max_loop)) {
    for_each_batch(atoms, s, l, [&](const WordBatch& b) {
      if (found) return;
      auto vf = evaluate(b, f, max_pos + 1);
      auto vg = evaluate(b, g, max_pos + 1);
      for (std::size_t i = 0; i <= max_pos; ++i) {
        if (const std::uint64_t diff = vf[i] ^ vg[i]) {
          found = Mismatch{b.word(std::countr_zero(diff)), i};
          return;
        }
      }
    });
    if (found) break;
  }
  return found;
}

}  // namespace ebr
