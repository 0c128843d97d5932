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

#include "ebr/benchmarks.hpp"

#include <stdexcept>
#include <vector>

namespace ebr {

namespace {

std::string num(unsigned i) { return std::to_string(i); }

}  // namespace

std::string benchmark_formula(unsigned family, unsigned n) {
  if (n == 0) throw std::invalid_argument("benchmark: n must be at least 1");
  std::string out;
  switch (family) {
    case 1: {
      out = "c" + num(n) + " & u";
      for (unsigned i = n; i-- > 0;)
        out = "c" + num(i) + " & X G(" + out + ")";
      return "G(" + out + ")";
    }
    case 2: {
      out = "c" + num(n) + " | u" + num(n);
      for (unsigned i = n; i-- > 0;)
        out = "(c" + num(i) + " | u" + num(i) + ") & X G(" + out + ")";
      return "G(" + out + ")";
    }
    case 3: {
      std::string disj;
      for (unsigned i = 1; i <= n; ++i)
        disj += (i > 1 ? " | " : "") + std::string("G(u") + num(i) + ")";
      return "G(c) & " + (n > 1 ? "(" + disj + ")" : disj);
    }
    case 4: {
      out = "c";
      for (unsigned i = 1; i <= n; ++i)
        out += " & " + std::string(i, 'X') + "(u" + num(i) + " | u" +
               num(i + 1) + ")";
      return out;
    }
    default:
      throw std::invalid_argument("benchmark: family must be 1, 2, 3 or 4");
  }
}

std::string benchmark_spec(unsigned family, unsigned n) {
  const std::string formula = benchmark_formula(family, n);
  std::vector<std::string> u, c;
  switch (family) {
    case 1:
      u.push_back("u");
      for (unsigned i = 0; i <= n; ++i) c.push_back("c" + num(i));
      break;
    case 2:
      for (unsigned i = 0; i <= n; ++i) u.push_back("u" + num(i));
      for (unsigned i = 0; i <= n; ++i) c.push_back("c" + num(i));
      break;
    case 3:
      for (unsigned i = 1; i <= n; ++i) u.push_back("u" + num(i));
      c.push_back("c");
      break;
    default:
      for (unsigned i = 1; i <= n + 1; ++i) u.push_back("u" + num(i));
      c.push_back("c");
      break;
  }
  std::string out = ".inputs";
  for (const auto& x : u) out += " " + x;
  out += "\n.outputs";
  for (const auto& x : c) out += " " + x;
  return out + "\n" + formula + "\n";
}

}  // namespace ebr
