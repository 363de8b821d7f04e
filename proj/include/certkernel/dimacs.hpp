// Copyright 2026 The certkernel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// DIMACS CNF. Variable i is the Bool variable `xi`; certificates refer to it
// by that name.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "certkernel/problem.hpp"

namespace certkernel {

inline constexpr std::int64_t kMaxDimacsVars = 1 << 24;

/// Parses `p cnf V C` followed by exactly C zero-terminated clauses.
/// Comment lines start with `c`; a trailing `%` line (SATLIB style) ends input.
inline Problem parse_dimacs(std::string_view src) {
  Problem p;
  p.logic = Logic::SAT;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  auto at_end = [&] { return pos >= src.size(); };
  auto bump = [&] {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  };
  auto skip_line = [&] {
    while (!at_end() && src[pos] != '\n') bump();
  };
  auto skip_blank = [&] {
    for (;;) {
      while (!at_end() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' ||
                           src[pos] == '\n'))
        bump();
      if (!at_end() && src[pos] == 'c' && col == 1) {
        skip_line();
        continue;
      }
      return;
    }
  };
  struct Token {
    std::string_view text;
    std::size_t line, col;
  };
  auto token = [&]() -> Token {
    skip_blank();
    const std::size_t start = pos;
    Token t{{}, line, col};
    while (!at_end() && src[pos] != ' ' && src[pos] != '\t' && src[pos] != '\r' && src[pos] != '\n')
      bump();
    t.text = src.substr(start, pos - start);
    return t;
  };
  auto integer = [&](const Token& t, const char* what) -> std::int64_t {
    std::int64_t v = 0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (t.text.empty() || ec != std::errc() || ptr != e)
      throw ParseError(t.line, t.col, std::string("expected ") + what);
    return v;
  };

  const Token ph = token();
  if (ph.text != "p") throw ParseError(ph.line, ph.col, "expected 'p cnf' header");
  const Token fmt = token();
  if (fmt.text != "cnf") throw ParseError(fmt.line, fmt.col, "expected 'cnf'");
  const Token vt = token();
  const std::int64_t nv = integer(vt, "variable count");
  if (nv < 0 || nv > kMaxDimacsVars) throw ParseError(vt.line, vt.col, "variable count out of range");
  const Token ct = token();
  const std::int64_t nc = integer(ct, "clause count");
  if (nc < 0) throw ParseError(ct.line, ct.col, "clause count out of range");
  const std::size_t header_line = ph.line;

  p.dimacs_vars.reserve(static_cast<std::size_t>(nv));
  for (std::int64_t i = 1; i <= nv; ++i) {
    const std::string name = "x" + std::to_string(i);
    const TermId v = p.store.mk_var(name, Sort::boolean());
    p.dimacs_vars.push_back(v);
    p.symbols.consts.emplace(name, v);
  }

  std::vector<Literal> lits;
  bool open = false;
  Token last{};
  for (;;) {
    skip_blank();
    if (at_end() || src[pos] == '%') break;
    const Token t = token();
    if (t.line == header_line) throw ParseError(t.line, t.col, "unexpected token after header");
    last = t;
    const std::int64_t v = integer(t, "a literal");
    if (v == 0) {
      if (static_cast<std::int64_t>(p.inputs.size()) >= nc)
        throw ParseError(t.line, t.col, "more clauses than declared");
      p.inputs.push_back(mk_clause(p.store, lits));
      lits.clear();
      open = false;
      continue;
    }
    if (v < -nv || v > nv) throw ParseError(t.line, t.col, "literal out of range");
    const TermId atom = p.dimacs_vars[static_cast<std::size_t>((v < 0 ? -v : v) - 1)];
    lits.push_back(Literal::make(atom, v < 0));
    open = true;
  }
  if (open) throw ParseError(last.line, last.col, "clause not terminated by 0");
  if (static_cast<std::int64_t>(p.inputs.size()) != nc)
    throw ParseError(line, col, "expected " + std::to_string(nc) + " clauses, found " +
                                    std::to_string(p.inputs.size()));
  return p;
}

/// Prints the input clauses of a DIMACS problem in canonical literal order.
inline std::string print_dimacs(const Problem& p) {
  std::unordered_map<TermId, std::size_t> index;
  for (std::size_t i = 0; i < p.dimacs_vars.size(); ++i) index.emplace(p.dimacs_vars[i], i + 1);
  std::string out =
      "p cnf " + std::to_string(p.dimacs_vars.size()) + " " + std::to_string(p.inputs.size()) + "\n";
  for (const Clause& c : p.inputs) {
    for (Literal l : c) {
      if (l.negative()) out += '-';
      out += std::to_string(index.at(l.atom()));
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

}  // namespace certkernel
