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

// SMT-LIB 2 problem files, restricted to the quantifier-free fragment the
// checkers understand. Each assertion becomes the unit input clause
// [pos assertion]; clausification is left to the certificate.

#include <string>
#include <string_view>

#include "certkernel/problem.hpp"
#include "certkernel/sexpr.hpp"

namespace certkernel {

namespace detail {

inline void check_user_name(const SExpr& e) {
  if (!e.is_symbol()) throw ParseError(e.line, e.col, "expected a symbol");
  if (e.text.find('@') != std::string::npos)
    throw ParseError(e.line, e.col, "symbols containing '@' are reserved");
  if (e.text == "true" || e.text == "false")
    throw ParseError(e.line, e.col, "cannot redeclare '" + e.text + "'");
}

inline void declare(Problem& p, TermParser& tp, const SExpr& name, const std::vector<Sort>& args,
                    const Sort& ret) {
  check_user_name(name);
  const std::string& n = name.text;
  if (p.symbols.consts.contains(n) || p.symbols.funs.contains(n) || p.symbols.preds.contains(n))
    throw ParseError(name.line, name.col, "symbol '" + n + "' already declared");
  for (const Sort& s : args)
    if (s.is_bool()) throw UnsupportedError(name.line, name.col, "Boolean function argument");
  if (args.empty()) {
    p.symbols.consts.emplace(n, p.store.mk_var(n, ret));
  } else if (ret.is_bool()) {
    tp.declare_predicate(n, args);
  } else {
    p.symbols.funs.emplace(n, p.store.declare_fun(FunSym{n, args, ret}));
  }
}

}  // namespace detail

/// Parses an SMT-LIB 2 script. Without `set-logic` the logic defaults to
/// QF_UFLIA; only the declared fragment is checked syntactically, not the
/// logic's theory restrictions.
inline Problem parse_smt2(std::string_view src) {
  Problem p;
  TermParser tp(p.store, p.symbols);
  SExprReader reader(src);
  SExpr cmd;
  bool logic_set = false;
  while (reader.next(cmd)) {
    if (!cmd.is_list() || cmd.size() == 0 || !cmd[0].is_symbol())
      throw ParseError(cmd.line, cmd.col, "expected a command");
    const std::string& name = cmd[0].text;
    auto arity = [&](std::size_t n) {
      if (cmd.size() != n + 1)
        throw ParseError(cmd.line, cmd.col, "wrong number of arguments to '" + name + "'");
    };
    if (name == "set-logic") {
      arity(1);
      if (logic_set) throw ParseError(cmd.line, cmd.col, "logic already set");
      const SExpr& l = cmd[1];
      if (l.is_symbol("QF_UF")) p.logic = Logic::QF_UF;
      else if (l.is_symbol("QF_LIA")) p.logic = Logic::QF_LIA;
      else if (l.is_symbol("QF_BV")) p.logic = Logic::QF_BV;
      else if (l.is_symbol("QF_UFLIA")) p.logic = Logic::QF_UFLIA;
      else throw UnsupportedError(l.line, l.col, "logic '" + l.text + "'");
      logic_set = true;
    } else if (name == "set-info" || name == "set-option" || name == "check-sat" ||
               name == "get-model" || name == "get-proof" || name == "get-info") {
      continue;
    } else if (name == "exit") {
      break;
    } else if (name == "declare-sort") {
      if (cmd.size() != 2 && cmd.size() != 3)
        throw ParseError(cmd.line, cmd.col, "wrong number of arguments to 'declare-sort'");
      detail::check_user_name(cmd[1]);
      if (cmd.size() == 3 && !(cmd[2].is_numeral() && cmd[2].text == "0"))
        throw UnsupportedError(cmd[2].line, cmd[2].col, "parametric sort");
      const std::string& s = cmd[1].text;
      if (s == "Bool" || s == "Int" || s == "Real" || p.symbols.sorts.contains(s))
        throw ParseError(cmd[1].line, cmd[1].col, "sort '" + s + "' already declared");
      p.symbols.sorts.emplace(s, Sort::uninterpreted(s));
    } else if (name == "declare-fun") {
      arity(3);
      if (!cmd[2].is_list()) throw ParseError(cmd[2].line, cmd[2].col, "expected argument sorts");
      std::vector<Sort> args;
      for (const SExpr& s : cmd[2].items) args.push_back(tp.sort(s));
      detail::declare(p, tp, cmd[1], args, tp.sort(cmd[3]));
    } else if (name == "declare-const") {
      arity(2);
      detail::declare(p, tp, cmd[1], {}, tp.sort(cmd[2]));
    } else if (name == "assert") {
      arity(1);
      const TermId t = tp.formula(cmd[1]);
      p.assertions.push_back(t);
      p.inputs.push_back(Clause::from_sorted({Literal::pos(t)}));
    } else if (name == "define-fun" || name == "define-sort" || name == "define-fun-rec" ||
               name == "declare-datatypes" || name == "push" || name == "pop" ||
               name == "reset" || name == "check-sat-assuming") {
      throw UnsupportedError(cmd.line, cmd.col, "command '" + name + "'");
    } else {
      throw ParseError(cmd[0].line, cmd[0].col, "unknown command '" + name + "'");
    }
  }
  return p;
}

}  // namespace certkernel
