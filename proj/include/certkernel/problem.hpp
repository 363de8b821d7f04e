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

// Parsed problems and the SMT-LIB term parser shared by the problem and
// certificate frontends.
//
// Uninterpreted predicates are not first-class: `p : U -> Bool` is declared
// as the function `p@fn : U -> @Pred` and `(p a)` reads as
// `(= (p@fn a) @tt)`, so EUF only ever sees equalities.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certkernel/core.hpp"
#include "certkernel/errors.hpp"
#include "certkernel/sexpr.hpp"

namespace certkernel {

enum class Logic : std::uint8_t { SAT, QF_UF, QF_LIA, QF_BV, QF_UFLIA };

inline std::string_view logic_name(Logic l) {
  switch (l) {
    case Logic::SAT: return "SAT";
    case Logic::QF_UF: return "QF_UF";
    case Logic::QF_LIA: return "QF_LIA";
    case Logic::QF_BV: return "QF_BV";
    case Logic::QF_UFLIA: return "QF_UFLIA";
  }
  return "?";
}

inline constexpr std::string_view kPredSort = "@Pred";
inline constexpr std::string_view kPredTrue = "@tt";
inline constexpr std::string_view kPredSuffix = "@fn";

struct Symbols {
  std::map<std::string, Sort> sorts;     // declared uninterpreted sorts
  std::map<std::string, TermId> consts;  // nullary symbols
  std::map<std::string, FunId> funs;     // functions, including encoded predicates
  std::map<std::string, FunId> preds;    // predicate name -> its encoding function
};

struct Problem {
  Logic logic = Logic::QF_UFLIA;
  TermStore store;
  Symbols symbols;
  std::vector<TermId> assertions;
  std::vector<Clause> inputs;        // one unit clause per assertion, or the DIMACS clauses
  std::vector<TermId> dimacs_vars;   // DIMACS variable i + 1
};

/// Converts SMT-LIB terms and sorts into the store. Unknown symbols are
/// looked up among existing variables last, so names introduced by earlier
/// certificate steps resolve.
class TermParser {
 public:
  TermParser(TermStore& store, Symbols& symbols) : store_(store), syms_(symbols) {}

  Sort sort(const SExpr& e) const {
    if (e.is_symbol("Bool")) return Sort::boolean();
    if (e.is_symbol("Int")) return Sort::integer();
    if (e.is_symbol("Real")) throw UnsupportedError(e.line, e.col, "real arithmetic");
    if (e.is_symbol()) {
      auto it = syms_.sorts.find(e.text);
      if (it == syms_.sorts.end()) throw ParseError(e.line, e.col, "unknown sort '" + e.text + "'");
      return it->second;
    }
    if (e.headed("_") && e.size() == 3 && e[1].is_symbol("BitVec") && e[2].is_numeral()) {
      const std::uint32_t w = small_numeral(e[2], 1U << 16);
      if (w == 0) throw ParseError(e.line, e.col, "bit-vector width must be at least 1");
      return Sort::bitvec(w);
    }
    if (e.headed("Array")) throw UnsupportedError(e.line, e.col, "arrays");
    throw ParseError(e.line, e.col, "malformed sort");
  }

  TermId term(const SExpr& e) {
    try {
      return term_impl(e);
    } catch (const SortError& err) {
      throw ParseError(e.line, e.col, err.what());
    }
  }

  TermId formula(const SExpr& e) {
    const TermId t = term(e);
    if (!store_.sort_of(t).is_bool()) throw ParseError(e.line, e.col, "expected a Boolean term");
    return t;
  }

  /// Registers the encoding of predicate `name` over `args`.
  FunId declare_predicate(const std::string& name, std::vector<Sort> args) {
    const Sort pred = Sort::uninterpreted(std::string(kPredSort));
    if (!syms_.consts.contains(std::string(kPredTrue)))
      syms_.consts.emplace(std::string(kPredTrue), store_.mk_var(std::string(kPredTrue), pred));
    const std::string fn = name + std::string(kPredSuffix);
    const FunId f = store_.declare_fun(FunSym{fn, std::move(args), pred});
    syms_.funs[fn] = f;
    syms_.preds[name] = f;
    return f;
  }

  static std::uint32_t small_numeral(const SExpr& e, std::uint32_t limit) {
    if (!e.is_numeral() || e.text.size() > 9 || std::stoul(e.text) > limit)
      throw ParseError(e.line, e.col, "expected a numeral up to " + std::to_string(limit));
    return static_cast<std::uint32_t>(std::stoul(e.text));
  }

 private:
  using Args = std::vector<TermId>;

  static bool unsupported_op(std::string_view op) {
    static constexpr std::string_view kOps[] = {
        "div",    "mod",    "abs",    "/",      "to_real", "to_int", "is_int", "bvmul",  "bvudiv",
        "bvurem", "bvsdiv", "bvsrem", "bvsmod", "bvshl",   "bvlshr", "bvashr", "bvneg",  "bvsub",
        "concat", "extract", "bvule", "bvugt",  "bvuge",   "bvslt",  "bvsle",  "bvsgt",  "bvsge",
        "bvnand", "bvnor",  "bvxnor", "bvcomp", "repeat",  "zero_extend", "sign_extend",
        "rotate_left", "rotate_right", "select", "store",  "match",
    };
    for (auto o : kOps)
      if (o == op) return true;
    return false;
  }

  TermId lookup(const SExpr& e) {
    for (auto s = lets_.rbegin(); s != lets_.rend(); ++s)
      if (auto it = s->find(e.text); it != s->end()) return it->second;
    if (auto it = syms_.consts.find(e.text); it != syms_.consts.end()) return it->second;
    if (e.text == "true") return kTrue;
    if (e.text == "false") return kFalse;
    if (auto v = store_.find_var(e.text)) return *v;
    if (syms_.funs.contains(e.text) || syms_.preds.contains(e.text))
      throw ParseError(e.line, e.col, "function '" + e.text + "' used without arguments");
    throw ParseError(e.line, e.col, "unknown symbol '" + e.text + "'");
  }

  static std::vector<bool> bits_of(const SExpr& e) {
    std::vector<bool> bits;
    if (e.type == SExpr::Type::Binary) {
      for (auto i = e.text.size(); i-- > 0;) bits.push_back(e.text[i] == '1');
    } else {
      for (auto i = e.text.size(); i-- > 0;) {
        const int v = std::stoi(std::string(1, e.text[i]), nullptr, 16);
        for (int b = 0; b < 4; ++b) bits.push_back(((v >> b) & 1) != 0);
      }
    }
    if (bits.size() > (1U << 16)) throw ParseError(e.line, e.col, "bit-vector literal too wide");
    return bits;
  }

  TermId chain(Kind k, const Args& a) {
    if (a.size() == 2) return store_.mk(k, a);
    Args parts;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) parts.push_back(store_.mk(k, {a[i], a[i + 1]}));
    return store_.mk(Kind::And, parts);
  }

  TermId left_fold(Kind k, const Args& a) {
    TermId acc = a[0];
    for (std::size_t i = 1; i < a.size(); ++i) acc = store_.mk(k, {acc, a[i]});
    return acc;
  }

  TermId equal(TermId a, TermId b) {
    const bool boolean = store_.sort_of(a).is_bool();
    return store_.mk(boolean ? Kind::Iff : Kind::Eq, {a, b});
  }

  TermId term_impl(const SExpr& e) {
    switch (e.type) {
      case SExpr::Type::Symbol: return lookup(e);
      case SExpr::Type::Numeral: return store_.mk_int(BigInt(e.text));
      case SExpr::Type::Binary:
      case SExpr::Type::Hex:
        if (e.text.empty()) throw ParseError(e.line, e.col, "empty bit-vector literal");
        return store_.mk_bv(bits_of(e));
      case SExpr::Type::Decimal: throw UnsupportedError(e.line, e.col, "real arithmetic");
      case SExpr::Type::Keyword:
      case SExpr::Type::String:
      case SExpr::Type::Brace: throw ParseError(e.line, e.col, "expected a term");
      case SExpr::Type::List: break;
    }
    if (e.size() == 0) throw ParseError(e.line, e.col, "empty application");
    const SExpr& head = e[0];
    if (head.headed("_")) throw UnsupportedError(head.line, head.col, "indexed operator");
    if (e.headed("_")) {
      // (_ bvN w)
      if (e.size() == 3 && e[1].is_symbol() && e[1].text.starts_with("bv") && e[2].is_numeral()) {
        const std::string digits = e[1].text.substr(2);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError(e.line, e.col, "malformed bit-vector literal");
        const std::uint32_t w = small_numeral(e[2], 1U << 16);
        if (w == 0) throw ParseError(e.line, e.col, "bit-vector width must be at least 1");
        BigInt v(digits);
        std::vector<bool> bits(w);
        for (std::uint32_t i = 0; i < w; ++i) bits[i] = bit_test(v, i);
        return store_.mk_bv(std::move(bits));
      }
      throw UnsupportedError(e.line, e.col, "indexed term");
    }
    if (!head.is_symbol()) throw ParseError(head.line, head.col, "expected an operator");
    const std::string& op = head.text;

    if (op == "let") return let(e);
    if (op == "forall" || op == "exists") throw UnsupportedError(e.line, e.col, "quantifier");
    if (op == "!") throw UnsupportedError(e.line, e.col, "annotation");

    Args a;
    a.reserve(e.size() - 1);
    for (std::size_t i = 1; i < e.size(); ++i) a.push_back(term_impl(e[i]));
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (a.size() < lo || a.size() > hi)
        throw ParseError(e.line, e.col, "wrong number of arguments to '" + op + "'");
    };
    constexpr std::size_t kMany = static_cast<std::size_t>(-1);

    if (op == "not") return arity(1, 1), store_.mk_not(a[0]);
    if (op == "and") return arity(1, kMany), store_.mk(Kind::And, a);
    if (op == "or") return arity(1, kMany), store_.mk(Kind::Or, a);
    if (op == "=>") {
      arity(2, kMany);
      TermId acc = a.back();
      for (std::size_t i = a.size() - 1; i-- > 0;) acc = store_.mk(Kind::Implies, {a[i], acc});
      return acc;
    }
    if (op == "xor") return arity(2, kMany), left_fold(Kind::Xor, a);
    if (op == "ite") return arity(3, 3), store_.mk(Kind::Ite, a);
    if (op == "=") {
      arity(2, kMany);
      if (a.size() == 2) return equal(a[0], a[1]);
      Args parts;
      for (std::size_t i = 0; i + 1 < a.size(); ++i) parts.push_back(equal(a[i], a[i + 1]));
      return store_.mk(Kind::And, parts);
    }
    if (op == "distinct") {
      arity(2, kMany);
      Args parts;
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) parts.push_back(store_.mk_not(equal(a[i], a[j])));
      return parts.size() == 1 ? parts[0] : store_.mk(Kind::And, parts);
    }
    if (op == "<=") return arity(2, kMany), chain(Kind::Le, a);
    if (op == "<") return arity(2, kMany), chain(Kind::Lt, a);
    if (op == ">=" || op == ">") {
      arity(2, kMany);
      Args rev(a.rbegin(), a.rend());
      return chain(op == ">=" ? Kind::Le : Kind::Lt, rev);
    }
    if (op == "+") {
      arity(1, kMany);
      return a.size() == 1 ? a[0] : store_.mk(Kind::Add, a);
    }
    if (op == "-") {
      arity(1, kMany);
      if (a.size() == 1) {
        if (e[1].is_numeral()) return store_.mk_int(-BigInt(e[1].text));
        return store_.mk(Kind::Neg, a);
      }
      return left_fold(Kind::Sub, a);
    }
    if (op == "*") {
      arity(2, kMany);
      std::size_t symbolic = 0;
      for (TermId t : a)
        if (store_.kind(t) != Kind::IntConst) ++symbolic;
      if (symbolic > 1) throw UnsupportedError(e.line, e.col, "nonlinear multiplication");
      return left_fold(Kind::Mul, a);
    }
    if (op == "bvnot") return arity(1, 1), store_.mk(Kind::BvNot, a);
    if (op == "bvand") return arity(2, kMany), left_fold(Kind::BvAnd, a);
    if (op == "bvor") return arity(2, kMany), left_fold(Kind::BvOr, a);
    if (op == "bvxor") return arity(2, kMany), left_fold(Kind::BvXor, a);
    if (op == "bvadd") return arity(2, kMany), left_fold(Kind::BvAdd, a);
    if (op == "bvult") return arity(2, 2), store_.mk(Kind::BvUlt, a);

    if (auto p = syms_.preds.find(op); p != syms_.preds.end()) {
      const TermId app = store_.mk_app(p->second, a);
      return store_.mk(Kind::Eq, {app, syms_.consts.at(std::string(kPredTrue))});
    }
    if (auto f = syms_.funs.find(op); f != syms_.funs.end()) return store_.mk_app(f->second, a);
    if (unsupported_op(op)) throw UnsupportedError(head.line, head.col, "operator '" + op + "'");
    throw ParseError(head.line, head.col, "unknown function '" + op + "'");
  }

  TermId let(const SExpr& e) {
    if (e.size() != 3 || !e[1].is_list())
      throw ParseError(e.line, e.col, "malformed let");
    std::map<std::string, TermId> scope;
    for (const SExpr& b : e[1].items) {
      if (!b.is_list() || b.size() != 2 || !b[0].is_symbol())
        throw ParseError(b.line, b.col, "malformed let binding");
      if (scope.contains(b[0].text))
        throw ParseError(b[0].line, b[0].col, "duplicate let binding '" + b[0].text + "'");
      scope.emplace(b[0].text, term_impl(b[1]));
    }
    lets_.push_back(std::move(scope));
    struct Pop {
      std::vector<std::map<std::string, TermId>>& s;
      ~Pop() { s.pop_back(); }
    } pop{lets_};
    return term_impl(e[2]);
  }

  TermStore& store_;
  Symbols& syms_;
  std::vector<std::map<std::string, TermId>> lets_;
};

}  // namespace certkernel
