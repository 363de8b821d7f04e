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

// Certificate text format. One step per line,
//
//   <id> <rule> (<premise ids>) {<payload>}
//
// and a final `qed <id>`. Ids continue after the input clauses (0..k-1).
// Payloads, by rule:
//
//   res, true, false       {}
//   and_pos, or_neg        {term index}
//   other CNF rules        {term}
//   euf                    {(lemma lit..) eqstep..}
//                            eqstep: (refl t) | (hyp i l r) | (sym k l r)
//                                  | (trans k1 k2 l r) | (cong f (k..) l r)
//   lia                    {(lemma lit..) [(tighten (i c)..)] (farkas (i c).. [(cut c)])}
//   bb_var, bb_add         {term (aux..)}
//   other bit-blast rules  {term}
//   assume                 {lit..}
//
// A literal is `t`, `(not t)`, or `(pos t)` for a positive literal whose atom
// is itself a negation. Indices `i` into a lemma count its literals as
// written; the parser remaps them to canonical clause order and the printer
// writes lemmas in canonical order. Auxiliary names in bb_var/bb_add payloads
// are declared as Bool variables on first use.

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certkernel/certificate.hpp"
#include "certkernel/problem.hpp"
#include "certkernel/sexpr.hpp"

namespace certkernel {

namespace detail {

class CertParser {
 public:
  explicit CertParser(Problem& p) : p_(p), tp_(p.store, p.symbols) {}

  Literal literal(const SExpr& e) {
    if (e.headed("not") && e.size() == 2) return Literal::neg(tp_.formula(e[1]));
    if (e.headed("pos")) {
      if (e.size() != 2) throw ParseError(e.line, e.col, "malformed (pos t) literal");
      return Literal::pos(tp_.formula(e[1]));
    }
    return Literal::pos(tp_.formula(e));
  }

  // Clause plus, for each written literal, its position in the clause.
  std::pair<Clause, std::vector<std::uint32_t>> lemma(const SExpr& e, std::size_t from) {
    std::vector<Literal> written;
    for (std::size_t i = from; i < e.size(); ++i) written.push_back(literal(e[i]));
    Clause c = mk_clause(p_.store, written);
    std::vector<std::uint32_t> where;
    for (Literal l : written) {
      const auto it = std::lower_bound(c.begin(), c.end(), l);
      where.push_back(static_cast<std::uint32_t>(it - c.begin()));
    }
    return {std::move(c), std::move(where)};
  }

  static std::uint32_t index(const SExpr& e, const std::vector<std::uint32_t>& where) {
    const std::uint32_t i = TermParser::small_numeral(e, 1U << 30);
    if (i >= where.size()) throw ParseError(e.line, e.col, "literal index out of range");
    return where[i];
  }

  static BigInt coefficient(const SExpr& e) {
    if (e.is_numeral()) return BigInt(e.text);
    if (e.headed("-") && e.size() == 2 && e[1].is_numeral()) return -BigInt(e[1].text);
    throw ParseError(e.line, e.col, "expected an integer coefficient");
  }

  TermId aux(const SExpr& e) {
    if (!e.is_symbol()) throw ParseError(e.line, e.col, "expected an auxiliary name");
    if (auto v = p_.store.find_var(e.text)) {
      if (!p_.store.sort_of(*v).is_bool())
        throw ParseError(e.line, e.col, "auxiliary '" + e.text + "' is not Boolean");
      return *v;
    }
    if (e.text == "true" || e.text == "false" || p_.symbols.funs.contains(e.text) ||
        p_.symbols.preds.contains(e.text))
      throw ParseError(e.line, e.col, "auxiliary '" + e.text + "' names a function");
    return p_.store.mk_var(e.text, Sort::boolean());
  }

  Payload payload(Rule rule, const SExpr& b) {
    auto count = [&](std::size_t lo, std::size_t hi) {
      if (b.size() < lo || b.size() > hi)
        throw ParseError(b.line, b.col, "wrong payload size for " + std::string(rule_name(rule)));
    };
    if (rule == Rule::Res) {
      count(0, 0);
      return std::monostate{};
    }
    if (is_cnf_rule(rule)) {
      const CnfKind k = cnf_kind_of(rule);
      CnfPayload cp;
      cp.kind = k;
      if (!cnf_uses_target(k)) {
        count(0, 0);
        return cp;
      }
      const std::size_t n = cnf_uses_index(k) ? 2 : 1;
      count(n, n);
      cp.target = tp_.term(b[0]);
      if (n == 2) cp.index = TermParser::small_numeral(b[1], 1U << 30);
      return cp;
    }
    if (rule == Rule::Euf) return euf(b);
    if (rule == Rule::Lia) return lia(b);
    if (is_blast_rule(rule)) {
      const BlastOp op = blast_op_of(rule);
      const bool named = op == BlastOp::Var || op == BlastOp::Add;
      count(named ? 2 : 1, named ? 2 : 1);
      BvPayload bp;
      bp.target = tp_.term(b[0]);
      if (named) {
        if (!b[1].is_list()) throw ParseError(b[1].line, b[1].col, "expected auxiliary names");
        for (const SExpr& a : b[1].items) bp.aux.push_back(aux(a));
      }
      return bp;
    }
    if (rule == Rule::Assume) return AssumePayload{lemma(b, 0).first};
    throw ParseError(b.line, b.col, "rule cannot appear in a certificate");
  }

  EufPayload euf(const SExpr& b) {
    if (b.size() < 1 || !b[0].headed("lemma"))
      throw ParseError(b.line, b.col, "euf payload must start with (lemma ...)");
    auto [clause, where] = lemma(b[0], 1);
    EufPayload ep;
    ep.lemma = std::move(clause);
    for (std::size_t i = 1; i < b.size(); ++i) {
      const SExpr& s = b[i];
      if (!s.is_list() || s.size() == 0 || !s[0].is_symbol())
        throw ParseError(s.line, s.col, "expected an equality step");
      const std::string& r = s[0].text;
      auto need = [&](std::size_t n) {
        if (s.size() != n) throw ParseError(s.line, s.col, "malformed (" + r + " ...) step");
      };
      auto ref = [&](const SExpr& x) { return TermParser::small_numeral(x, 1U << 30); };
      EqStep st;
      if (r == "refl") {
        need(2);
        st.rule = EqRule::Refl;
        st.lhs = st.rhs = tp_.term(s[1]);
      } else if (r == "hyp") {
        need(4);
        st.rule = EqRule::Hyp;
        st.refs = {index(s[1], where)};
        st.lhs = tp_.term(s[2]);
        st.rhs = tp_.term(s[3]);
      } else if (r == "sym") {
        need(4);
        st.rule = EqRule::Sym;
        st.refs = {ref(s[1])};
        st.lhs = tp_.term(s[2]);
        st.rhs = tp_.term(s[3]);
      } else if (r == "trans") {
        need(5);
        st.rule = EqRule::Trans;
        st.refs = {ref(s[1]), ref(s[2])};
        st.lhs = tp_.term(s[3]);
        st.rhs = tp_.term(s[4]);
      } else if (r == "cong") {
        need(5);
        st.rule = EqRule::Cong;
        if (!s[1].is_symbol()) throw ParseError(s[1].line, s[1].col, "expected a function name");
        auto f = p_.symbols.funs.find(s[1].text);
        if (f == p_.symbols.funs.end())
          throw ParseError(s[1].line, s[1].col, "unknown function '" + s[1].text + "'");
        st.fun = f->second;
        if (!s[2].is_list()) throw ParseError(s[2].line, s[2].col, "expected step references");
        for (const SExpr& x : s[2].items) st.refs.push_back(ref(x));
        st.lhs = tp_.term(s[3]);
        st.rhs = tp_.term(s[4]);
      } else {
        throw ParseError(s[0].line, s[0].col, "unknown equality rule '" + r + "'");
      }
      ep.justification.push_back(std::move(st));
    }
    return ep;
  }

  LiaPayload lia(const SExpr& b) {
    if (b.size() < 2 || b.size() > 3 || !b[0].headed("lemma"))
      throw ParseError(b.line, b.col, "lia payload is (lemma ...) [(tighten ...)] (farkas ...)");
    auto [clause, where] = lemma(b[0], 1);
    LiaPayload lp;
    lp.lemma = std::move(clause);
    auto terms = [&](const SExpr& list, bool allow_cut) {
      std::vector<FarkasTerm> out;
      for (std::size_t i = 1; i < list.size(); ++i) {
        const SExpr& t = list[i];
        if (!t.is_list() || t.size() != 2) throw ParseError(t.line, t.col, "expected (row coefficient)");
        FarkasTerm ft;
        if (t[0].is_symbol("cut")) {
          if (!allow_cut) throw ParseError(t.line, t.col, "cut row inside tighten");
          ft.row = kCutRow;
        } else {
          ft.row = index(t[0], where);
        }
        ft.coeff = coefficient(t[1]);
        out.push_back(std::move(ft));
      }
      return out;
    };
    if (b.size() == 3) {
      if (!b[1].headed("tighten")) throw ParseError(b[1].line, b[1].col, "expected (tighten ...)");
      lp.tighten = terms(b[1], false);
    }
    const SExpr& f = b[b.size() - 1];
    if (!f.headed("farkas")) throw ParseError(f.line, f.col, "expected (farkas ...)");
    lp.combination = terms(f, true);
    return lp;
  }

  Certificate certificate(std::string_view src) {
    Certificate cert;
    const std::size_t k = p_.inputs.size();
    SExprReader reader(src);
    SExpr e;
    while (reader.next(e)) {
      if (cert.qed) throw ParseError(e.line, e.col, "text after qed");
      if (e.is_symbol("qed")) {
        SExpr id;
        if (!reader.next(id) || !id.is_numeral())
          throw ParseError(e.line, e.col, "qed needs a clause id");
        const std::uint32_t q = TermParser::small_numeral(id, 0x7fffffffU);
        if (q >= k + cert.steps.size())
          throw ReferenceError(id.line, id.col, "qed names undefined clause " + id.text);
        cert.qed = q;
        continue;
      }
      if (!e.is_numeral()) throw ParseError(e.line, e.col, "expected a step id or qed");
      const std::uint32_t id = TermParser::small_numeral(e, 0x7fffffffU);
      if (id != k + cert.steps.size())
        throw ParseError(e.line, e.col, "expected step id " + std::to_string(k + cert.steps.size()));
      SExpr rule_e, prem, body;
      if (!reader.next(rule_e) || !rule_e.is_symbol())
        throw ParseError(e.line, e.col, "expected a rule name");
      const auto rule = rule_from_name(rule_e.text);
      if (!rule || *rule == Rule::Input)
        throw ParseError(rule_e.line, rule_e.col, "unknown rule '" + rule_e.text + "'");
      if (!reader.next(prem) || !prem.is_list())
        throw ParseError(rule_e.line, rule_e.col, "expected a premise list");
      if (!reader.next(body) || body.type != SExpr::Type::Brace)
        throw ParseError(prem.line, prem.col, "expected a {payload}");
      Step s;
      s.id = id;
      s.rule = *rule;
      for (const SExpr& x : prem.items) {
        if (!x.is_numeral()) throw ParseError(x.line, x.col, "expected a premise id");
        const std::uint32_t pid = TermParser::small_numeral(x, 0x7fffffffU);
        if (pid >= id)
          throw ReferenceError(x.line, x.col, "premise " + x.text + " is not an earlier clause");
        s.premises.push_back(pid);
      }
      s.payload = payload(*rule, body);
      cert.steps.push_back(std::move(s));
    }
    if (!cert.qed) throw ParseError(reader.line(), reader.col(), "missing qed");
    return cert;
  }

 private:
  Problem& p_;
  TermParser tp_;
};

inline std::string print_literal(const TermStore& store, Literal l) {
  const std::string t = to_string(store, l.atom());
  if (l.negative()) return "(not " + t + ")";
  if (store.kind(l.atom()) == Kind::Not) return "(pos " + t + ")";
  return t;
}

inline std::string print_coeff(const BigInt& c) {
  return c < 0 ? "(- " + BigInt(-c).str() + ")" : c.str();
}

inline std::string print_lits(const TermStore& store, const Clause& c) {
  std::string out;
  for (Literal l : c) {
    if (!out.empty()) out += ' ';
    out += print_literal(store, l);
  }
  return out;
}

inline std::string print_terms(const std::vector<FarkasTerm>& ts) {
  std::string out;
  for (const FarkasTerm& ft : ts)
    out += " (" + (ft.row == kCutRow ? std::string("cut") : std::to_string(ft.row)) + " " +
           print_coeff(ft.coeff) + ")";
  return out;
}

inline std::string print_payload(const TermStore& store, Rule rule, const Payload& p) {
  struct V {
    const TermStore& s;
    Rule rule;
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const CnfPayload& c) const {
      if (!cnf_uses_target(c.kind)) return "";
      std::string out = to_string(s, c.target);
      if (cnf_uses_index(c.kind)) out += " " + std::to_string(c.index);
      return out;
    }
    std::string operator()(const EufPayload& e) const {
      std::string out = "(lemma";
      if (!e.lemma.empty()) out += " " + print_lits(s, e.lemma);
      out += ")";
      for (const EqStep& st : e.justification) {
        const std::string lr = to_string(s, st.lhs) + " " + to_string(s, st.rhs);
        auto r = [&](std::size_t i) { return std::to_string(i < st.refs.size() ? st.refs[i] : 0); };
        switch (st.rule) {
          case EqRule::Refl: out += " (refl " + to_string(s, st.lhs) + ")"; break;
          case EqRule::Hyp: out += " (hyp " + r(0) + " " + lr + ")"; break;
          case EqRule::Sym: out += " (sym " + r(0) + " " + lr + ")"; break;
          case EqRule::Trans: out += " (trans " + r(0) + " " + r(1) + " " + lr + ")"; break;
          case EqRule::Cong: {
            out += " (cong " + s.fun(st.fun).name + " (";
            for (std::size_t i = 0; i < st.refs.size(); ++i) out += (i ? " " : "") + r(i);
            out += ") " + lr + ")";
            break;
          }
        }
      }
      return out;
    }
    std::string operator()(const LiaPayload& l) const {
      std::string out = "(lemma";
      if (!l.lemma.empty()) out += " " + print_lits(s, l.lemma);
      out += ")";
      if (l.tighten) out += " (tighten" + print_terms(*l.tighten) + ")";
      out += " (farkas" + print_terms(l.combination) + ")";
      return out;
    }
    std::string operator()(const BvPayload& b) const {
      std::string out = to_string(s, b.target);
      const bool named = rule == Rule::BbVar || rule == Rule::BbAdd;
      if (named || !b.aux.empty()) {
        out += " (";
        for (std::size_t i = 0; i < b.aux.size(); ++i) out += (i ? " " : "") + to_string(s, b.aux[i]);
        out += ")";
      }
      return out;
    }
    std::string operator()(const AssumePayload& a) const { return print_lits(s, a.clause); }
  };
  return std::visit(V{store, rule}, p);
}

}  // namespace detail

/// Parses a certificate against `problem`, interning payload terms into its
/// store. Throws ParseError, UnsupportedError or ReferenceError.
inline Certificate parse_certificate(std::string_view src, Problem& problem) {
  try {
    return detail::CertParser(problem).certificate(src);
  } catch (const SortError& e) {
    throw ParseError(0, 0, e.what());
  }
}

/// Prints `cert` so that parse_certificate reads it back unchanged.
inline std::string print_certificate(const TermStore& store, const Certificate& cert) {
  std::string out;
  for (const Step& s : cert.steps) {
    out += std::to_string(s.id) + " " + std::string(rule_name(s.rule)) + " (";
    for (std::size_t i = 0; i < s.premises.size(); ++i)
      out += (i ? " " : "") + std::to_string(s.premises[i]);
    out += ") {" + detail::print_payload(store, s.rule, s.payload) + "}\n";
  }
  if (cert.qed) out += "qed " + std::to_string(*cert.qed) + "\n";
  return out;
}

}  // namespace certkernel
