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

#include <gtest/gtest.h>

#include <random>

#include "certkernel/certificate_io.hpp"
#include "certkernel/dimacs.hpp"
#include "certkernel/kernel.hpp"
#include "certkernel/sexpr.hpp"
#include "certkernel/smt2.hpp"
#include "generators.hpp"
#include "prover.hpp"

namespace certkernel {
namespace {

TEST(SExpr, Atoms) {
  SExprReader r("(a |b c| #b01 #x0f 12 \"s\"\"t\" :k {x}) ; comment\n");
  SExpr e;
  ASSERT_TRUE(r.next(e));
  ASSERT_EQ(e.size(), 8u);
  EXPECT_TRUE(e[0].is_symbol("a"));
  EXPECT_TRUE(e[1].is_symbol("b c"));
  EXPECT_EQ(e[2].type, SExpr::Type::Binary);
  EXPECT_EQ(e[3].type, SExpr::Type::Hex);
  EXPECT_TRUE(e[4].is_numeral());
  EXPECT_EQ(e[5].type, SExpr::Type::String);
  EXPECT_EQ(e[6].type, SExpr::Type::Keyword);
  EXPECT_EQ(e[7].type, SExpr::Type::Brace);
  EXPECT_FALSE(r.next(e));
}

TEST(SExpr, Errors) {
  SExpr e;
  EXPECT_THROW(SExprReader("(a").next(e), ParseError);
  EXPECT_THROW(SExprReader(")").next(e), ParseError);
  EXPECT_THROW(SExprReader("007").next(e), ParseError);
  EXPECT_THROW(SExprReader("\"open").next(e), ParseError);
  EXPECT_THROW(SExprReader(std::string(5000, '(')).next(e), ParseError);
  try {
    SExprReader("\n\n  )").next(e);
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 3u);
    EXPECT_EQ(err.col(), 3u);
  }
}

TEST(Dimacs, Basic) {
  const Problem p = parse_dimacs("p cnf 2 2\n1 -2 0\n2 0\n");
  ASSERT_EQ(p.inputs.size(), 2u);
  const TermId x1 = *p.store.find_var("x1");
  const TermId x2 = *p.store.find_var("x2");
  EXPECT_EQ(p.inputs[0], mk_clause(p.store, {Literal::pos(x1), Literal::neg(x2)}));
  EXPECT_EQ(p.inputs[1], mk_clause(p.store, {Literal::pos(x2)}));
  EXPECT_EQ(print_dimacs(p), "p cnf 2 2\n1 -2 0\n2 0\n");
}

TEST(Dimacs, CommentsAndPercent) {
  const Problem p = parse_dimacs("c hello\np cnf 3 1\nc mid\n1 2\n 3 0\n%\n0\n");
  ASSERT_EQ(p.inputs.size(), 1u);
  EXPECT_EQ(p.inputs[0].size(), 3u);
}

TEST(Dimacs, Errors) {
  auto fails = [](const char* src, const char* needle) {
    try {
      parse_dimacs(src);
    } catch (const ParseError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  EXPECT_TRUE(fails("p cnf 1 1\n3 0", "literal out of range"));
  EXPECT_TRUE(fails("p cnf 1 1\n1", "not terminated"));
  EXPECT_TRUE(fails("p cnf 1 2\n1 0\n", "expected 2 clauses"));
  EXPECT_TRUE(fails("p cnf 1 1\n1 0\n1 0\n", "more clauses"));
  EXPECT_TRUE(fails("p cnf x 1\n", "variable count"));
  EXPECT_TRUE(fails("1 0\n", "header"));
  EXPECT_TRUE(fails("p cnf 1 1 1 0\n", "after header"));
  EXPECT_TRUE(fails("p cnf 1 1\n1a 0\n", "literal"));
}

TEST(Smt2, EufProblem) {
  const Problem p = parse_smt2(
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)"
      "(declare-const b U)(assert (= a b))(assert (not (= (f a) (f b))))(check-sat)(exit)");
  EXPECT_EQ(p.logic, Logic::QF_UF);
  ASSERT_EQ(p.inputs.size(), 2u);
  EXPECT_EQ(p.inputs[0].size(), 1u);
  // Assertions stay whole; (not ...) is a positive literal on a Not term.
  EXPECT_FALSE(p.inputs[1][0].negative());
  EXPECT_EQ(p.store.kind(p.inputs[1][0].atom()), Kind::Not);
}

TEST(Smt2, TermLanguage) {
  const Problem p = parse_smt2(
      "(set-logic QF_UFLIA)(set-info :status unsat)(declare-fun g (Int) Int)(declare-fun p (Int) Bool)"
      "(declare-const x Int)(declare-const y Int)(declare-const b Bool)"
      "(assert (let ((z (+ x 1))) (and (<= z (* 2 y)) (> (- z) 3) (>= (g x) (- 5)))))"
      "(assert (=> b (p x) (distinct x y)))(assert (xor b (ite b (< x y 3) (= b (p y)))))");
  EXPECT_EQ(p.inputs.size(), 3u);
  const Problem bv = parse_smt2(
      "(set-logic QF_BV)(declare-const u (_ BitVec 4))"
      "(assert (bvult (bvadd u #x3 (_ bv2 4)) (bvnot (bvand u (bvor u (bvxor u #b1010))))))");
  EXPECT_EQ(bv.inputs.size(), 1u);
}

TEST(Smt2, Unsupported) {
  auto unsupported = [](const char* src) {
    try {
      parse_smt2(src);
    } catch (const UnsupportedError& e) {
      return true;
    }
    return false;
  };
  EXPECT_TRUE(unsupported("(set-logic QF_LIA)(declare-const x Int)(assert (forall ((y Int)) (<= x y)))"));
  EXPECT_TRUE(unsupported("(set-logic QF_LIA)(declare-const x Int)(declare-const y Int)(assert (<= (* x y) 1))"));
  EXPECT_TRUE(unsupported("(set-logic QF_LIA)(define-fun z () Int 3)"));
  EXPECT_TRUE(unsupported("(set-logic QF_LRA)"));
  EXPECT_TRUE(unsupported("(set-logic QF_UF)(push 1)"));
  EXPECT_TRUE(unsupported("(set-logic QF_UF)(declare-fun f (Bool) Bool)"));
}

TEST(Smt2, Errors) {
  EXPECT_THROW(parse_smt2("(set-logic QF_UF)(assert q)"), ParseError);
  EXPECT_THROW(parse_smt2("(set-logic QF_LIA)(declare-const x Int)(assert x)"), ParseError);
  EXPECT_THROW(parse_smt2("(set-logic QF_LIA)(declare-const x Int)(declare-const x Int)"), ParseError);
  EXPECT_THROW(parse_smt2("(set-logic QF_UF)(declare-const a@b Bool)"), ParseError);
  EXPECT_THROW(parse_smt2("(set-logic QF_UF)(assert (and true)"), ParseError);
}

TEST(CertificateText, SimpleRefutation) {
  Problem p = parse_smt2("(set-logic QF_UF)(declare-const p Bool)(assert p)(assert (not p))");
  const char* text = "2 not_not () {(not p)}\n3 res (1 2) {}\n4 res (3 0) {}\nqed 4\n";
  const Certificate c = parse_certificate(text, p);
  ASSERT_EQ(c.steps.size(), 3u);
  EXPECT_EQ(c.qed, 4u);
  EXPECT_EQ(check(p.store, p.inputs, c).verdict, Verdict::Valid);
  EXPECT_EQ(print_certificate(p.store, c), text);
}

TEST(CertificateText, ForwardReference) {
  Problem p = parse_smt2("(set-logic QF_UF)(declare-const p Bool)(assert p)(assert (not p))");
  EXPECT_THROW(parse_certificate("2 res (3) {}\nqed 2\n", p), ReferenceError);
  EXPECT_THROW(parse_certificate("2 res (0 1) {}\nqed 3\n", p), ReferenceError);
}

TEST(CertificateText, Errors) {
  Problem p = parse_smt2("(set-logic QF_UF)(declare-const p Bool)(assert p)(assert (not p))");
  EXPECT_THROW(parse_certificate("2 res (0 1) {}\n", p), ParseError);           // no qed
  EXPECT_THROW(parse_certificate("3 res (0 1) {}\nqed 3\n", p), ParseError);    // numbering
  EXPECT_THROW(parse_certificate("2 frob (0 1) {}\nqed 2\n", p), ParseError);
  EXPECT_THROW(parse_certificate("2 res (0 1) {}\nqed 2\n2\n", p), ParseError);
  EXPECT_THROW(parse_certificate("2 and_pos () {q 0}\nqed 2\n", p), ParseError);
  EXPECT_THROW(parse_certificate("2 lia () {(lemma p) (farkas (0 x))}\nqed 2\n", p), ParseError);
}

TEST(CertificateText, TheoryPayloadsRoundTrip) {
  const char* src =
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)"
      "(declare-const b U)(assert (= a b))(assert (not (= (f a) (f b))))";
  const char* cert =
      "2 euf () {(lemma (not (= a b)) (= (f a) (f b))) (hyp 0 a b) (cong f (0) (f a) (f b))}\n"
      "3 not_not () {(not (= (f a) (f b)))}\n4 res (1 3) {}\n5 res (2 0) {}\n6 res (5 4) {}\nqed 6\n";
  Problem p = parse_smt2(src);
  const Certificate c = parse_certificate(cert, p);
  EXPECT_EQ(check(p.store, p.inputs, c).verdict, Verdict::Valid);
  const std::string printed = print_certificate(p.store, c);
  Problem p2 = parse_smt2(src);
  EXPECT_EQ(parse_certificate(printed, p2), c);
}

TEST(CertificateText, ProverCertificatesRoundTrip) {
  testing::Rng rng(3);
  int done = 0;
  for (int i = 0; i < 200 && done < 60; ++i) {
    const auto th = static_cast<testing::Theory>(i % 5);
    const auto g = testing::gen_problem(th, rng);
    Problem p = g.dimacs ? parse_dimacs(g.text) : parse_smt2(g.text);
    const auto c = testing::prove(p.store, p.inputs);
    if (!c) continue;
    ++done;
    const std::string text = print_certificate(p.store, *c);
    Problem p2 = g.dimacs ? parse_dimacs(g.text) : parse_smt2(g.text);
    const Certificate back = parse_certificate(text, p2);
    EXPECT_EQ(print_certificate(p2.store, back), text);
    EXPECT_EQ(check(p2.store, p2.inputs, back).verdict, Verdict::Valid) << text;
  }
  EXPECT_GE(done, 30);
}

// Parsers are total: any input either parses or raises an InputError.
TEST(FrontendFuzz, RandomBytesNeverCrash) {
  std::mt19937 rng(99);
  const std::string alphabet = "()[]{}; \n\t-0123456789pcnfx#b|\"abqed res=<>notandor:";
  for (int i = 0; i < 3000; ++i) {
    std::string s(rng() % 80, ' ');
    for (char& ch : s) ch = alphabet[rng() % alphabet.size()];
    try {
      parse_dimacs(s);
    } catch (const InputError&) {
    }
    try {
      parse_smt2(s);
    } catch (const InputError&) {
    }
    Problem p = parse_smt2("(set-logic QF_UF)(declare-const p Bool)(assert p)");
    try {
      parse_certificate(s, p);
    } catch (const InputError&) {
    }
  }
}

}  // namespace
}  // namespace certkernel
