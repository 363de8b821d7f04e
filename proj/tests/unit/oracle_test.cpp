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

#include "certkernel/oracle.hpp"

#include <gtest/gtest.h>

#include "certkernel/smt2.hpp"

namespace certkernel {
namespace {

using oracle::Outcome;

class OracleTest : public ::testing::Test {
 protected:
  TermStore s;
  TermId p = s.mk_var("p", Sort::boolean());
  TermId q = s.mk_var("q", Sort::boolean());
};

TEST_F(OracleTest, EvalTrue) {
  EXPECT_TRUE(std::get<bool>(oracle::eval(s, {}, kTrue)));
  EXPECT_FALSE(std::get<bool>(oracle::eval(s, {}, kFalse)));
}

TEST_F(OracleTest, EvalBvAddWraps) {
  const TermId x = s.mk_var("x", Sort::bitvec(2));
  const TermId y = s.mk_var("y", Sort::bitvec(2));
  oracle::Model m;
  m.bv_vals[x] = {true, false};  // 01, LSB first
  m.bv_vals[y] = {true, false};
  EXPECT_EQ(std::get<oracle::BitVector>(oracle::eval(s, m, s.mk(Kind::BvAdd, {x, y}))),
            (oracle::BitVector{false, true}));
  m.bv_vals[x] = {true, true};
  m.bv_vals[y] = {true, false};
  EXPECT_EQ(std::get<oracle::BitVector>(oracle::eval(s, m, s.mk(Kind::BvAdd, {x, y}))),
            (oracle::BitVector{false, false}));
}

TEST_F(OracleTest, EvalLe) {
  const TermId x = s.mk_var("x", Sort::integer());
  oracle::Model m;
  m.int_vals[x] = 3;
  EXPECT_TRUE(std::get<bool>(oracle::eval(s, m, s.mk(Kind::Le, {x, s.mk_int(3)}))));
  m.int_vals[x] = 4;
  EXPECT_FALSE(std::get<bool>(oracle::eval(s, m, s.mk(Kind::Le, {x, s.mk_int(3)}))));
}

TEST_F(OracleTest, EvalMissingValueThrows) {
  EXPECT_THROW(oracle::eval(s, {}, p), oracle::IncompleteModel);
}

TEST_F(OracleTest, EvalClause) {
  oracle::Model m;
  EXPECT_FALSE(oracle::eval_clause(s, m, Clause{}));
  EXPECT_TRUE(oracle::eval_clause(s, m, trivially_true_clause()));
  const Clause taut = mk_clause(s, {Literal::pos(p), Literal::neg(p)});
  for (bool v : {false, true}) {
    m.bool_vals[p] = v;
    EXPECT_TRUE(oracle::eval_clause(s, m, taut));
  }
}

TEST_F(OracleTest, BruteUnitConflict) {
  const std::vector<Clause> cs{mk_clause(s, {Literal::pos(p)}), mk_clause(s, {Literal::neg(p)})};
  EXPECT_EQ(oracle::brute_unsat(s, cs).outcome, Outcome::Unsat);
}

TEST_F(OracleTest, BruteFindsWitness) {
  const std::vector<Clause> cs{mk_clause(s, {Literal::pos(p), Literal::pos(q)})};
  const auto r = oracle::brute_unsat(s, cs);
  ASSERT_EQ(r.outcome, Outcome::Sat);
  EXPECT_TRUE(oracle::eval_clause(s, r.witness, cs[0]));
  EXPECT_FALSE(r.box_relative);
}

TEST_F(OracleTest, BruteBvFact) {
  Problem pr = parse_smt2(
      "(set-logic QF_BV)(assert (not (= (bvadd #b01 #b01) #b10)))");
  EXPECT_EQ(oracle::brute_unsat(pr.store, pr.inputs).outcome, Outcome::Unsat);
  Problem pr2 = parse_smt2(
      "(set-logic QF_BV)(declare-const x (_ BitVec 2))(assert (= (bvadd x x) #b10))");
  EXPECT_EQ(oracle::brute_unsat(pr2.store, pr2.inputs).outcome, Outcome::Sat);
}

TEST_F(OracleTest, BruteIntIsBoxRelative) {
  Problem pr = parse_smt2(
      "(set-logic QF_LIA)(declare-const x Int)(assert (> x 100))");
  const auto r = oracle::brute_unsat(pr.store, pr.inputs);
  EXPECT_EQ(r.outcome, Outcome::Unsat);
  EXPECT_TRUE(r.box_relative);
  Problem pr2 = parse_smt2(
      "(set-logic QF_LIA)(declare-const x Int)(declare-const y Int)(assert (= (+ x y) 7))(assert (< x y))");
  EXPECT_EQ(oracle::brute_unsat(pr2.store, pr2.inputs).outcome, Outcome::Sat);
}

TEST_F(OracleTest, BruteRespectsFunctionalConsistency) {
  Problem pr = parse_smt2(
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)(declare-const b U)"
      "(assert (= a b))(assert (not (= (f a) (f b))))");
  EXPECT_EQ(oracle::brute_unsat(pr.store, pr.inputs).outcome, Outcome::Unsat);
  Problem pr2 = parse_smt2(
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)(declare-const b U)"
      "(assert (not (= (f a) (f b))))");
  EXPECT_EQ(oracle::brute_unsat(pr2.store, pr2.inputs).outcome, Outcome::Sat);
}

TEST_F(OracleTest, BruteBudget) {
  std::vector<Clause> cs;
  for (int i = 0; i < 30; ++i)
    cs.push_back(mk_clause(s, {Literal::pos(s.mk_var("v" + std::to_string(i), Sort::boolean()))}));
  oracle::Budget b;
  b.max_models = 1000;
  EXPECT_EQ(oracle::brute_unsat(s, cs, b).outcome, Outcome::Exhausted);
}

class EufOracleTest : public ::testing::Test {
 protected:
  EufOracleTest() {
    const Sort u = Sort::uninterpreted("U");
    a = s.mk_var("a", u);
    b = s.mk_var("b", u);
    c = s.mk_var("c", u);
    f = s.declare_fun({"f", {u}, u});
  }
  TermId eq(TermId x, TermId y) { return s.mk(Kind::Eq, {x, y}); }
  TermStore s;
  TermId a, b, c;
  FunId f;
};

TEST_F(EufOracleTest, Congruence) {
  const Clause lemma = mk_clause(s, {Literal::neg(eq(a, b)),
                                     Literal::pos(eq(s.mk_app(f, {a}), s.mk_app(f, {b})))});
  EXPECT_TRUE(oracle::euf_lemma_valid_oracle(s, lemma, 3));
}

TEST_F(EufOracleTest, Transitivity) {
  const Clause lemma =
      mk_clause(s, {Literal::neg(eq(a, b)), Literal::neg(eq(b, c)), Literal::pos(eq(a, c))});
  EXPECT_TRUE(oracle::euf_lemma_valid_oracle(s, lemma, 3));
}

TEST_F(EufOracleTest, BareEqualityIsRefuted) {
  EXPECT_FALSE(oracle::euf_lemma_valid_oracle(s, mk_clause(s, {Literal::pos(eq(a, b))}), 2));
}

TEST_F(EufOracleTest, WrongDirectionRefuted) {
  const Clause lemma = mk_clause(s, {Literal::neg(eq(s.mk_app(f, {a}), s.mk_app(f, {b}))),
                                     Literal::pos(eq(a, b))});
  EXPECT_FALSE(oracle::euf_lemma_valid_oracle(s, lemma, 3));
}

TEST_F(EufOracleTest, OverBudgetThrows) {
  const Clause lemma = mk_clause(s, {Literal::neg(eq(a, b)),
                                     Literal::pos(eq(s.mk_app(f, {a}), s.mk_app(f, {b})))});
  EXPECT_THROW(oracle::euf_lemma_valid_oracle(s, lemma, 3, 4), oracle::ResourceError);
}

}  // namespace
}  // namespace certkernel
