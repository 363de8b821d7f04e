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

// Regenerates tests/corpus: writes each hand-built problem, a certificate for
// it, and MANIFEST.tsv (name, file, expected verdict, note).
//
//   gen_corpus <corpus-dir>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "certkernel/certificate_io.hpp"
#include "certkernel/dimacs.hpp"
#include "certkernel/kernel.hpp"
#include "certkernel/preproc.hpp"
#include "certkernel/smt2.hpp"
#include "prover.hpp"

namespace ck = certkernel;

namespace {

std::string license(const std::string& prefix) {
  return prefix + " Copyright 2026 The certkernel Authors\n" + prefix + " SPDX-License-Identifier: Apache-2.0\n";
}

struct Entry {
  std::string name;
  std::string ext;  // ".cnf" or ".smt2"
  std::string problem;
  std::string proof;  // empty: ask the prover
  std::string note;
};

std::vector<Entry> entries() {
  std::vector<Entry> e;
  auto sat = [&](const char* name, const char* text) { e.push_back({name, ".cnf", text, "", ""}); };
  auto smt = [&](const char* name, const char* text) { e.push_back({name, ".smt2", text, "", ""}); };

  sat("sat_four", "c all sign patterns over two variables\np cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n");
  sat("sat_php_3_2",
      "c three pigeons, two holes\np cnf 6 9\n1 2 0\n3 4 0\n5 6 0\n"
      "-1 -3 0\n-1 -5 0\n-3 -5 0\n-2 -4 0\n-2 -6 0\n-4 -6 0\n");
  sat("sat_php_4_3",
      "c four pigeons, three holes\np cnf 12 22\n1 2 3 0\n4 5 6 0\n7 8 9 0\n10 11 12 0\n"
      "-1 -4 0\n-1 -7 0\n-1 -10 0\n-4 -7 0\n-4 -10 0\n-7 -10 0\n"
      "-2 -5 0\n-2 -8 0\n-2 -11 0\n-5 -8 0\n-5 -11 0\n-8 -11 0\n"
      "-3 -6 0\n-3 -9 0\n-3 -12 0\n-6 -9 0\n-6 -12 0\n-9 -12 0\n");
  sat("sat_implication_chain", "p cnf 5 6\n1 0\n-1 2 0\n-2 3 0\n-3 4 0\n-4 5 0\n-5 0\n");
  sat("sat_parity3",
      "c x1 xor x2 xor x3 is both true and false\np cnf 3 8\n"
      "1 2 3 0\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 3 0\n"
      "-1 -2 -3 0\n-1 2 3 0\n1 -2 3 0\n1 2 -3 0\n");
  sat("sat_triangle_2col",
      "c two-colouring a triangle\np cnf 3 6\n1 2 0\n-1 -2 0\n2 3 0\n-2 -3 0\n1 3 0\n-1 -3 0\n");
  sat("sat_mixed_width",
      "p cnf 4 8\n1 2 3 0\n-1 2 0\n-2 3 0\n-3 4 0\n-3 -4 0\n1 -2 4 0\n-1 -4 0\n2 4 0\n");

  smt("uf_congruence",
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)(declare-const b U)\n"
      "(assert (= a b))\n(assert (not (= (f a) (f b))))\n(check-sat)\n");
  smt("uf_transitivity",
      "(set-logic QF_UF)(declare-sort U 0)(declare-const a U)(declare-const b U)(declare-const c U)\n"
      "(declare-const d U)\n(assert (= a b))\n(assert (= c b))\n(assert (= c d))\n(assert (not (= d a)))\n");
  smt("uf_fixpoint",
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)\n"
      "(assert (= (f (f (f a))) a))\n(assert (= (f (f a)) a))\n(assert (not (= (f a) a)))\n");
  smt("uf_predicate",
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun p (U) Bool)(declare-const a U)(declare-const b U)\n"
      "(assert (p a))\n(assert (= a b))\n(assert (not (p b)))\n");
  smt("uf_case_split",
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)(declare-const b U)\n"
      "(declare-const c U)\n(assert (or (= a b) (= a c)))\n(assert (not (= (f a) (f b))))\n"
      "(assert (not (= (f a) (f c))))\n");
  smt("uf_boolean",
      "(set-logic QF_UF)(declare-const p Bool)(declare-const q Bool)(declare-const r Bool)\n"
      "(assert (=> p q))\n(assert (=> q r))\n(assert (ite r (not p) p))\n(assert (xor p (not q)))\n(assert (or p (not r)))\n");
  smt("uf_binary_fun",
      "(set-logic QF_UF)(declare-sort U 0)(declare-fun g (U U) U)(declare-const a U)(declare-const b U)\n"
      "(declare-const c U)\n(assert (= a b))\n(assert (= b c))\n(assert (distinct (g a b) (g c a)))\n");

  smt("lia_odd_double", "(set-logic QF_LIA)(declare-const x Int)\n(assert (= (* 2 x) 1))\n");
  smt("lia_cycle",
      "(set-logic QF_LIA)(declare-const x Int)(declare-const y Int)(declare-const z Int)\n"
      "(assert (< x y))\n(assert (< y z))\n(assert (< z x))\n");
  smt("lia_bounds",
      "(set-logic QF_LIA)(declare-const x Int)(declare-const y Int)\n"
      "(assert (>= (+ x y) 4))\n(assert (<= x 1))\n(assert (<= y 2))\n");
  smt("lia_gap",
      "(set-logic QF_LIA)(declare-const x Int)\n(assert (< 0 (* 3 x)))\n(assert (< (* 3 x) 3))\n");
  smt("lia_disjunction",
      "(set-logic QF_LIA)(declare-const x Int)\n(assert (and (<= 0 x) (<= x 3)))\n"
      "(assert (or (> x 5) (< x 0)))\n");
  smt("lia_implication",
      "(set-logic QF_LIA)(declare-const x Int)(declare-const y Int)\n"
      "(assert (=> (> x 2) (> y (+ x 1))))\n(assert (= x 5))\n(assert (<= y 3))\n");

  smt("uflia_congruent_terms",
      "(set-logic QF_UFLIA)(declare-fun f (Int) Int)(declare-const x Int)(declare-const y Int)\n"
      "(assert (= x y))\n(assert (< (f x) (f y)))\n");
  smt("uflia_offset",
      "(set-logic QF_UFLIA)(declare-fun f (Int) Int)(declare-const x Int)(declare-const y Int)\n"
      "(assert (= x y))\n(assert (> (f x) (+ (f y) 2)))\n");
  smt("uflia_chain",
      "(set-logic QF_UFLIA)(declare-fun g (Int) Int)(declare-const a Int)(declare-const b Int)\n"
      "(declare-const c Int)\n(assert (= a b))\n(assert (= b c))\n(assert (<= (+ (g a) 1) (g c)))\n");
  smt("uflia_predicate",
      "(set-logic QF_UFLIA)(declare-fun p (Int) Bool)(declare-fun h (Int) Int)(declare-const x Int)\n"
      "(declare-const y Int)\n(assert (= x y))\n(assert (or (not (p x)) (< (h x) 0)))\n(assert (p y))\n"
      "(assert (>= (h y) 0))\n");

  smt("bv_ult_irreflexive", "(set-logic QF_BV)(declare-const u (_ BitVec 2))\n(assert (bvult u u))\n");
  smt("bv_constant_add", "(set-logic QF_BV)\n(assert (not (= (bvadd #b01 #b01) #b10)))\n");
  smt("bv_eq_ult",
      "(set-logic QF_BV)(declare-const u (_ BitVec 2))(declare-const v (_ BitVec 2))\n"
      "(assert (= u v))\n(assert (bvult u v))\n");
  smt("bv_xor_self",
      "(set-logic QF_BV)(declare-const u (_ BitVec 3))\n(assert (not (= (bvxor u u) #b000)))\n");
  smt("bv_ult_antisym",
      "(set-logic QF_BV)(declare-const u (_ BitVec 2))(declare-const v (_ BitVec 2))\n"
      "(assert (bvult u v))\n(assert (bvult v u))\n");
  smt("bv_add_commutes",
      "(set-logic QF_BV)(declare-const u (_ BitVec 2))(declare-const v (_ BitVec 2))\n"
      "(assert (not (= (bvadd u v) (bvadd v u))))\n");
  smt("bv_demorgan",
      "(set-logic QF_BV)(declare-const u (_ BitVec 3))(declare-const v (_ BitVec 3))\n"
      "(assert (not (= (bvnot (bvand u v)) (bvor (bvnot u) (bvnot v)))))\n");

  // Hand-written certificates whose rewriting step is assumed, not checked.
  e.push_back({"trusted_lia_normalization", ".smt2",
               "(set-logic QF_LIA)(declare-const x Int)(declare-const y Int)\n"
               "(assert (< x y))\n(assert (< y x))\n",
               "2 assume () {(not (< x y)) (not (< y x))}\n3 res (2 0) {}\n4 res (3 1) {}\nqed 4\n",
               "step 2 assumes the strict-order lemma instead of a Farkas certificate"});
  e.push_back({"trusted_bv_rewrite", ".smt2",
               "(set-logic QF_BV)(declare-const u (_ BitVec 4))\n(assert (bvult (bvadd u #x0) u))\n",
               "1 assume () {(not (bvult (bvadd u #x0) u))}\n2 res (0 1) {}\nqed 2\n",
               "step 1 assumes the rewrite u + 0 = u"});
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_corpus <corpus-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "MANIFEST.tsv");
  manifest << license("#") << "# name\tproblem\tproof\texpected\tnote\n";
  int failures = 0;
  for (const Entry& e : entries()) {
    ck::Problem p = e.ext == ".cnf" ? ck::parse_dimacs(e.problem) : ck::parse_smt2(e.problem);
    std::string proof = e.proof;
    if (proof.empty()) {
      const auto cert = ck::testing::prove(p.store, p.inputs);
      if (!cert) {
        std::cerr << e.name << ": no proof found\n";
        ++failures;
        continue;
      }
      proof = ck::print_certificate(p.store, ck::compact(p.store, *cert, p.inputs.size()));
    }
    ck::Problem fresh = e.ext == ".cnf" ? ck::parse_dimacs(e.problem) : ck::parse_smt2(e.problem);
    const ck::CheckResult r = ck::check(fresh.store, fresh.inputs, ck::parse_certificate(proof, fresh));
    const ck::Verdict want = e.proof.empty() ? ck::Verdict::Valid : ck::Verdict::Trusted;
    if (r.verdict != want) {
      std::cerr << e.name << ": " << ck::verdict_name(r.verdict) << " " << r.reason << "\n";
      ++failures;
      continue;
    }
    std::ofstream(dir / (e.name + e.ext)) << license(e.ext == ".cnf" ? "c" : ";") << e.problem;
    std::ofstream(dir / (e.name + ".proof")) << license(";") << proof;
    manifest << e.name << '\t' << e.name << e.ext << '\t' << e.name << ".proof\t" << ck::verdict_name(want)
             << '\t' << e.note << '\n';
    std::cout << e.name << ": " << r.stats.steps_total << " steps\n";
  }
  return failures == 0 ? 0 : 1;
}
