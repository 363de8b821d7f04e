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

// Propositional small checkers: resolution chains and Tseitin-style CNF lemmas.
// Both are total; failure is reported as the trivially true clause.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "certkernel/core.hpp"

namespace certkernel {

/// Resolves `a` and `b` on the smallest atom occurring with opposite signs.
/// Returns nullopt when the clauses do not clash.
inline std::optional<Clause> try_resolve(const Clause& a, const Clause& b) {
  // Literals of one atom are adjacent in encoded order, so one merge pass
  // over atoms finds the smallest clashing atom.
  std::optional<Literal> pivot;  // as it occurs in `a`
  {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end() && !pivot) {
      if (i->atom() < j->atom()) {
        ++i;
      } else if (j->atom() < i->atom()) {
        ++j;
      } else {
        const TermId atom = i->atom();
        const bool a_pos = a.contains(Literal::pos(atom));
        const bool a_neg = a.contains(Literal::neg(atom));
        const bool b_pos = b.contains(Literal::pos(atom));
        const bool b_neg = b.contains(Literal::neg(atom));
        if (a_pos && b_neg) {
          pivot = Literal::pos(atom);
        } else if (a_neg && b_pos) {
          pivot = Literal::neg(atom);
        }
        while (i != a.end() && i->atom() == atom) ++i;
        while (j != b.end() && j->atom() == atom) ++j;
      }
    }
  }
  if (!pivot) return std::nullopt;

  std::vector<Literal> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  const Literal skip_a = *pivot;
  const Literal skip_b = ~*pivot;
  while (i != a.end() || j != b.end()) {
    if (i != a.end() && *i == skip_a) {
      ++i;
      continue;
    }
    if (j != b.end() && *j == skip_b) {
      ++j;
      continue;
    }
    if (j == b.end() || (i != a.end() && *i < *j)) {
      out.push_back(*i++);
    } else if (i == a.end() || *j < *i) {
      out.push_back(*j++);
    } else {
      out.push_back(*i);
      ++i;
      ++j;
    }
  }
  return Clause::from_sorted(std::move(out));
}

inline Clause resolve_pair(const Clause& a, const Clause& b) {
  if (auto r = try_resolve(a, b)) return std::move(*r);
  return trivially_true_clause();
}

/// Left fold of try_resolve; nullopt as soon as one link has no pivot.
inline std::optional<Clause> try_resolve_chain(std::span<const Clause> premises) {
  if (premises.empty()) return std::nullopt;
  Clause acc = premises[0];
  for (std::size_t k = 1; k < premises.size(); ++k) {
    auto r = try_resolve(acc, premises[k]);
    if (!r) return std::nullopt;
    acc = std::move(*r);
  }
  return acc;
}

inline Clause resolve_chain(std::span<const Clause> premises) {
  if (premises.empty()) return trivially_true_clause();
  Clause acc = premises[0];
  for (std::size_t k = 1; k < premises.size(); ++k) acc = resolve_pair(acc, premises[k]);
  return acc;
}

//------------------------------------------------------------------------------
// CNF conversion lemmas

enum class CnfKind : std::uint8_t {
  AndPos,   // t = (and a1..an), i:  (not t) ai
  AndNeg,   // t (not a1) .. (not an)
  OrPos,    // (not t) a1 .. an
  OrNeg,    // t = (or a1..an), i:   t (not ai)
  ImpPos,   // t = (=> a b):         (not t) (not a) b
  ImpNeg1,  // t a
  ImpNeg2,  // t (not b)
  XorPos1,  // t = (xor a b):        (not t) a b
  XorPos2,  // (not t) (not a) (not b)
  XorNeg1,  // t a (not b)
  XorNeg2,  // t (not a) b
  ItePos1,  // t = (ite c a b):      (not t) (not c) a
  ItePos2,  // (not t) c b
  IteNeg1,  // t (not c) (not a)
  IteNeg2,  // t c (not b)
  IffPos1,  // t = (= a b):          (not t) (not a) b
  IffPos2,  // (not t) a (not b)
  IffNeg1,  // t a b
  IffNeg2,  // t (not a) (not b)
  NotNot,   // t = (not a):          (not t) (not a)
  NotNeg,   // t a
  True,     // true
  False,    // (not false)
};

struct CnfPayload {
  CnfKind kind = CnfKind::True;
  TermId target = kTrue;
  std::uint32_t index = 0;  // AndPos / OrNeg only

  friend bool operator==(const CnfPayload&, const CnfPayload&) = default;
};

inline bool cnf_uses_index(CnfKind k) { return k == CnfKind::AndPos || k == CnfKind::OrNeg; }
inline bool cnf_uses_target(CnfKind k) { return k != CnfKind::True && k != CnfKind::False; }

/// The tautology named by `p`, or the trivially true clause when the target's
/// head does not match the kind or the index is out of range.
inline Clause cnf_lemma(const TermStore& store, const CnfPayload& p) {
  using L = Literal;
  if (p.kind == CnfKind::True) return Clause::from_sorted({L::pos(kTrue)});
  if (p.kind == CnfKind::False) return Clause::from_sorted({L::neg(kFalse)});
  if (!store.valid(p.target)) return trivially_true_clause();

  const TermId t = p.target;
  const Node& n = store.node(t);
  auto head = [&](Kind k) { return n.kind == k; };
  auto make = [&](std::vector<Literal> lits) { return mk_clause(store, std::move(lits)); };
  const auto& a = n.args;

  switch (p.kind) {
    case CnfKind::AndPos:
      if (!head(Kind::And) || p.index >= a.size()) break;
      return make({L::neg(t), L::pos(a[p.index])});
    case CnfKind::AndNeg: {
      if (!head(Kind::And)) break;
      std::vector<Literal> lits{L::pos(t)};
      for (TermId x : a) lits.push_back(L::neg(x));
      return make(std::move(lits));
    }
    case CnfKind::OrPos: {
      if (!head(Kind::Or)) break;
      std::vector<Literal> lits{L::neg(t)};
      for (TermId x : a) lits.push_back(L::pos(x));
      return make(std::move(lits));
    }
    case CnfKind::OrNeg:
      if (!head(Kind::Or) || p.index >= a.size()) break;
      return make({L::pos(t), L::neg(a[p.index])});
    case CnfKind::ImpPos:
      if (!head(Kind::Implies)) break;
      return make({L::neg(t), L::neg(a[0]), L::pos(a[1])});
    case CnfKind::ImpNeg1:
      if (!head(Kind::Implies)) break;
      return make({L::pos(t), L::pos(a[0])});
    case CnfKind::ImpNeg2:
      if (!head(Kind::Implies)) break;
      return make({L::pos(t), L::neg(a[1])});
    case CnfKind::XorPos1:
      if (!head(Kind::Xor)) break;
      return make({L::neg(t), L::pos(a[0]), L::pos(a[1])});
    case CnfKind::XorPos2:
      if (!head(Kind::Xor)) break;
      return make({L::neg(t), L::neg(a[0]), L::neg(a[1])});
    case CnfKind::XorNeg1:
      if (!head(Kind::Xor)) break;
      return make({L::pos(t), L::pos(a[0]), L::neg(a[1])});
    case CnfKind::XorNeg2:
      if (!head(Kind::Xor)) break;
      return make({L::pos(t), L::neg(a[0]), L::pos(a[1])});
    case CnfKind::ItePos1:
      if (!head(Kind::Ite) || !store.sort_of(t).is_bool()) break;
      return make({L::neg(t), L::neg(a[0]), L::pos(a[1])});
    case CnfKind::ItePos2:
      if (!head(Kind::Ite) || !store.sort_of(t).is_bool()) break;
      return make({L::neg(t), L::pos(a[0]), L::pos(a[2])});
    case CnfKind::IteNeg1:
      if (!head(Kind::Ite) || !store.sort_of(t).is_bool()) break;
      return make({L::pos(t), L::neg(a[0]), L::neg(a[1])});
    case CnfKind::IteNeg2:
      if (!head(Kind::Ite) || !store.sort_of(t).is_bool()) break;
      return make({L::pos(t), L::pos(a[0]), L::neg(a[2])});
    case CnfKind::IffPos1:
      if (!head(Kind::Iff)) break;
      return make({L::neg(t), L::neg(a[0]), L::pos(a[1])});
    case CnfKind::IffPos2:
      if (!head(Kind::Iff)) break;
      return make({L::neg(t), L::pos(a[0]), L::neg(a[1])});
    case CnfKind::IffNeg1:
      if (!head(Kind::Iff)) break;
      return make({L::pos(t), L::pos(a[0]), L::pos(a[1])});
    case CnfKind::IffNeg2:
      if (!head(Kind::Iff)) break;
      return make({L::pos(t), L::neg(a[0]), L::neg(a[1])});
    case CnfKind::NotNot:
      if (!head(Kind::Not)) break;
      return make({L::neg(t), L::neg(a[0])});
    case CnfKind::NotNeg:
      if (!head(Kind::Not)) break;
      return make({L::pos(t), L::pos(a[0])});
    case CnfKind::True:
    case CnfKind::False:
      break;
  }
  return trivially_true_clause();
}

}  // namespace certkernel
