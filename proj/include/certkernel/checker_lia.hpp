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

// Linear integer arithmetic lemmas checked against Farkas-style combinations
// with at most one gcd-tightened (Chvatal-Gomory) row.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "certkernel/core.hpp"

namespace certkernel {

/// A literal or row the LIA checker cannot interpret (nonlinear term,
/// disequality, non-arithmetic atom).
class RejectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Relation : std::uint8_t { Ge, Gt, Eq };

/// sum(coeffs[v] * v) + constant  (>= | > | =)  0. Zero coefficients are omitted.
struct LinAtom {
  std::map<TermId, BigInt> coeffs;
  BigInt constant;
  Relation relation = Relation::Ge;

  friend bool operator==(const LinAtom&, const LinAtom&) = default;
};

/// One entry of a combination. `row` indexes the lemma's literals; kCutRow
/// names the tightened row.
struct FarkasTerm {
  std::uint32_t row = 0;
  BigInt coeff;

  friend bool operator==(const FarkasTerm&, const FarkasTerm&) = default;
};

inline constexpr std::uint32_t kCutRow = 0xffffffffU;

struct LiaPayload {
  Clause lemma;
  std::vector<FarkasTerm> combination;
  /// When present, these rows are summed and divided by the gcd of their
  /// coefficients (rounding the constant down) before joining `combination`.
  std::optional<std::vector<FarkasTerm>> tighten;

  friend bool operator==(const LiaPayload&, const LiaPayload&) = default;
};

namespace detail {

inline void add_scaled(LinAtom& acc, const LinAtom& row, const BigInt& k) {
  if (k == 0) return;
  for (const auto& [v, c] : row.coeffs) {
    BigInt& slot = acc.coeffs[v];
    slot += c * k;
    if (slot == 0) acc.coeffs.erase(v);
  }
  acc.constant += row.constant * k;
}

// Linear form of an Int-sorted term. Anything that is not arithmetic is an
// opaque variable.
inline LinAtom linearize(const TermStore& store, TermId t) {
  const Node& n = store.node(t);
  if (!store.sort_of(t).is_int()) throw RejectError("non-integer term in arithmetic atom");
  LinAtom out;
  switch (n.kind) {
    case Kind::IntConst:
      out.constant = n.value;
      return out;
    case Kind::Add:
      for (TermId a : n.args) add_scaled(out, linearize(store, a), 1);
      return out;
    case Kind::Sub:
      add_scaled(out, linearize(store, n.args[0]), 1);
      add_scaled(out, linearize(store, n.args[1]), -1);
      return out;
    case Kind::Neg:
      add_scaled(out, linearize(store, n.args[0]), -1);
      return out;
    case Kind::Mul: {
      LinAtom l = linearize(store, n.args[0]);
      LinAtom r = linearize(store, n.args[1]);
      if (!l.coeffs.empty() && !r.coeffs.empty())
        throw RejectError("nonlinear product " + to_string(store, t));
      if (l.coeffs.empty()) std::swap(l, r);
      add_scaled(out, l, r.constant);
      return out;
    }
    default:
      out.coeffs[t] = 1;
      return out;
  }
}

}  // namespace detail

/// Canonical Ge/Eq form of an arithmetic literal, using integrality to turn
/// strict comparisons into non-strict ones: not (x <= 0) becomes x - 1 >= 0.
inline LinAtom normalize_lia_literal(const TermStore& store, Literal lit) {
  if (!store.valid(lit.atom())) throw RejectError("atom out of range");
  const Node& n = store.node(lit.atom());
  if (n.kind != Kind::Le && n.kind != Kind::Lt && n.kind != Kind::Eq)
    throw RejectError("not an arithmetic comparison");
  if (n.kind == Kind::Eq && !store.sort_of(n.args[0]).is_int())
    throw RejectError("equality over a non-integer sort");
  const LinAtom a = detail::linearize(store, n.args[0]);
  const LinAtom b = detail::linearize(store, n.args[1]);
  LinAtom out;
  if (n.kind == Kind::Eq) {
    if (lit.negative()) throw RejectError("disequality split required");
    detail::add_scaled(out, a, 1);
    detail::add_scaled(out, b, -1);
    out.relation = Relation::Eq;
    return out;
  }
  const bool strict = n.kind == Kind::Lt;
  if (lit.positive()) {
    // a <= b  ~>  b - a >= 0 ;  a < b  ~>  b - a - 1 >= 0
    detail::add_scaled(out, b, 1);
    detail::add_scaled(out, a, -1);
    if (strict) out.constant -= 1;
  } else {
    // not (a <= b)  ~>  a - b - 1 >= 0 ;  not (a < b)  ~>  a - b >= 0
    detail::add_scaled(out, a, 1);
    detail::add_scaled(out, b, -1);
    if (!strict) out.constant -= 1;
  }
  out.relation = Relation::Ge;
  return out;
}

/// Divides a Ge row by the gcd of its coefficients, rounding the constant down.
inline LinAtom tighten_row(const LinAtom& row) {
  BigInt g = 0;
  for (const auto& [v, c] : row.coeffs) g = boost::multiprecision::gcd(g, BigInt(abs(c)));
  LinAtom out = row;
  out.relation = Relation::Ge;
  if (g <= 1) return out;
  for (auto& [v, c] : out.coeffs) c /= g;
  // floor division; cpp_int division truncates toward zero
  BigInt q = row.constant / g;
  if (row.constant % g != 0 && row.constant < 0) q -= 1;
  out.constant = q;
  return out;
}

namespace detail {

// Combines rows; Eq rows accept signed coefficients, Ge rows only
// non-negative ones. Returns nullopt on an illegal entry.
inline std::optional<LinAtom> combine(const std::vector<LinAtom>& rows,
                                      const std::optional<LinAtom>& cut,
                                      const std::vector<FarkasTerm>& terms) {
  LinAtom acc;
  acc.relation = Relation::Eq;
  if (terms.empty()) return std::nullopt;
  for (const FarkasTerm& ft : terms) {
    const LinAtom* row = nullptr;
    if (ft.row == kCutRow) {
      if (!cut) return std::nullopt;
      row = &*cut;
    } else if (ft.row < rows.size()) {
      row = &rows[ft.row];
    } else {
      return std::nullopt;
    }
    if (row->relation != Relation::Eq) {
      if (ft.coeff < 0) return std::nullopt;
      if (ft.coeff > 0) acc.relation = Relation::Ge;
    }
    add_scaled(acc, *row, ft.coeff);
  }
  return acc;
}

}  // namespace detail

/// True iff `row` has no variables left and its constant violates the relation
/// (k >= 0 with k < 0, or k = 0 with k != 0).
inline bool is_ground_contradiction(const LinAtom& row) {
  if (!row.coeffs.empty()) return false;
  switch (row.relation) {
    case Relation::Ge:
      return row.constant < 0;
    case Relation::Gt:
      return row.constant <= 0;
    case Relation::Eq:
      return row.constant != 0;
  }
  return false;
}

/// Negates every lemma literal, combines the resulting rows as instructed and
/// accepts iff the combination is a ground contradiction. Returns the lemma on
/// success and the trivially true clause otherwise.
inline Clause check_lia(const TermStore& store, const LiaPayload& p) {
  try {
    std::vector<LinAtom> rows;
    rows.reserve(p.lemma.size());
    for (Literal l : p.lemma) rows.push_back(normalize_lia_literal(store, ~l));
    std::optional<LinAtom> cut;
    if (p.tighten) {
      for (const FarkasTerm& ft : *p.tighten)
        if (ft.row == kCutRow) return trivially_true_clause();
      auto raw = detail::combine(rows, std::nullopt, *p.tighten);
      if (!raw) return trivially_true_clause();
      cut = tighten_row(*raw);
    }
    auto combined = detail::combine(rows, cut, p.combination);
    if (combined && is_ground_contradiction(*combined)) return p.lemma;
  } catch (const RejectError&) {
  }
  return trivially_true_clause();
}

}  // namespace certkernel
