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

// Brute-force semantics of terms and clauses over finite models. Used by tests
// and the `oracle` debugging mode only. Depends on core and nothing else; it
// must never call into the checkers it is used to validate.
//
// Uninterpreted sorts are interpreted over small finite domains and integers
// over a bounded box. A model found is always a real model; "no model found"
// is only as strong as the enumerated space, which BruteResult reports.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "certkernel/core.hpp"

namespace certkernel::oracle {

class IncompleteModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element `index` of the domain of an uninterpreted sort.
struct Elem {
  std::uint32_t index = 0;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

using BitVector = std::vector<bool>;  // least significant bit first
using Value = std::variant<bool, BigInt, BitVector, Elem>;

struct FunTable {
  std::map<std::vector<Value>, Value> entries;
  std::optional<Value> fallback;
};

struct Model {
  std::map<TermId, bool> bool_vals;
  std::map<TermId, BigInt> int_vals;
  std::map<TermId, BitVector> bv_vals;
  std::map<TermId, std::uint32_t> elem_vals;
  std::map<FunId, FunTable> fun_tables;
  std::map<std::string, std::uint32_t> domains;
};

namespace detail {

inline BitVector bv_add(const BitVector& a, const BitVector& b) {
  BitVector out(a.size());
  bool carry = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int s = int(a[i]) + int(b[i]) + int(carry);
    out[i] = (s & 1) != 0;
    carry = s >= 2;
  }
  return out;
}

inline bool bv_ult(const BitVector& a, const BitVector& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return b[i];
  return false;
}

// Evaluates with a per-call cache; `leaf(t, argvals)` supplies values of
// variables (no args) and applications.
template <class Leaf>
Value eval_cached(const TermStore& store, TermId t, Leaf& leaf,
                  std::unordered_map<TermId, Value>& cache) {
  if (auto it = cache.find(t); it != cache.end()) return it->second;
  const Node& n = store.node(t);
  auto sub = [&](std::size_t i) { return eval_cached(store, n.args[i], leaf, cache); };
  auto b = [&](std::size_t i) { return std::get<bool>(sub(i)); };
  auto z = [&](std::size_t i) { return std::get<BigInt>(sub(i)); };
  auto v = [&](std::size_t i) { return std::get<BitVector>(sub(i)); };
  Value out;
  switch (n.kind) {
    case Kind::Var:
      out = leaf(t, std::span<const Value>{});
      break;
    case Kind::Apply: {
      std::vector<Value> args;
      for (std::size_t i = 0; i < n.args.size(); ++i) args.push_back(sub(i));
      out = leaf(t, std::span<const Value>(args));
      break;
    }
    case Kind::IntConst: out = n.value; break;
    case Kind::BvConst: out = n.bits; break;
    case Kind::True: out = true; break;
    case Kind::False: out = false; break;
    case Kind::Eq: out = sub(0) == sub(1); break;
    case Kind::Le: out = z(0) <= z(1); break;
    case Kind::Lt: out = z(0) < z(1); break;
    case Kind::Not: out = !b(0); break;
    case Kind::And: {
      bool r = true;
      for (std::size_t i = 0; i < n.args.size(); ++i) r = b(i) && r;
      out = r;
      break;
    }
    case Kind::Or: {
      bool r = false;
      for (std::size_t i = 0; i < n.args.size(); ++i) r = b(i) || r;
      out = r;
      break;
    }
    case Kind::Implies: out = !b(0) || b(1); break;
    case Kind::Xor: out = b(0) != b(1); break;
    case Kind::Iff: out = b(0) == b(1); break;
    case Kind::Ite: out = b(0) ? sub(1) : sub(2); break;
    case Kind::BvNot: {
      BitVector r = v(0);
      r.flip();
      out = std::move(r);
      break;
    }
    case Kind::BvAnd:
    case Kind::BvOr:
    case Kind::BvXor: {
      const BitVector x = v(0);
      const BitVector y = v(1);
      BitVector r(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = n.kind == Kind::BvAnd ? (x[i] && y[i]) : n.kind == Kind::BvOr ? (x[i] || y[i]) : (x[i] != y[i]);
      out = std::move(r);
      break;
    }
    case Kind::BvAdd: out = bv_add(v(0), v(1)); break;
    case Kind::BvUlt: out = bv_ult(v(0), v(1)); break;
    case Kind::Add: {
      BigInt r = 0;
      for (std::size_t i = 0; i < n.args.size(); ++i) r += z(i);
      out = r;
      break;
    }
    case Kind::Sub: out = BigInt(z(0) - z(1)); break;
    case Kind::Neg: out = BigInt(-z(0)); break;
    case Kind::Mul: out = BigInt(z(0) * z(1)); break;
  }
  cache.emplace(t, out);
  return out;
}

}  // namespace detail

/// Standard semantics of `t` under `model`. Throws IncompleteModel when a
/// free symbol has no value.
inline Value eval(const TermStore& store, const Model& model, TermId t) {
  auto leaf = [&](TermId x, std::span<const Value> args) -> Value {
    const Node& n = store.node(x);
    const Sort& s = store.sort_of(x);
    if (n.kind == Kind::Apply) {
      auto tab = model.fun_tables.find(n.fun);
      if (tab != model.fun_tables.end()) {
        auto e = tab->second.entries.find(std::vector<Value>(args.begin(), args.end()));
        if (e != tab->second.entries.end()) return e->second;
        if (tab->second.fallback) return *tab->second.fallback;
      }
      throw IncompleteModel("no value for " + to_string(store, x));
    }
    switch (s.kind) {
      case SortKind::Bool:
        if (auto it = model.bool_vals.find(x); it != model.bool_vals.end()) return it->second;
        break;
      case SortKind::Int:
        if (auto it = model.int_vals.find(x); it != model.int_vals.end()) return it->second;
        break;
      case SortKind::BitVec:
        if (auto it = model.bv_vals.find(x); it != model.bv_vals.end()) return it->second;
        break;
      case SortKind::Uninterpreted:
        if (auto it = model.elem_vals.find(x); it != model.elem_vals.end()) return Elem{it->second};
        break;
    }
    throw IncompleteModel("no value for " + n.name);
  };
  std::unordered_map<TermId, Value> cache;
  return detail::eval_cached(store, t, leaf, cache);
}

inline bool eval_literal(const TermStore& store, const Model& model, Literal l) {
  return std::get<bool>(eval(store, model, l.atom())) != l.negative();
}

/// True iff some literal evaluates to its polarity; the empty clause is false.
inline bool eval_clause(const TermStore& store, const Model& model, const Clause& c) {
  for (Literal l : c)
    if (eval_literal(store, model, l)) return true;
  return false;
}

struct Budget {
  std::uint64_t max_models = 1ULL << 22;
  std::int64_t int_box = 10;      // integers range over [-int_box, int_box]
  std::uint32_t max_domain = 3;   // elements per uninterpreted sort
};

enum class Outcome : std::uint8_t { Unsat, Sat, Exhausted };

struct BruteResult {
  Outcome outcome = Outcome::Exhausted;
  Model witness;
  /// Set when some free symbol ranged over a truncated domain (integers, or
  /// more uninterpreted terms than max_domain), so Unsat only means "no model
  /// inside the box".
  bool box_relative = false;
};

/// Exhaustive search for a model of `clauses`. Variables and function
/// applications are enumerated as independent unknowns and assignments that
/// violate functional consistency are skipped.
inline BruteResult brute_unsat(const TermStore& store, std::span<const Clause> clauses,
                               const Budget& budget = {}) {
  BruteResult res;
  // Free unknowns in id order, so applications come after their arguments.
  std::vector<TermId> leaves;
  {
    std::vector<bool> seen(store.size(), false);
    std::vector<TermId> todo;
    for (const Clause& c : clauses)
      for (Literal l : c) todo.push_back(l.atom());
    while (!todo.empty()) {
      const TermId t = todo.back();
      todo.pop_back();
      if (seen[t]) continue;
      seen[t] = true;
      const Node& n = store.node(t);
      if (n.kind == Kind::Var || n.kind == Kind::Apply) leaves.push_back(t);
      for (TermId a : n.args) todo.push_back(a);
    }
    std::sort(leaves.begin(), leaves.end());
  }

  std::map<std::string, std::uint32_t> per_sort;
  for (TermId t : leaves)
    if (store.sort_of(t).kind == SortKind::Uninterpreted) ++per_sort[store.sort_of(t).name];

  std::vector<std::vector<Value>> domain(leaves.size());
  long double total = 1;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const Sort& s = store.sort_of(leaves[i]);
    auto& d = domain[i];
    switch (s.kind) {
      case SortKind::Bool:
        d = {false, true};
        break;
      case SortKind::Int:
        for (std::int64_t x = -budget.int_box; x <= budget.int_box; ++x) d.push_back(BigInt(x));
        res.box_relative = true;
        break;
      case SortKind::BitVec: {
        if (s.width > 16) return res;
        for (std::uint32_t x = 0; x < (1U << s.width); ++x) {
          BitVector bits(s.width);
          for (std::uint32_t j = 0; j < s.width; ++j) bits[j] = ((x >> j) & 1U) != 0;
          d.push_back(std::move(bits));
        }
        break;
      }
      case SortKind::Uninterpreted: {
        const std::uint32_t need = per_sort[s.name];
        const std::uint32_t size = std::max<std::uint32_t>(1, std::min(need, budget.max_domain));
        if (need > budget.max_domain) res.box_relative = true;
        for (std::uint32_t x = 0; x < size; ++x) d.push_back(Elem{x});
        res.witness.domains[s.name] = size;
        break;
      }
    }
    total *= static_cast<long double>(d.size());
  }
  if (total > static_cast<long double>(budget.max_models)) return res;

  std::unordered_map<TermId, std::size_t> slot;
  for (std::size_t i = 0; i < leaves.size(); ++i) slot.emplace(leaves[i], i);
  std::vector<std::size_t> pick(leaves.size(), 0);

  for (;;) {
    // Apply-term values must form a function of the argument values.
    std::map<FunId, std::map<std::vector<Value>, Value>> tables;
    bool consistent = true;
    auto leaf = [&](TermId x, std::span<const Value> args) -> Value {
      const Value& v = domain[slot.at(x)][pick[slot.at(x)]];
      if (store.kind(x) == Kind::Apply) {
        auto [it, inserted] =
            tables[store.node(x).fun].emplace(std::vector<Value>(args.begin(), args.end()), v);
        if (!inserted && !(it->second == v)) consistent = false;
      }
      return v;
    };
    std::unordered_map<TermId, Value> cache;
    for (TermId t : leaves) {
      if (store.kind(t) == Kind::Apply) detail::eval_cached(store, t, leaf, cache);
      if (!consistent) break;
    }
    bool sat = consistent;
    for (std::size_t c = 0; sat && c < clauses.size(); ++c) {
      bool any = false;
      for (Literal l : clauses[c]) {
        if (std::get<bool>(detail::eval_cached(store, l.atom(), leaf, cache)) != l.negative()) {
          any = true;
          break;
        }
      }
      sat = any && consistent;
    }
    if (sat) {
      res.outcome = Outcome::Sat;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        const TermId t = leaves[i];
        const Value& v = domain[i][pick[i]];
        if (store.kind(t) == Kind::Apply) continue;
        std::visit(
            [&](const auto& x) {
              using T = std::decay_t<decltype(x)>;
              if constexpr (std::is_same_v<T, bool>) res.witness.bool_vals[t] = x;
              if constexpr (std::is_same_v<T, BigInt>) res.witness.int_vals[t] = x;
              if constexpr (std::is_same_v<T, BitVector>) res.witness.bv_vals[t] = x;
              if constexpr (std::is_same_v<T, Elem>) res.witness.elem_vals[t] = x.index;
            },
            v);
      }
      for (auto& [f, entries] : tables) res.witness.fun_tables[f].entries = std::move(entries);
      return res;
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == domain[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  res.outcome = Outcome::Unsat;
  return res;
}

/// True iff `lemma` holds in every interpretation whose domains have at most
/// `max_domain` elements, treating every non-Boolean subterm that is not a
/// function application as an opaque constant. A refuter only: `true` is a
/// necessary condition for validity.
inline bool euf_lemma_valid_oracle(const TermStore& store, const Clause& lemma,
                                   std::uint32_t max_domain, std::uint64_t max_models = 1ULL << 22) {
  // Opaque constants and applications, ids ascending.
  std::vector<TermId> leaves;
  std::vector<bool> seen(store.size(), false);
  std::vector<TermId> todo;
  for (Literal l : lemma) todo.push_back(l.atom());
  while (!todo.empty()) {
    const TermId t = todo.back();
    todo.pop_back();
    if (seen[t]) continue;
    seen[t] = true;
    const Node& n = store.node(t);
    if (n.kind == Kind::Eq) {
      for (TermId a : n.args) todo.push_back(a);
    } else if (n.kind == Kind::Apply) {
      leaves.push_back(t);
      for (TermId a : n.args) todo.push_back(a);
    } else {
      leaves.push_back(t);
    }
  }
  std::sort(leaves.begin(), leaves.end());
  const std::uint32_t d = std::max<std::uint32_t>(1, max_domain);
  long double total = 1;
  for (TermId t : leaves) total *= store.sort_of(t).is_bool() ? 2 : d;
  if (total > static_cast<long double>(max_models))
    throw ResourceError("finite-model enumeration exceeds budget");

  std::unordered_map<TermId, std::size_t> slot;
  for (std::size_t i = 0; i < leaves.size(); ++i) slot.emplace(leaves[i], i);
  std::vector<std::uint32_t> val(leaves.size(), 0);
  auto value_of = [&](TermId t) { return val[slot.at(t)]; };

  for (;;) {
    bool consistent = true;
    std::map<std::pair<FunId, std::vector<std::uint32_t>>, std::uint32_t> table;
    for (TermId t : leaves) {
      const Node& n = store.node(t);
      if (n.kind != Kind::Apply) continue;
      std::vector<std::uint32_t> args;
      for (TermId a : n.args) args.push_back(value_of(a));
      auto [it, inserted] = table.emplace(std::pair{n.fun, std::move(args)}, value_of(t));
      if (!inserted && it->second != value_of(t)) {
        consistent = false;
        break;
      }
    }
    if (consistent) {
      bool holds = false;
      for (Literal l : lemma) {
        const Node& n = store.node(l.atom());
        bool v;
        if (n.kind == Kind::Eq) {
          v = value_of(n.args[0]) == value_of(n.args[1]);
        } else {
          v = value_of(l.atom()) != 0;
        }
        if (v != l.negative()) {
          holds = true;
          break;
        }
      }
      if (!holds) return false;
    }
    std::size_t i = 0;
    while (i < val.size()) {
      const std::uint32_t limit = store.sort_of(leaves[i]).is_bool() ? 2 : d;
      if (++val[i] < limit) break;
      val[i++] = 0;
    }
    if (i == val.size()) return true;
  }
}

}  // namespace certkernel::oracle
