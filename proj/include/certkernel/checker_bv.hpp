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

// Bit-blasting small checkers. A BitBlastMap relates each bit-vector term to
// the Boolean formulas of its bits (least significant first); atoms over
// mapped terms are linked to propositional formulas by unit clauses.
//
// Invariant: for every model of the clauses seen so far, extended by giving
// each fresh auxiliary variable its intended value (the bit of a variable, or
// the carry into an adder position), the bits of a mapped term evaluate to
// the term's word value.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "certkernel/core.hpp"

namespace certkernel {

using BitBlastMap = std::unordered_map<TermId, std::vector<TermId>>;

struct BvPayload {
  TermId target = kTrue;
  std::vector<TermId> aux;  // bb_var: bit names; bb_add: carry-in names

  friend bool operator==(const BvPayload&, const BvPayload&) = default;
};

enum class BlastOp : std::uint8_t { Var, Const, Not, And, Or, Xor, Add, Eq, Ult };

/// Tracks which variables already occur in stored clauses or were claimed as
/// auxiliaries, so freshly named bits cannot collide with constrained symbols.
class SymbolRegistry {
 public:
  void note_term(const TermStore& store, TermId root) {
    if (seen_terms_.size() < store.size()) seen_terms_.resize(store.size(), false);
    std::vector<TermId> todo{root};
    while (!todo.empty()) {
      const TermId t = todo.back();
      todo.pop_back();
      if (seen_terms_[t]) continue;
      seen_terms_[t] = true;
      if (store.kind(t) == Kind::Var) vars_.insert(t);
      for (TermId a : store.args(t)) todo.push_back(a);
    }
  }

  void note_clause(const TermStore& store, const Clause& c) {
    for (Literal l : c) note_term(store, l.atom());
  }

  bool fresh(TermId var) const { return !vars_.contains(var); }
  void claim(TermId var) { vars_.insert(var); }

 private:
  std::vector<bool> seen_terms_;
  std::unordered_set<TermId> vars_;
};

struct BlastOutcome {
  Clause clause;
  bool accepted = false;
  std::string reason;
};

/// Operands whose bit lists a step over `target` reads. Used for dependency
/// tracking; returns nothing if `target` has the wrong head for `op`.
inline std::vector<TermId> blast_operands(const TermStore& store, BlastOp op, TermId target) {
  if (!store.valid(target)) return {};
  const Node& n = store.node(target);
  auto want = [&](Kind k) -> std::vector<TermId> {
    if (n.kind != k) return {};
    return n.args;
  };
  switch (op) {
    case BlastOp::Var:
    case BlastOp::Const:
      return {};
    case BlastOp::Not: return want(Kind::BvNot);
    case BlastOp::And: return want(Kind::BvAnd);
    case BlastOp::Or: return want(Kind::BvOr);
    case BlastOp::Xor: return want(Kind::BvXor);
    case BlastOp::Add: return want(Kind::BvAdd);
    case BlastOp::Ult: return want(Kind::BvUlt);
    case BlastOp::Eq:
      if (n.kind != Kind::Eq || n.args.size() != 2 || !store.sort_of(n.args[0]).is_bitvec())
        return {};
      return n.args;
  }
  return {};
}

/// True for the steps that install a map entry for their target.
inline bool blast_installs(BlastOp op) { return op != BlastOp::Eq && op != BlastOp::Ult; }

class BitBlaster {
 public:
  explicit BitBlaster(TermStore& store) : store_(store) {}

  const BitBlastMap& map() const { return map_; }

  std::optional<std::span<const TermId>> bits(TermId t) const {
    auto it = map_.find(t);
    if (it == map_.end()) return std::nullopt;
    return std::span<const TermId>(it->second);
  }

  BlastOutcome apply(BlastOp op, const BvPayload& p, SymbolRegistry& registry) {
    switch (op) {
      case BlastOp::Var: return bb_var(p, registry);
      case BlastOp::Const: return bb_const(p);
      case BlastOp::Not:
      case BlastOp::And:
      case BlastOp::Or:
      case BlastOp::Xor: return bb_bitwise(op, p);
      case BlastOp::Add: return bb_add(p, registry);
      case BlastOp::Eq: return bb_eq(p);
      case BlastOp::Ult: return bb_ult(p);
    }
    return reject("unknown bit-blasting step");
  }

  /// Names the bits of a bit-vector variable with fresh Boolean variables.
  BlastOutcome bb_var(const BvPayload& p, SymbolRegistry& registry) {
    if (!store_.valid(p.target) || store_.kind(p.target) != Kind::Var ||
        !store_.sort_of(p.target).is_bitvec())
      return reject("bb_var target is not a bit-vector variable");
    if (auto r = check_unmapped(p.target)) return *r;
    if (p.aux.size() != store_.sort_of(p.target).width)
      return reject("bb_var needs one auxiliary per bit");
    if (auto r = check_fresh(p.aux, registry)) return *r;
    for (TermId a : p.aux) registry.claim(a);
    map_.emplace(p.target, p.aux);
    return accept(trivially_true_clause());
  }

  BlastOutcome bb_const(const BvPayload& p) {
    if (!store_.valid(p.target) || store_.kind(p.target) != Kind::BvConst)
      return reject("bb_const target is not a bit-vector constant");
    if (!p.aux.empty()) return reject("bb_const takes no auxiliaries");
    if (auto r = check_unmapped(p.target)) return *r;
    std::vector<TermId> out;
    for (bool b : store_.node(p.target).bits) out.push_back(store_.mk_bool(b));
    map_.emplace(p.target, std::move(out));
    return accept(trivially_true_clause());
  }

  BlastOutcome bb_bitwise(BlastOp op, const BvPayload& p) {
    auto ops = blast_operands(store_, op, p.target);
    if (ops.empty() || op == BlastOp::Add || !blast_installs(op) || op == BlastOp::Var ||
        op == BlastOp::Const)
      return reject("bit-wise step target has the wrong operator");
    if (!p.aux.empty()) return reject("bit-wise steps take no auxiliaries");
    if (auto r = check_unmapped(p.target)) return *r;
    std::vector<std::vector<TermId>> in;
    for (TermId o : ops) {
      auto b = bits(o);
      if (!b) return reject("operand " + to_string(store_, o) + " is not bit-blasted");
      in.emplace_back(b->begin(), b->end());
    }
    const std::size_t w = in[0].size();
    for (const auto& v : in)
      if (v.size() != w) return reject("operand widths differ");
    std::vector<TermId> out;
    for (std::size_t i = 0; i < w; ++i) {
      switch (op) {
        case BlastOp::Not: out.push_back(store_.mk(Kind::Not, {in[0][i]})); break;
        case BlastOp::And: out.push_back(store_.mk(Kind::And, {in[0][i], in[1][i]})); break;
        case BlastOp::Or: out.push_back(store_.mk(Kind::Or, {in[0][i], in[1][i]})); break;
        case BlastOp::Xor: out.push_back(store_.mk(Kind::Xor, {in[0][i], in[1][i]})); break;
        default: break;
      }
    }
    map_.emplace(p.target, std::move(out));
    return accept(trivially_true_clause());
  }

  /// Ripple-carry adder. aux[i] names the carry into position i; the returned
  /// unit clause defines every carry: aux[0] <=> false and
  /// aux[i+1] <=> (a_i and b_i) or ((a_i xor b_i) and aux[i]).
  BlastOutcome bb_add(const BvPayload& p, SymbolRegistry& registry) {
    auto ops = blast_operands(store_, BlastOp::Add, p.target);
    if (ops.empty()) return reject("bb_add target is not bvadd");
    if (auto r = check_unmapped(p.target)) return *r;
    auto a = bits(ops[0]);
    auto b = bits(ops[1]);
    if (!a || !b) return reject("bb_add operand is not bit-blasted");
    const std::size_t w = a->size();
    if (b->size() != w) return reject("operand widths differ");
    if (p.aux.size() != w) return reject("bb_add needs one carry per bit");
    if (auto r = check_fresh(p.aux, registry)) return *r;
    for (TermId c : p.aux) registry.claim(c);

    std::vector<TermId> sum;
    std::vector<TermId> defs{store_.mk(Kind::Iff, {p.aux[0], kFalse})};
    for (std::size_t i = 0; i < w; ++i) {
      const TermId half = store_.mk(Kind::Xor, {(*a)[i], (*b)[i]});
      sum.push_back(store_.mk(Kind::Xor, {half, p.aux[i]}));
      if (i + 1 < w) {
        const TermId carry = store_.mk(
            Kind::Or, {store_.mk(Kind::And, {(*a)[i], (*b)[i]}), store_.mk(Kind::And, {half, p.aux[i]})});
        defs.push_back(store_.mk(Kind::Iff, {p.aux[i + 1], carry}));
      }
    }
    map_.emplace(p.target, std::move(sum));
    const TermId all = defs.size() == 1 ? defs[0] : store_.mk(Kind::And, std::move(defs));
    return accept(Clause::from_sorted({Literal::pos(all)}));
  }

  /// Unit clause (= (= s t) (and (= s_0 t_0) ... )).
  BlastOutcome bb_eq(const BvPayload& p) {
    auto ops = blast_operands(store_, BlastOp::Eq, p.target);
    if (ops.empty()) return reject("bb_eq target is not a bit-vector equality");
    if (!p.aux.empty()) return reject("bb_eq takes no auxiliaries");
    auto s = bits(ops[0]);
    auto t = bits(ops[1]);
    if (!s || !t) return reject("bb_eq side is not bit-blasted");
    if (s->size() != t->size()) return reject("operand widths differ");
    std::vector<TermId> conj;
    for (std::size_t i = 0; i < s->size(); ++i)
      conj.push_back(store_.mk(Kind::Iff, {(*s)[i], (*t)[i]}));
    const TermId rhs = conj.size() == 1 ? conj[0] : store_.mk(Kind::And, std::move(conj));
    return accept(Clause::from_sorted({Literal::pos(store_.mk(Kind::Iff, {p.target, rhs}))}));
  }

  /// Unit clause linking (bvult s t) to the most-significant-bit-first
  /// comparison of the bits.
  BlastOutcome bb_ult(const BvPayload& p) {
    auto ops = blast_operands(store_, BlastOp::Ult, p.target);
    if (ops.empty()) return reject("bb_ult target is not bvult");
    if (!p.aux.empty()) return reject("bb_ult takes no auxiliaries");
    auto s = bits(ops[0]);
    auto t = bits(ops[1]);
    if (!s || !t) return reject("bb_ult side is not bit-blasted");
    if (s->size() != t->size()) return reject("operand widths differ");
    TermId r = store_.mk(Kind::And, {store_.mk_not((*s)[0]), (*t)[0]});
    for (std::size_t i = 1; i < s->size(); ++i) {
      const TermId lt_here = store_.mk(Kind::And, {store_.mk_not((*s)[i]), (*t)[i]});
      const TermId eq_here = store_.mk(Kind::Iff, {(*s)[i], (*t)[i]});
      r = store_.mk(Kind::Or, {lt_here, store_.mk(Kind::And, {eq_here, r})});
    }
    return accept(Clause::from_sorted({Literal::pos(store_.mk(Kind::Iff, {p.target, r}))}));
  }

 private:
  static BlastOutcome accept(Clause c) { return {std::move(c), true, {}}; }
  static BlastOutcome reject(std::string why) {
    return {trivially_true_clause(), false, std::move(why)};
  }

  std::optional<BlastOutcome> check_unmapped(TermId t) const {
    if (map_.contains(t)) return reject(to_string(store_, t) + " is already bit-blasted");
    return std::nullopt;
  }

  std::optional<BlastOutcome> check_fresh(std::span<const TermId> aux,
                                          const SymbolRegistry& registry) const {
    std::unordered_set<TermId> local;
    for (TermId a : aux) {
      if (!store_.valid(a) || store_.kind(a) != Kind::Var || !store_.sort_of(a).is_bool())
        return reject("auxiliary is not a Boolean variable");
      if (!registry.fresh(a) || !local.insert(a).second)
        return reject("auxiliary " + to_string(store_, a) + " is not fresh");
    }
    return std::nullopt;
  }

  TermStore& store_;
  BitBlastMap map_;
};

}  // namespace certkernel
