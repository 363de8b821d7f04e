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

// Hash-consed, sorted, quantifier-free term language and canonical clauses.
// Everything in here is syntactic: no operation evaluates semantics.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace certkernel {

using BigInt = boost::multiprecision::cpp_int;
using TermId = std::uint32_t;
using FunId = std::uint32_t;

/// Raised when a node is ill-sorted or a symbol is redeclared inconsistently.
class SortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SortKind : std::uint8_t { Bool, Int, BitVec, Uninterpreted };

struct Sort {
  SortKind kind = SortKind::Bool;
  std::uint32_t width = 0;  // BitVec only
  std::string name;         // Uninterpreted only

  static Sort boolean() { return {}; }
  static Sort integer() { return {SortKind::Int, 0, {}}; }
  static Sort bitvec(std::uint32_t w) { return {SortKind::BitVec, w, {}}; }
  static Sort uninterpreted(std::string n) {
    return {SortKind::Uninterpreted, 0, std::move(n)};
  }

  bool is_bool() const { return kind == SortKind::Bool; }
  bool is_int() const { return kind == SortKind::Int; }
  bool is_bitvec() const { return kind == SortKind::BitVec; }

  friend bool operator==(const Sort&, const Sort&) = default;
};

inline std::string to_string(const Sort& s) {
  switch (s.kind) {
    case SortKind::Bool:
      return "Bool";
    case SortKind::Int:
      return "Int";
    case SortKind::BitVec:
      return "(_ BitVec " + std::to_string(s.width) + ")";
    case SortKind::Uninterpreted:
      return s.name;
  }
  return "?";
}

struct FunSym {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort ret_sort;

  friend bool operator==(const FunSym&, const FunSym&) = default;
};

enum class Kind : std::uint8_t {
  Var,
  IntConst,
  BvConst,
  Apply,
  Eq,
  Le,
  Lt,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Xor,
  Iff,
  Ite,
  BvNot,
  BvAnd,
  BvOr,
  BvXor,
  BvAdd,
  BvUlt,
  // Linear integer arithmetic; linearity is enforced by consumers.
  Add,
  Sub,
  Neg,
  Mul,
};

inline std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "var";
    case Kind::IntConst: return "int";
    case Kind::BvConst: return "bv";
    case Kind::Apply: return "apply";
    case Kind::Eq: return "=";
    case Kind::Le: return "<=";
    case Kind::Lt: return "<";
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Not: return "not";
    case Kind::And: return "and";
    case Kind::Or: return "or";
    case Kind::Implies: return "=>";
    case Kind::Xor: return "xor";
    case Kind::Iff: return "iff";
    case Kind::Ite: return "ite";
    case Kind::BvNot: return "bvnot";
    case Kind::BvAnd: return "bvand";
    case Kind::BvOr: return "bvor";
    case Kind::BvXor: return "bvxor";
    case Kind::BvAdd: return "bvadd";
    case Kind::BvUlt: return "bvult";
    case Kind::Add: return "+";
    case Kind::Sub: return "-";
    case Kind::Neg: return "neg";
    case Kind::Mul: return "*";
  }
  return "?";
}

/// Boolean connectives, i.e. the kinds the CNF lemmas decompose.
inline bool is_connective(Kind k) {
  switch (k) {
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Xor:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

struct Node {
  Kind kind = Kind::True;
  std::vector<TermId> args;
  std::string name;        // Var
  Sort var_sort;           // Var
  BigInt value;            // IntConst
  std::vector<bool> bits;  // BvConst, least significant bit first
  FunId fun = 0;           // Apply

  friend bool operator==(const Node&, const Node&) = default;
};

namespace detail {

inline void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

struct NodeHash {
  std::size_t operator()(const Node& n) const {
    std::size_t h = static_cast<std::size_t>(n.kind);
    for (TermId a : n.args) hash_mix(h, a);
    switch (n.kind) {
      case Kind::Var:
        hash_mix(h, std::hash<std::string>{}(n.name));
        break;
      case Kind::IntConst:
        hash_mix(h, std::hash<std::string>{}(n.value.str()));
        break;
      case Kind::BvConst:
        hash_mix(h, std::hash<std::vector<bool>>{}(n.bits));
        break;
      case Kind::Apply:
        hash_mix(h, n.fun);
        break;
      default:
        break;
    }
    return h;
  }
};

}  // namespace detail

inline constexpr TermId kTrue = 0;
inline constexpr TermId kFalse = 1;

/// Append-only store of hash-consed terms. Structurally identical nodes are
/// interned to the same id; ids are dense and children always precede parents.
class TermStore {
 public:
  TermStore() {
    Node t;
    t.kind = Kind::True;
    intern(t);
    Node f;
    f.kind = Kind::False;
    intern(f);
  }

  std::size_t size() const { return nodes_.size(); }
  bool valid(TermId t) const { return t < nodes_.size(); }
  const Node& node(TermId t) const { return nodes_.at(t); }
  Kind kind(TermId t) const { return nodes_.at(t).kind; }
  const Sort& sort_of(TermId t) const { return sorts_.at(t); }
  std::span<const TermId> args(TermId t) const { return nodes_.at(t).args; }

  FunId declare_fun(FunSym f) {
    if (f.arg_sorts.empty())
      throw SortError("function '" + f.name + "' needs at least one argument");
    for (const Sort& s : f.arg_sorts) check_sort(s);
    check_sort(f.ret_sort);
    if (auto it = fun_index_.find(f.name); it != fun_index_.end()) {
      if (funs_[it->second] == f) return it->second;
      throw SortError("function '" + f.name + "' redeclared with a different signature");
    }
    const auto id = static_cast<FunId>(funs_.size());
    fun_index_.emplace(f.name, id);
    funs_.push_back(std::move(f));
    return id;
  }

  std::optional<FunId> find_fun(std::string_view name) const {
    auto it = fun_index_.find(std::string(name));
    if (it == fun_index_.end()) return std::nullopt;
    return it->second;
  }
  const FunSym& fun(FunId f) const { return funs_.at(f); }
  std::size_t num_funs() const { return funs_.size(); }

  std::optional<TermId> find_var(std::string_view name) const {
    auto it = var_index_.find(std::string(name));
    if (it == var_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Returns the id of `node`, appending it when it is not present yet.
  TermId intern(Node node) {
    canonicalize(node);
    if (auto it = index_.find(node); it != index_.end()) return it->second;
    Sort s = compute_sort(node);
    if (node.kind == Kind::Var) {
      if (auto v = var_index_.find(node.name); v != var_index_.end())
        throw SortError("variable '" + node.name + "' already has sort " +
                        to_string(sorts_[v->second]));
    }
    const auto id = static_cast<TermId>(nodes_.size());
    if (node.kind == Kind::Var) var_index_.emplace(node.name, id);
    index_.emplace(node, id);
    nodes_.push_back(std::move(node));
    sorts_.push_back(std::move(s));
    return id;
  }

  TermId mk_true() const { return kTrue; }
  TermId mk_false() const { return kFalse; }
  TermId mk_bool(bool b) const { return b ? kTrue : kFalse; }

  TermId mk_var(std::string name, Sort sort) {
    Node n;
    n.kind = Kind::Var;
    n.name = std::move(name);
    n.var_sort = std::move(sort);
    return intern(std::move(n));
  }

  TermId mk_int(BigInt v) {
    Node n;
    n.kind = Kind::IntConst;
    n.value = std::move(v);
    return intern(std::move(n));
  }

  /// `bits` is least significant bit first.
  TermId mk_bv(std::vector<bool> bits) {
    Node n;
    n.kind = Kind::BvConst;
    n.bits = std::move(bits);
    return intern(std::move(n));
  }

  TermId mk_app(FunId f, std::vector<TermId> args) {
    Node n;
    n.kind = Kind::Apply;
    n.fun = f;
    n.args = std::move(args);
    return intern(std::move(n));
  }

  TermId mk(Kind k, std::vector<TermId> args) {
    Node n;
    n.kind = k;
    n.args = std::move(args);
    return intern(std::move(n));
  }

  TermId mk_not(TermId a) { return mk(Kind::Not, {a}); }

 private:
  static void check_sort(const Sort& s) {
    if (s.kind == SortKind::BitVec && s.width == 0)
      throw SortError("bit-vector width must be at least 1");
    if (s.kind == SortKind::Uninterpreted && s.name.empty())
      throw SortError("uninterpreted sort needs a name");
  }

  static void canonicalize(Node& n) {
    if (n.kind != Kind::Var) {
      n.name.clear();
      n.var_sort = Sort{};
    }
    if (n.kind != Kind::IntConst) n.value = 0;
    if (n.kind != Kind::BvConst) n.bits.clear();
    if (n.kind != Kind::Apply) n.fun = 0;
  }

  [[noreturn]] void fail(const Node& n, std::string_view why) const {
    std::ostringstream os;
    os << "ill-sorted '" << kind_name(n.kind) << "' node: " << why << " (child sorts:";
    for (TermId a : n.args) os << ' ' << (valid(a) ? to_string(sorts_[a]) : "<invalid id>");
    os << ')';
    throw SortError(os.str());
  }

  Sort compute_sort(const Node& n) const {
    for (TermId a : n.args)
      if (!valid(a)) fail(n, "child id out of range");
    auto arity = [&](std::size_t k) {
      if (n.args.size() != k) fail(n, "expected " + std::to_string(k) + " children");
    };
    auto all = [&](const Sort& s) {
      for (TermId a : n.args)
        if (!(sorts_[a] == s)) fail(n, "expected children of sort " + to_string(s));
    };
    auto same_bv = [&]() -> Sort {
      const Sort& s = sorts_[n.args[0]];
      if (!s.is_bitvec()) fail(n, "expected bit-vector children");
      all(s);
      return s;
    };
    switch (n.kind) {
      case Kind::Var:
        arity(0);
        if (n.name.empty()) fail(n, "variable needs a name");
        check_sort(n.var_sort);
        return n.var_sort;
      case Kind::IntConst:
        arity(0);
        return Sort::integer();
      case Kind::BvConst:
        arity(0);
        if (n.bits.empty()) fail(n, "empty bit-vector constant");
        return Sort::bitvec(static_cast<std::uint32_t>(n.bits.size()));
      case Kind::Apply: {
        if (n.fun >= funs_.size()) fail(n, "unknown function symbol");
        const FunSym& f = funs_[n.fun];
        arity(f.arg_sorts.size());
        for (std::size_t i = 0; i < n.args.size(); ++i)
          if (!(sorts_[n.args[i]] == f.arg_sorts[i]))
            fail(n, "argument " + std::to_string(i) + " of '" + f.name + "' must be " +
                        to_string(f.arg_sorts[i]));
        return f.ret_sort;
      }
      case Kind::Eq:
        arity(2);
        all(sorts_[n.args[0]]);
        return Sort::boolean();
      case Kind::Le:
      case Kind::Lt:
        arity(2);
        all(Sort::integer());
        return Sort::boolean();
      case Kind::True:
      case Kind::False:
        arity(0);
        return Sort::boolean();
      case Kind::Not:
        arity(1);
        all(Sort::boolean());
        return Sort::boolean();
      case Kind::And:
      case Kind::Or:
        if (n.args.empty()) fail(n, "expected at least one child");
        all(Sort::boolean());
        return Sort::boolean();
      case Kind::Implies:
      case Kind::Xor:
      case Kind::Iff:
        arity(2);
        all(Sort::boolean());
        return Sort::boolean();
      case Kind::Ite:
        arity(3);
        if (!sorts_[n.args[0]].is_bool()) fail(n, "condition must be Bool");
        if (!(sorts_[n.args[1]] == sorts_[n.args[2]])) fail(n, "branches differ in sort");
        return sorts_[n.args[1]];
      case Kind::BvNot:
        arity(1);
        return same_bv();
      case Kind::BvAnd:
      case Kind::BvOr:
      case Kind::BvXor:
      case Kind::BvAdd:
        arity(2);
        return same_bv();
      case Kind::BvUlt:
        arity(2);
        same_bv();
        return Sort::boolean();
      case Kind::Add:
        if (n.args.size() < 2) fail(n, "expected at least two children");
        all(Sort::integer());
        return Sort::integer();
      case Kind::Sub:
      case Kind::Mul:
        arity(2);
        all(Sort::integer());
        return Sort::integer();
      case Kind::Neg:
        arity(1);
        all(Sort::integer());
        return Sort::integer();
    }
    fail(n, "unknown kind");
  }

  std::vector<Node> nodes_;
  std::vector<Sort> sorts_;
  std::unordered_map<Node, TermId, detail::NodeHash> index_;
  std::unordered_map<std::string, TermId> var_index_;
  std::vector<FunSym> funs_;
  std::unordered_map<std::string, FunId> fun_index_;
};

/// Prints a term in SMT-LIB concrete syntax. Iff is printed as `=`.
inline std::string to_string(const TermStore& store, TermId t) {
  std::string out;
  std::function<void(TermId)> go = [&](TermId id) {
    const Node& n = store.node(id);
    auto list = [&](std::string_view head) {
      out += '(';
      out += head;
      for (TermId a : n.args) {
        out += ' ';
        go(a);
      }
      out += ')';
    };
    switch (n.kind) {
      case Kind::Var:
        out += n.name;
        return;
      case Kind::IntConst:
        if (n.value < 0) {
          out += "(- " + BigInt(-n.value).str() + ")";
        } else {
          out += n.value.str();
        }
        return;
      case Kind::BvConst:
        out += "#b";
        for (auto i = n.bits.size(); i-- > 0;) out += n.bits[i] ? '1' : '0';
        return;
      case Kind::Apply:
        list(store.fun(n.fun).name);
        return;
      case Kind::True:
        out += "true";
        return;
      case Kind::False:
        out += "false";
        return;
      case Kind::Iff:
        list("=");
        return;
      case Kind::Neg:
        list("-");
        return;
      default:
        list(kind_name(n.kind));
        return;
    }
  };
  go(t);
  return out;
}

/// A signed reference to a Bool-sorted term, encoded as 2 * atom + (negative ? 1 : 0).
class Literal {
 public:
  constexpr Literal() = default;
  static constexpr Literal pos(TermId atom) { return Literal(atom << 1); }
  static constexpr Literal neg(TermId atom) { return Literal((atom << 1) | 1U); }
  static constexpr Literal make(TermId atom, bool negative) {
    return negative ? neg(atom) : pos(atom);
  }
  static constexpr Literal from_code(std::uint32_t code) { return Literal(code); }

  constexpr TermId atom() const { return code_ >> 1; }
  constexpr bool negative() const { return (code_ & 1U) != 0; }
  constexpr bool positive() const { return !negative(); }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Literal operator~() const { return Literal(code_ ^ 1U); }

  friend constexpr auto operator<=>(Literal, Literal) = default;

 private:
  constexpr explicit Literal(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

/// A disjunction of literals, strictly sorted by encoding. The empty clause is falsity.
class Clause {
 public:
  Clause() = default;

  /// Builds a clause from literals that are already strictly sorted.
  static Clause from_sorted(std::vector<Literal> lits) {
    Clause c;
    c.lits_ = std::move(lits);
    return c;
  }

  std::span<const Literal> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  const Literal& operator[](std::size_t i) const { return lits_[i]; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool contains(Literal l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }
  bool is_trivially_true() const {
    return lits_.size() == 1 && lits_[0] == Literal::pos(kTrue);
  }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> lits_;
};

inline Clause trivially_true_clause() { return Clause::from_sorted({Literal::pos(kTrue)}); }

/// Sorts and deduplicates `lits`; every atom must be Bool-sorted.
inline Clause mk_clause(const TermStore& store, std::vector<Literal> lits) {
  for (Literal l : lits) {
    if (!store.valid(l.atom()))
      throw SortError("literal atom " + std::to_string(l.atom()) + " out of range");
    if (!store.sort_of(l.atom()).is_bool())
      throw SortError("literal atom '" + to_string(store, l.atom()) + "' is not Bool");
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return Clause::from_sorted(std::move(lits));
}

inline std::string to_string(const TermStore& store, Literal l) {
  if (l.negative()) return "(not " + to_string(store, l.atom()) + ")";
  return to_string(store, l.atom());
}

/// Human-readable clause: `(cl l1 l2 ...)`.
inline std::string to_string(const TermStore& store, const Clause& c) {
  std::string out = "(cl";
  for (Literal l : c) {
    out += ' ';
    out += to_string(store, l);
  }
  out += ')';
  return out;
}

}  // namespace certkernel
