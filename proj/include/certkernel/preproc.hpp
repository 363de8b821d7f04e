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

// Untrusted certificate preprocessing: nested proofs with let-bound lemmas
// are flattened into linear certificates, and linear certificates are
// trimmed to the steps their qed depends on. Nothing here is trusted; the
// kernel re-checks every output.
//
// Nested proof syntax:
//
//   proof   := (step <rule> (<premise>..) {payload})
//            | (let ((<name> proof)..) proof)
//            | (ref <name>)
//   premise := <input clause id> | <name> | proof
//
// Bindings of one let are visible to the bindings after them and to the
// body. A name may not be rebound while it is in scope.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "certkernel/certificate.hpp"
#include "certkernel/certificate_io.hpp"
#include "certkernel/problem.hpp"
#include "certkernel/sexpr.hpp"

namespace certkernel {

struct NestedProof;
using NestedPtr = std::shared_ptr<const NestedProof>;

/// A premise of a nested step: an input clause, a let-bound name, or a subproof.
using NestedPremise = std::variant<ClauseId, std::string, NestedPtr>;

struct NestedProof {
  enum class Type : std::uint8_t { Leaf, Let, Ref };

  Type type = Type::Leaf;
  // Leaf
  Rule rule = Rule::Res;
  std::vector<NestedPremise> premises;
  Payload payload;
  // Let: bindings in order, then the body
  std::vector<std::pair<std::string, NestedPtr>> bindings;
  NestedPtr body;
  // Ref
  std::string name;

  static NestedPtr leaf(Rule r, std::vector<NestedPremise> prem, Payload p) {
    auto n = std::make_shared<NestedProof>();
    n->type = Type::Leaf;
    n->rule = r;
    n->premises = std::move(prem);
    n->payload = std::move(p);
    return n;
  }
  static NestedPtr let(std::vector<std::pair<std::string, NestedPtr>> b, NestedPtr body) {
    auto n = std::make_shared<NestedProof>();
    n->type = Type::Let;
    n->bindings = std::move(b);
    n->body = std::move(body);
    return n;
  }
  static NestedPtr ref(std::string name) {
    auto n = std::make_shared<NestedProof>();
    n->type = Type::Ref;
    n->name = std::move(name);
    return n;
  }
};

class LinearizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundName : public LinearizeError {
 public:
  explicit UnboundName(const std::string& name)
      : LinearizeError("unbound name '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

namespace detail {

inline NestedPtr nested_from_sexpr(const SExpr& e, CertParser& cp) {
  if (e.headed("ref")) {
    if (e.size() != 2 || !e[1].is_symbol()) throw ParseError(e.line, e.col, "malformed (ref name)");
    return NestedProof::ref(e[1].text);
  }
  if (e.headed("let")) {
    if (e.size() != 3 || !e[1].is_list()) throw ParseError(e.line, e.col, "malformed let");
    std::vector<std::pair<std::string, NestedPtr>> bindings;
    for (const SExpr& b : e[1].items) {
      if (!b.is_list() || b.size() != 2 || !b[0].is_symbol())
        throw ParseError(b.line, b.col, "malformed let binding");
      bindings.emplace_back(b[0].text, nested_from_sexpr(b[1], cp));
    }
    return NestedProof::let(std::move(bindings), nested_from_sexpr(e[2], cp));
  }
  if (e.headed("step")) {
    if (e.size() != 4 || !e[1].is_symbol() || !e[2].is_list() || e[3].type != SExpr::Type::Brace)
      throw ParseError(e.line, e.col, "malformed (step rule (premises) {payload})");
    const auto rule = rule_from_name(e[1].text);
    if (!rule || *rule == Rule::Input)
      throw ParseError(e[1].line, e[1].col, "unknown rule '" + e[1].text + "'");
    std::vector<NestedPremise> prem;
    for (const SExpr& p : e[2].items) {
      if (p.is_numeral()) {
        prem.emplace_back(TermParser::small_numeral(p, 0x7fffffffU));
      } else if (p.is_symbol()) {
        prem.emplace_back(p.text);
      } else if (p.is_list()) {
        prem.emplace_back(nested_from_sexpr(p, cp));
      } else {
        throw ParseError(p.line, p.col, "expected a premise");
      }
    }
    return NestedProof::leaf(*rule, std::move(prem), cp.payload(*rule, e[3]));
  }
  throw ParseError(e.line, e.col, "expected (step ...), (let ...) or (ref ...)");
}

}  // namespace detail

/// Parses one nested proof against `problem` (payload terms are interned into
/// its store).
inline NestedPtr parse_nested_proof(std::string_view src, Problem& problem) {
  SExprReader reader(src);
  SExpr e;
  if (!reader.next(e)) throw ParseError(reader.line(), reader.col(), "empty nested proof");
  detail::CertParser cp(problem);
  NestedPtr np;
  try {
    np = detail::nested_from_sexpr(e, cp);
  } catch (const SortError& err) {
    throw ParseError(e.line, e.col, err.what());
  }
  SExpr extra;
  if (reader.next(extra)) throw ParseError(extra.line, extra.col, "text after nested proof");
  return np;
}

/// Post-order emission: premises and let-bound subproofs come before the
/// steps that use them, and each bound lemma is emitted exactly once. The
/// qed of the result is the root's clause.
inline Certificate linearize(const NestedProof& np, std::size_t num_inputs) {
  Certificate out;
  std::vector<std::pair<std::string, ClauseId>> scope;

  auto lookup = [&](const std::string& name) -> ClauseId {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return it->second;
    throw UnboundName(name);
  };

  auto emit = [&](auto& self, const NestedProof& n) -> ClauseId {
    switch (n.type) {
      case NestedProof::Type::Ref:
        return lookup(n.name);
      case NestedProof::Type::Let: {
        const std::size_t mark = scope.size();
        for (const auto& [name, sub] : n.bindings) {
          for (const auto& bound : scope)
            if (bound.first == name) throw LinearizeError("name '" + name + "' is already bound");
          if (!sub) throw LinearizeError("missing subproof for '" + name + "'");
          const ClauseId id = self(self, *sub);
          scope.emplace_back(name, id);
        }
        if (!n.body) throw LinearizeError("let without body");
        const ClauseId id = self(self, *n.body);
        scope.resize(mark);
        return id;
      }
      case NestedProof::Type::Leaf: {
        Step s;
        s.rule = n.rule;
        s.payload = n.payload;
        for (const NestedPremise& p : n.premises) {
          if (const auto* in = std::get_if<ClauseId>(&p)) {
            if (*in >= num_inputs)
              throw LinearizeError("premise " + std::to_string(*in) + " is not an input clause");
            s.premises.push_back(*in);
          } else if (const auto* name = std::get_if<std::string>(&p)) {
            s.premises.push_back(lookup(*name));
          } else {
            const NestedPtr& sub = std::get<NestedPtr>(p);
            if (!sub) throw LinearizeError("missing subproof");
            s.premises.push_back(self(self, *sub));
          }
        }
        s.id = static_cast<ClauseId>(num_inputs + out.steps.size());
        out.steps.push_back(std::move(s));
        return out.steps.back().id;
      }
    }
    throw LinearizeError("unknown node");
  };

  out.qed = emit(emit, np);
  return out;
}

/// Drops the steps the qed does not depend on and renumbers densely. A
/// certificate without qed, or one failing structural validation, comes back
/// unchanged. The kernel replays exactly the same steps either way, so the
/// verdict is preserved.
inline Certificate compact(const TermStore& store, const Certificate& cert, std::size_t num_inputs) {
  if (!cert.qed || validate_structure(cert, num_inputs)) return cert;
  const auto cone = dependency_cone(step_dependencies(store, cert, num_inputs), num_inputs, *cert.qed);
  std::vector<ClauseId> renum(cert.steps.size(), 0);
  Certificate out;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    if (!cone[k]) continue;
    Step s = cert.steps[k];
    s.id = static_cast<ClauseId>(num_inputs + out.steps.size());
    for (ClauseId& p : s.premises)
      if (p >= num_inputs) p = renum[p - num_inputs];
    renum[k] = s.id;
    out.steps.push_back(std::move(s));
  }
  out.qed = *cert.qed < num_inputs ? *cert.qed : renum[*cert.qed - num_inputs];
  return out;
}

struct TrustReport {
  std::vector<Clause> assumed;
  std::vector<std::string> origins;  // "step <id>" per assumption
};

/// Every assume step of `cert`, in order.
inline TrustReport extract_trust(const Certificate& cert) {
  TrustReport r;
  for (const Step& s : cert.steps) {
    if (s.rule != Rule::Assume) continue;
    const auto* a = std::get_if<AssumePayload>(&s.payload);
    r.assumed.push_back(a ? a->clause : Clause{});
    r.origins.push_back("step " + std::to_string(s.id));
  }
  return r;
}

}  // namespace certkernel
