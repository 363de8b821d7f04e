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

// Linear certificates: rule kinds, per-rule payloads, steps, and the purely
// structural checks (numbering, back-references, payload agreement,
// dependency cones) shared by the kernel and the preprocessor.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "certkernel/checker_bv.hpp"
#include "certkernel/checker_euf.hpp"
#include "certkernel/checker_lia.hpp"
#include "certkernel/checker_res.hpp"
#include "certkernel/core.hpp"

namespace certkernel {

using ClauseId = std::uint32_t;

enum class Rule : std::uint8_t {
  Input,
  Res,
  AndPos,
  AndNeg,
  OrPos,
  OrNeg,
  ImpPos,
  ImpNeg1,
  ImpNeg2,
  XorPos1,
  XorPos2,
  XorNeg1,
  XorNeg2,
  ItePos1,
  ItePos2,
  IteNeg1,
  IteNeg2,
  IffPos1,
  IffPos2,
  IffNeg1,
  IffNeg2,
  NotNot,
  NotNeg,
  True,
  False,
  Euf,
  Lia,
  BbVar,
  BbConst,
  BbNot,
  BbAnd,
  BbOr,
  BbXor,
  BbAdd,
  BbEq,
  BbUlt,
  Assume,
};

inline constexpr std::size_t kNumRules = static_cast<std::size_t>(Rule::Assume) + 1;

inline constexpr std::array<std::string_view, kNumRules> kRuleNames = {
    "input",    "res",      "and_pos",  "and_neg",  "or_pos",   "or_neg",   "imp_pos",
    "imp_neg1", "imp_neg2", "xor_pos1", "xor_pos2", "xor_neg1", "xor_neg2", "ite_pos1",
    "ite_pos2", "ite_neg1", "ite_neg2", "iff_pos1", "iff_pos2", "iff_neg1", "iff_neg2",
    "not_not",  "not_neg",  "true",     "false",    "euf",      "lia",      "bb_var",
    "bb_const", "bb_not",   "bb_and",   "bb_or",    "bb_xor",   "bb_add",   "bb_eq",
    "bb_ult",   "assume",
};

inline std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

inline std::optional<Rule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumRules; ++i)
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  return std::nullopt;
}

inline bool is_cnf_rule(Rule r) { return r >= Rule::AndPos && r <= Rule::False; }
inline bool is_blast_rule(Rule r) { return r >= Rule::BbVar && r <= Rule::BbUlt; }

inline CnfKind cnf_kind_of(Rule r) {
  return static_cast<CnfKind>(static_cast<int>(r) - static_cast<int>(Rule::AndPos));
}
inline Rule rule_of(CnfKind k) {
  return static_cast<Rule>(static_cast<int>(k) + static_cast<int>(Rule::AndPos));
}

inline BlastOp blast_op_of(Rule r) {
  return static_cast<BlastOp>(static_cast<int>(r) - static_cast<int>(Rule::BbVar));
}
inline Rule rule_of(BlastOp op) {
  return static_cast<Rule>(static_cast<int>(op) + static_cast<int>(Rule::BbVar));
}

struct AssumePayload {
  Clause clause;

  friend bool operator==(const AssumePayload&, const AssumePayload&) = default;
};

using Payload =
    std::variant<std::monostate, CnfPayload, EufPayload, LiaPayload, BvPayload, AssumePayload>;

/// True iff the payload alternative is the one `rule` expects.
inline bool payload_matches(Rule r, const Payload& p) {
  if (r == Rule::Res || r == Rule::Input) return std::holds_alternative<std::monostate>(p);
  if (is_cnf_rule(r)) {
    auto* c = std::get_if<CnfPayload>(&p);
    return c && c->kind == cnf_kind_of(r);
  }
  if (r == Rule::Euf) return std::holds_alternative<EufPayload>(p);
  if (r == Rule::Lia) return std::holds_alternative<LiaPayload>(p);
  if (is_blast_rule(r)) return std::holds_alternative<BvPayload>(p);
  if (r == Rule::Assume) return std::holds_alternative<AssumePayload>(p);
  return false;
}

struct Step {
  ClauseId id = 0;
  Rule rule = Rule::Res;
  std::vector<ClauseId> premises;
  Payload payload;

  friend bool operator==(const Step&, const Step&) = default;
};

/// Steps define clause slots num_inputs, num_inputs + 1, ... in order. `qed`
/// names the slot that must hold the empty clause; without it the first empty
/// clause derived is the goal.
struct Certificate {
  std::vector<Step> steps;
  std::optional<ClauseId> qed;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct StructuralError {
  std::size_t step_index = 0;  // index into steps, or steps.size() for qed
  std::string reason;
};

/// Numbering, back-reference, premise-count and payload agreement checks.
inline std::optional<StructuralError> validate_structure(const Certificate& cert,
                                                         std::size_t num_inputs) {
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const Step& s = cert.steps[k];
    const std::size_t expected = num_inputs + k;
    auto err = [&](std::string why) {
      return StructuralError{k, "step " + std::to_string(s.id) + ": " + std::move(why)};
    };
    if (s.id != expected) return err("expected id " + std::to_string(expected));
    if (s.rule == Rule::Input) return err("input clauses cannot be restated as steps");
    for (ClauseId p : s.premises)
      if (p >= s.id) return err("premise " + std::to_string(p) + " is not an earlier clause");
    if (s.rule == Rule::Res) {
      if (s.premises.empty()) return err("res needs at least one premise");
    } else if (!s.premises.empty()) {
      return err(std::string(rule_name(s.rule)) + " takes no premises");
    }
    if (!payload_matches(s.rule, s.payload))
      return err("payload does not match rule " + std::string(rule_name(s.rule)));
  }
  if (cert.qed && *cert.qed >= num_inputs + cert.steps.size())
    return StructuralError{cert.steps.size(),
                           "qed names unknown clause " + std::to_string(*cert.qed)};
  return std::nullopt;
}

/// Indices of the steps each step depends on: its premises plus, for
/// bit-blasting steps, the first earlier step that installed each operand.
/// Requires a structurally valid certificate.
inline std::vector<std::vector<std::size_t>> step_dependencies(const TermStore& store,
                                                               const Certificate& cert,
                                                               std::size_t num_inputs) {
  std::vector<std::vector<std::size_t>> deps(cert.steps.size());
  std::unordered_map<TermId, std::size_t> installer;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const Step& s = cert.steps[k];
    for (ClauseId p : s.premises)
      if (p >= num_inputs) deps[k].push_back(p - num_inputs);
    if (!is_blast_rule(s.rule)) continue;
    const auto& bp = std::get<BvPayload>(s.payload);
    const BlastOp op = blast_op_of(s.rule);
    for (TermId o : blast_operands(store, op, bp.target))
      if (auto it = installer.find(o); it != installer.end()) deps[k].push_back(it->second);
    if (blast_installs(op)) installer.emplace(bp.target, k);
  }
  return deps;
}

/// Marks the steps that `root` (a clause id) transitively depends on.
inline std::vector<bool> dependency_cone(const std::vector<std::vector<std::size_t>>& deps,
                                         std::size_t num_inputs, ClauseId root) {
  std::vector<bool> in(deps.size(), false);
  if (root < num_inputs) return in;
  std::vector<std::size_t> todo{root - num_inputs};
  while (!todo.empty()) {
    const std::size_t k = todo.back();
    todo.pop_back();
    if (k >= deps.size() || in[k]) continue;
    in[k] = true;
    for (std::size_t d : deps[k]) todo.push_back(d);
  }
  return in;
}

}  // namespace certkernel
