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

// The main checker. It owns the clause store and replays a linear certificate
// by handing each step to its small checker. Small checkers are total: they
// reject by returning the trivially true clause, which the kernel records as
// a failed step.

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "certkernel/certificate.hpp"
#include "certkernel/core.hpp"

namespace certkernel {

enum class Verdict : std::uint8_t { Valid, Invalid, Trusted };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "VALID";
    case Verdict::Invalid: return "INVALID";
    case Verdict::Trusted: return "TRUSTED";
  }
  return "?";
}

struct CheckStats {
  std::array<std::size_t, kNumRules> rule_counts{};  // replayed steps per rule; inputs under Input
  std::size_t steps_total = 0;
  std::size_t steps_replayed = 0;
  std::size_t clause_store_size = 0;
  std::size_t max_clause_width = 0;
};

struct CheckResult {
  Verdict verdict = Verdict::Invalid;
  std::string reason;
  std::optional<ClauseId> step;         // offending step for Invalid
  std::vector<Clause> assumptions;      // Trusted only
  std::vector<ClauseId> assumption_ids;
  CheckStats stats;
};

struct DispatchOutcome {
  Clause clause;
  bool rejected = false;
  std::string reason;
};

/// Clause store plus the state small checkers share within one run (the
/// bit-blasting map and the freshness registry). One instance per run.
class Kernel {
 public:
  explicit Kernel(TermStore& store) : store_(store), blaster_(store) {}

  TermStore& store() { return store_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(ClauseId id) const { return clauses_.at(id); }
  const BitBlaster& blaster() const { return blaster_; }

  ClauseId add_input(const Clause& c) {
    registry_.note_clause(store_, c);
    clauses_.push_back(c);
    return static_cast<ClauseId>(clauses_.size() - 1);
  }

  /// Runs the small checker for `rule`; rejections come back as the trivially
  /// true clause with `rejected` set.
  DispatchOutcome dispatch_checked(Rule rule, std::span<const Clause> premises,
                                   const Payload& payload) {
    if (!payload_matches(rule, payload)) return reject("payload does not match rule");
    if (rule == Rule::Res) {
      auto r = try_resolve_chain(premises);
      if (!r) return reject("resolution chain has a link without a pivot");
      return {std::move(*r), false, {}};
    }
    if (is_cnf_rule(rule)) {
      const auto& p = std::get<CnfPayload>(payload);
      Clause c = cnf_lemma(store_, p);
      if (c.is_trivially_true() && p.kind != CnfKind::True)
        return reject("target does not match " + std::string(rule_name(rule)));
      return {std::move(c), false, {}};
    }
    if (rule == Rule::Euf) {
      const auto& p = std::get<EufPayload>(payload);
      Clause c = check_euf(store_, p);
      if (!(c == p.lemma) || c.is_trivially_true())
        return reject("equality justification does not prove the lemma");
      return {std::move(c), false, {}};
    }
    if (rule == Rule::Lia) {
      const auto& p = std::get<LiaPayload>(payload);
      Clause c = check_lia(store_, p);
      if (!(c == p.lemma) || c.is_trivially_true())
        return reject("combination is not a contradiction");
      return {std::move(c), false, {}};
    }
    if (is_blast_rule(rule)) {
      BlastOutcome o = blaster_.apply(blast_op_of(rule), std::get<BvPayload>(payload), registry_);
      return {std::move(o.clause), !o.accepted, std::move(o.reason)};
    }
    if (rule == Rule::Assume) return {std::get<AssumePayload>(payload).clause, false, {}};
    return reject("rule cannot be dispatched");
  }

  Clause dispatch(Rule rule, std::span<const Clause> premises, const Payload& payload) {
    return dispatch_checked(rule, premises, payload).clause;
  }

  /// Replays one structurally valid step and stores its conclusion.
  DispatchOutcome replay(const Step& s) {
    std::vector<Clause> premises;
    premises.reserve(s.premises.size());
    for (ClauseId p : s.premises) premises.push_back(clauses_.at(p));
    DispatchOutcome out = dispatch_checked(s.rule, premises, s.payload);
    if (s.rule != Rule::Res) registry_.note_clause(store_, out.clause);
    clauses_.push_back(out.clause);
    return out;
  }

  /// Reserves a slot for a step that is not replayed.
  void skip() { clauses_.push_back(trivially_true_clause()); }

 private:
  static DispatchOutcome reject(std::string why) {
    return {trivially_true_clause(), true, std::move(why)};
  }

  TermStore& store_;
  std::vector<Clause> clauses_;
  BitBlaster blaster_;
  SymbolRegistry registry_;
};

/// Checks that `cert` refutes `inputs`. With a qed step, only the steps that
/// step depends on are replayed and it must hold the empty clause; without
/// one, every step is replayed until the first empty clause. Any failed step
/// among the goal's dependencies makes the run Invalid; any assume step among
/// them makes it Trusted.
inline CheckResult check(TermStore& store, std::span<const Clause> inputs, const Certificate& cert) {
  CheckResult res;
  res.stats.steps_total = cert.steps.size();
  res.stats.rule_counts[static_cast<std::size_t>(Rule::Input)] = inputs.size();
  const std::size_t k = inputs.size();

  auto finish_stats = [&](const Kernel& kernel) {
    res.stats.clause_store_size = kernel.clauses().size();
    for (const Clause& c : kernel.clauses())
      res.stats.max_clause_width = std::max(res.stats.max_clause_width, c.size());
  };
  auto invalid = [&](std::string why, std::optional<ClauseId> at) {
    res.verdict = Verdict::Invalid;
    res.reason = std::move(why);
    res.step = at;
  };

  if (auto err = validate_structure(cert, k)) {
    invalid(err->reason, err->step_index < cert.steps.size()
                             ? std::optional<ClauseId>(cert.steps[err->step_index].id)
                             : std::nullopt);
    return res;
  }

  Kernel kernel(store);
  for (const Clause& c : inputs) kernel.add_input(c);
  const auto deps = step_dependencies(store, cert, k);

  std::optional<ClauseId> goal;
  std::vector<bool> rejected(cert.steps.size(), false);
  std::vector<std::string> reasons(cert.steps.size());

  auto run_step = [&](std::size_t i) {
    const Step& s = cert.steps[i];
    DispatchOutcome o = kernel.replay(s);
    ++res.stats.steps_replayed;
    ++res.stats.rule_counts[static_cast<std::size_t>(s.rule)];
    if (o.rejected) {
      rejected[i] = true;
      reasons[i] = std::move(o.reason);
    }
  };

  if (cert.qed) {
    goal = *cert.qed;
    const auto cone = dependency_cone(deps, k, *goal);
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      if (!cone[i]) {
        kernel.skip();
        continue;
      }
      run_step(i);
      if (rejected[i]) {
        finish_stats(kernel);
        invalid("step " + std::to_string(cert.steps[i].id) + " (" +
                    std::string(rule_name(cert.steps[i].rule)) + "): " + reasons[i],
                cert.steps[i].id);
        return res;
      }
    }
    if (!kernel.clause(*goal).empty()) {
      finish_stats(kernel);
      invalid("qed clause " + std::to_string(*goal) + " is not the empty clause", *goal);
      return res;
    }
  } else {
    for (ClauseId id = 0; id < k && !goal; ++id)
      if (kernel.clause(id).empty()) goal = id;
    for (std::size_t i = 0; i < cert.steps.size() && !goal; ++i) {
      run_step(i);
      if (kernel.clause(cert.steps[i].id).empty()) goal = cert.steps[i].id;
    }
    if (!goal) {
      finish_stats(kernel);
      invalid("empty clause not derived", std::nullopt);
      return res;
    }
    const auto cone = dependency_cone(deps, k, *goal);
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      if (cone[i] && rejected[i]) {
        finish_stats(kernel);
        invalid("step " + std::to_string(cert.steps[i].id) + " (" +
                    std::string(rule_name(cert.steps[i].rule)) + "): " + reasons[i],
                cert.steps[i].id);
        return res;
      }
    }
  }

  finish_stats(kernel);
  const auto cone = dependency_cone(deps, k, *goal);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    if (cone[i] && cert.steps[i].rule == Rule::Assume) {
      res.assumptions.push_back(std::get<AssumePayload>(cert.steps[i].payload).clause);
      res.assumption_ids.push_back(cert.steps[i].id);
    }
  }
  res.verdict = res.assumptions.empty() ? Verdict::Valid : Verdict::Trusted;
  res.reason = "empty clause derived at " + std::to_string(*goal);
  return res;
}

/// Human-readable report: verdict, per-rule counts (all rules, zeros
/// included), store size and the assumptions of a Trusted run.
inline std::string store_stats(const TermStore& store, const CheckResult& r) {
  std::ostringstream os;
  os << "verdict: " << verdict_name(r.verdict) << '\n';
  if (r.verdict == Verdict::Invalid) {
    os << "reason: " << r.reason << '\n';
    if (r.step) os << "step: " << *r.step << '\n';
  }
  os << "steps: " << r.stats.steps_total << " (replayed " << r.stats.steps_replayed << ")\n";
  os << "clause store: " << r.stats.clause_store_size << '\n';
  os << "max clause width: " << r.stats.max_clause_width << '\n';
  os << "rules:\n";
  for (std::size_t i = 0; i < kNumRules; ++i)
    os << "  " << kRuleNames[i] << " = " << r.stats.rule_counts[i] << '\n';
  if (!r.assumptions.empty()) {
    os << "assumptions:\n";
    for (std::size_t i = 0; i < r.assumptions.size(); ++i)
      os << "  " << r.assumption_ids[i] << ": " << to_string(store, r.assumptions[i]) << '\n';
  }
  return os.str();
}

}  // namespace certkernel
