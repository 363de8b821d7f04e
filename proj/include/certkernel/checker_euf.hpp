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

// Replays ground equational justifications for EUF theory lemmas.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "certkernel/core.hpp"

namespace certkernel {

enum class EqRule : std::uint8_t { Refl, Sym, Trans, Cong, Hyp };

/// One justification step deriving `lhs = rhs`.
///   Refl        lhs == rhs
///   Sym k       step k derived (rhs, lhs)
///   Trans k1 k2 step k1 derived (lhs, m), step k2 derived (m, rhs)
///   Cong f ks   lhs = f(u..), rhs = f(v..), step ks[i] derived (u_i, v_i)
///   Hyp i       lemma literal i is (not (= lhs rhs)) or (not (= rhs lhs))
struct EqStep {
  TermId lhs = kTrue;
  TermId rhs = kTrue;
  EqRule rule = EqRule::Refl;
  std::vector<std::uint32_t> refs;
  FunId fun = 0;

  friend bool operator==(const EqStep&, const EqStep&) = default;
};

struct EufPayload {
  Clause lemma;
  std::vector<EqStep> justification;

  friend bool operator==(const EufPayload&, const EufPayload&) = default;
};

/// Returns `p.lemma` if the justification derives its single positive
/// equality from its negated-equality hypotheses, else the trivially true clause.
inline Clause check_euf(const TermStore& store, const EufPayload& p) {
  const Clause reject = trivially_true_clause();
  std::optional<Literal> conclusion;
  for (Literal l : p.lemma) {
    if (!store.valid(l.atom()) || store.kind(l.atom()) != Kind::Eq) return reject;
    if (l.positive()) {
      if (conclusion) return reject;
      conclusion = l;
    }
  }
  if (!conclusion || p.justification.empty()) return reject;

  std::vector<std::pair<TermId, TermId>> derived;
  derived.reserve(p.justification.size());
  for (std::size_t k = 0; k < p.justification.size(); ++k) {
    const EqStep& s = p.justification[k];
    if (!store.valid(s.lhs) || !store.valid(s.rhs)) return reject;
    auto earlier = [&](std::uint32_t r) { return r < k; };
    bool ok = false;
    switch (s.rule) {
      case EqRule::Refl:
        ok = s.refs.empty() && s.lhs == s.rhs;
        break;
      case EqRule::Sym:
        ok = s.refs.size() == 1 && earlier(s.refs[0]) &&
             derived[s.refs[0]] == std::pair{s.rhs, s.lhs};
        break;
      case EqRule::Trans:
        ok = s.refs.size() == 2 && earlier(s.refs[0]) && earlier(s.refs[1]) &&
             derived[s.refs[0]].first == s.lhs &&
             derived[s.refs[0]].second == derived[s.refs[1]].first &&
             derived[s.refs[1]].second == s.rhs;
        break;
      case EqRule::Cong: {
        const Node& l = store.node(s.lhs);
        const Node& r = store.node(s.rhs);
        if (l.kind != Kind::Apply || r.kind != Kind::Apply || l.fun != s.fun || r.fun != s.fun ||
            s.refs.size() != l.args.size() || l.args.size() != r.args.size())
          break;
        ok = true;
        for (std::size_t i = 0; i < s.refs.size() && ok; ++i)
          ok = earlier(s.refs[i]) && derived[s.refs[i]] == std::pair{l.args[i], r.args[i]};
        break;
      }
      case EqRule::Hyp: {
        if (s.refs.size() != 1 || s.refs[0] >= p.lemma.size()) break;
        const Literal h = p.lemma[s.refs[0]];
        if (h.positive()) break;
        const auto& eq = store.args(h.atom());
        ok = (eq[0] == s.lhs && eq[1] == s.rhs) || (eq[0] == s.rhs && eq[1] == s.lhs);
        break;
      }
    }
    if (!ok) return reject;
    derived.emplace_back(s.lhs, s.rhs);
  }

  const auto& goal = store.args(conclusion->atom());
  const auto last = derived.back();
  if (last == std::pair{goal[0], goal[1]} || last == std::pair{goal[1], goal[0]}) return p.lemma;
  return reject;
}

}  // namespace certkernel
