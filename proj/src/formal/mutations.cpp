// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "formal/mutations.hpp"

#include "core/error.hpp"

namespace exm::fm {
namespace {

Ref other_ref(const Ref& r) {
  static const Ref a = Ref::literal(kl::parse_expr("(quote mutant)"));
  static const Ref b = Ref::literal(kl::parse_expr("(quote other-mutant)"));
  if (!r.is_const && r.expr && kl::render(*r.expr) == kl::render(*a.expr)) return b;
  return a;
}

SentPtr with_ref(const Sentence& s, const Ref& r) {
  switch (s.kind()) {
    case SentKind::halts: return Sentence::halts(r);
    case SentKind::not_halts: return Sentence::not_halts(r);
    case SentKind::halted_within: return Sentence::halted_within(r, s.n());
    case SentKind::not_halted_within: return Sentence::not_halted_within(r, s.n());
    case SentKind::no_proof_before: return Sentence::no_proof_before(with_ref(*s.target(), r), s.n());
    case SentKind::implies: return Sentence::implies(s.lhs(), with_ref(*s.rhs(), r));
    case SentKind::con: return Sentence::halts(r);
  }
  return nullptr;
}

SentPtr flipped(const Sentence& s) {
  switch (s.kind()) {
    case SentKind::no_proof_before: return Sentence::no_proof_before(flipped(*s.target()), s.n());
    case SentKind::implies: return Sentence::implies(s.lhs(), flipped(*s.rhs()));
    case SentKind::con: return Sentence::not_halts(other_ref(Ref{}));
    default: return negate(s);
  }
}

bool has_number(const Sentence& s) {
  return s.kind() == SentKind::halted_within || s.kind() == SentKind::not_halted_within ||
         s.kind() == SentKind::no_proof_before;
}

SentPtr bumped(const Sentence& s) {
  switch (s.kind()) {
    case SentKind::halted_within: return Sentence::halted_within(s.ref(), s.n() + 1);
    case SentKind::not_halted_within: return Sentence::not_halted_within(s.ref(), s.n() + 1);
    default: return Sentence::no_proof_before(s.target(), s.n() + 1);
  }
}

// Replaces the rule with one of a different kind that cannot justify the
// same claim.
Rule other_kind(const Rule& r, const Sentence& claim) {
  Rule out = r;
  switch (r.kind) {
    case RuleKind::ax_trace: out.kind = RuleKind::ax_running; break;
    case RuleKind::ax_running: out.kind = RuleKind::ax_trace; break;
    case RuleKind::ax_inj:
      out.kind = RuleKind::ax_enum;
      out.sent = Sentence::halts(other_ref(Ref{}));
      out.a = 0;
      break;
    default:
      out = Rule{};
      out.kind = RuleKind::ax_trace;
      out.ref = claim.kind() == SentKind::no_proof_before || claim.kind() == SentKind::implies ||
                        claim.kind() == SentKind::con
                    ? other_ref(Ref{})
                    : claim.ref();
      out.a = 0;
  }
  return out;
}

Rule other_argument(const Rule& r, const Proof& p) {
  Rule out = r;
  switch (r.kind) {
    case RuleKind::ax_trace:
    case RuleKind::ax_running:
    case RuleKind::ax_enum: out.a = r.a + 1; break;
    case RuleKind::ax_cycle: out.b = r.b + 1; break;
    case RuleKind::r_halts:
    case RuleKind::r_rosser_halt:
    case RuleKind::r_rosser_loop: out.a = r.a + 1; break;
    case RuleKind::r_mp: out.a = r.b; out.b = r.a; break;
    case RuleKind::r_finds_halt: {
      std::vector<Mutant> inner = mutants(*r.proof);
      out.proof = inner.front().proof;
      break;
    }
    case RuleKind::ax_inj:
      out.kind = RuleKind::r_halts;
      out.a = p.lines.size();
      break;
  }
  return out;
}

ProofPtr with_last(const Proof& p, SentPtr claim, Rule rule) {
  auto out = std::make_shared<Proof>(p);
  out->lines.back() = Line{std::move(claim), std::move(rule)};
  return out;
}

}  // namespace

std::vector<Mutant> mutants(const Proof& p) {
  if (p.lines.empty()) throw Error(ErrorCode::invalid_argument, "cannot mutate an empty proof");
  const Line& last = p.lines.back();
  const Sentence& claim = *last.claim;
  std::vector<Mutant> out;
  out.push_back({"claim-polarity", with_last(p, flipped(claim), last.rule)});
  const Ref probe = claim.kind() == SentKind::no_proof_before ? claim.target()->ref()
                    : claim.kind() == SentKind::implies        ? claim.rhs()->ref()
                                                               : claim.ref();
  out.push_back({"claim-ref", with_last(p, with_ref(claim, other_ref(probe)), last.rule)});
  if (has_number(claim)) out.push_back({"claim-number", with_last(p, bumped(claim), last.rule)});
  out.push_back({"rule-kind", with_last(p, last.claim, other_kind(last.rule, claim))});
  out.push_back({"rule-argument", with_last(p, last.claim, other_argument(last.rule, p))});
  if (p.lines.size() > 1) {
    auto t = std::make_shared<Proof>(p);
    t->lines.erase(t->lines.begin());
    out.push_back({"truncate", t});
  }
  return out;
}

}  // namespace exm::fm
