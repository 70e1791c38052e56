// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "formal/generators.hpp"

#include "core/error.hpp"
#include "formal/checker.hpp"

namespace exm::fm {
namespace {

const kl::Expr& resolved(const Ref& r, const Signature& sig) {
  const kl::Expr* e = resolve(r, sig);
  if (e == nullptr) throw Error(ErrorCode::invalid_argument, "undefined constant " + r.name->name);
  return *e;
}

ProofPtr single(SentPtr claim, Rule rule) {
  auto p = std::make_shared<Proof>();
  p->lines.push_back(Line{std::move(claim), std::move(rule)});
  return p;
}

}  // namespace

ProofPtr prove_halted_by_trace(const Ref& r, const Signature& sig) {
  const kl::Expr& e = resolved(r, sig);
  kl::Outcome o = kl::run(ExprPtr(&e), sig.defs(), sig.caps().fuel_cap);
  if (o.kind != kl::OutcomeKind::value) {
    throw Error(ErrorCode::not_observed_halting, "no halting observed within " + std::to_string(sig.caps().fuel_cap) + " steps");
  }
  Rule trace;
  trace.kind = RuleKind::ax_trace;
  trace.ref = r;
  trace.a = o.steps;
  Rule halts;
  halts.kind = RuleKind::r_halts;
  halts.a = 0;
  auto p = std::make_shared<Proof>();
  p->lines.push_back(Line{Sentence::halted_within(r, o.steps), std::move(trace)});
  p->lines.push_back(Line{Sentence::halts(r), std::move(halts)});
  return p;
}

ProofPtr prove_not_halted_within(const Ref& r, const Natural& n, const Signature& sig) {
  const kl::Expr& e = resolved(r, sig);
  if (n > sig.caps().fuel_cap) throw Error(ErrorCode::budget_exceeded, "step count exceeds the fuel cap");
  kl::Outcome o = kl::run(ExprPtr(&e), sig.defs(), to_u64(n));
  if (o.kind != kl::OutcomeKind::out_of_fuel) {
    throw Error(ErrorCode::already_halted, "stopped after " + std::to_string(o.steps) + " steps");
  }
  Rule rule;
  rule.kind = RuleKind::ax_running;
  rule.ref = r;
  rule.a = n;
  return single(Sentence::not_halted_within(r, n), std::move(rule));
}

ProofPtr prove_not_halts_by_cycle(const Ref& r, const Signature& sig) {
  const kl::Expr& e = resolved(r, sig);
  auto w = kl::find_cycle(ExprPtr(&e), sig.defs(), sig.caps().fuel_cap);
  if (!w) throw Error(ErrorCode::no_cycle_found, "no repeated state within the fuel cap");
  Rule rule;
  rule.kind = RuleKind::ax_cycle;
  rule.ref = r;
  rule.a = w->i;
  rule.b = w->j;
  return single(Sentence::not_halts(r), std::move(rule));
}

ProofPtr prove_no_proof_before(const SentPtr& s, const Natural& k, const Signature& sig) {
  if (k > sig.caps().enum_cap) throw Error(ErrorCode::budget_exceeded, "bound exceeds the enumeration cap");
  if (sig.caps().depth_cap <= 1) throw Error(ErrorCode::budget_exceeded, "depth cap leaves no room to enumerate");
  if (auto hit = first_proof(*s, k, sig, 1)) {
    throw Error(ErrorCode::found_proof, "candidate " + to_decimal(*hit) + " proves the sentence", to_decimal(*hit));
  }
  Rule rule;
  rule.kind = RuleKind::ax_enum;
  rule.sent = s;
  rule.a = k;
  return single(Sentence::no_proof_before(s, k), std::move(rule));
}

std::string_view decision_name(Decision d) noexcept {
  switch (d) {
    case Decision::halts: return "halts";
    case Decision::does_not_halt: return "does-not-halt";
    case Decision::exhausted: return "exhausted";
  }
  return "exhausted";
}

DecisionResult decide_by_search(const Ref& r, const Natural& k, const Signature& sig) {
  if (k > sig.caps().enum_cap) throw Error(ErrorCode::budget_exceeded, "bound exceeds the enumeration cap");
  auto yes = first_proof(*Sentence::halts(r), k, sig, 0);
  auto no = first_proof(*Sentence::not_halts(r), yes ? *yes : k, sig, 0);
  if (no) return DecisionResult{Decision::does_not_halt, no};
  if (yes) return DecisionResult{Decision::halts, yes};
  return DecisionResult{};
}

}  // namespace exm::fm
