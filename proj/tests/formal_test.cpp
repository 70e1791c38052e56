// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include <functional>
#include <set>

#include "doctest.h"

#include "core/error.hpp"
#include "formal/checker.hpp"
#include "formal/generators.hpp"
#include "formal/mutations.hpp"
#include "formal/search.hpp"
#include "kernel/expr.hpp"

using namespace exm;
using namespace exm::fm;

namespace {

const char* kOmega = "(call (lambda (x) (call x x)) (lambda (x) (call x x)))";

Ref lit(const char* src) { return Ref::literal(kl::parse_expr(src)); }
Ref cst(const char* name) { return Ref::constant(kl::intern(name)); }

Signature small_defs() {
  return Signature(kl::DefsTable({{kl::intern("two"), kl::parse_expr("(succ (succ 0))")},
                                  {kl::intern("spin"), kl::parse_expr(kOmega)}}),
                   {}, Caps{});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::defect;
}

}  // namespace

TEST_CASE("sentences round-trip through text") {
  for (const char* text : {"(halts (const p))", "(not-halts (lit (quote a)))", "(halted-within (const two) 3)",
                           "(not-halted-within (lit 0) 12)", "(no-proof-before (halts (const p)) 40)",
                           "(implies (con-f) (not-halts (const p)))", "(con-f)"}) {
    CHECK(render(*parse_sentence(text)) == text);
  }
  CHECK(code_of([] { parse_sentence("(halts)"); }) == ErrorCode::syntax);
  CHECK(code_of([] { parse_sentence("(halts (const p)"); }) == ErrorCode::syntax);
}

TEST_CASE("negation swaps the halting atoms and nothing else") {
  const SentPtr h = parse_sentence("(halts (const p))");
  CHECK(render(*negate(*h)) == "(not-halts (const p))");
  CHECK(sentence_equal(*negate(*negate(*h)), *h));
  CHECK(render(*negate(*parse_sentence("(halted-within (lit 0) 4)"))) == "(not-halted-within (lit 0) 4)");
  CHECK(code_of([] { negate(*parse_sentence("(con-f)")); }) == ErrorCode::unsupported_negation);
  CHECK(code_of([] { negate(*parse_sentence("(implies (con-f) (con-f))")); }) == ErrorCode::unsupported_negation);
}

TEST_CASE("signatures round-trip and reject zero caps") {
  const Signature s = small_defs();
  CHECK(render(parse_signature(render(s))) == render(s));
  CHECK(render(Signature()) == "(signature (defs) (axioms) (caps 100000 3 100000))");
  CHECK(code_of([] { parse_signature("(signature (defs) (axioms) (caps 0 3 100))"); }) == ErrorCode::syntax);
  CHECK(code_of([] { Signature(kl::DefsTable(), {}, Caps{100, 0, 100}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("the four generators produce valid proofs") {
  const Signature sig = small_defs();
  const ProofPtr trace = prove_halted_by_trace(cst("two"), sig);
  CHECK(trace->lines.size() == 2);
  CHECK(check_proof(*trace, *Sentence::halts(cst("two")), sig).ok());

  const ProofPtr running = prove_not_halted_within(cst("spin"), 40, sig);
  CHECK(check_proof(*running, *Sentence::not_halted_within(cst("spin"), 40), sig).ok());

  const ProofPtr cycle = prove_not_halts_by_cycle(lit(kOmega), sig);
  CHECK(check_proof(*cycle, *Sentence::not_halts(lit(kOmega)), sig).ok());
  // Hand trace of the self-application: the state after 5 transitions
  // comes back after 5 more.
  CHECK(render(*cycle) == std::string("(proof (line (not-halts (lit ") + kOmega + ")) (ax-cycle (lit " + kOmega +
                              ") 5 10)))");

  const SentPtr goal = parse_sentence("(halts (const spin))");
  const ProofPtr none = prove_no_proof_before(goal, 30, sig);
  CHECK(check_proof(*none, *Sentence::no_proof_before(goal, 30), sig).ok());
}

TEST_CASE("generators refuse claims their observation does not support") {
  const Signature sig = small_defs();
  CHECK(code_of([&] { prove_halted_by_trace(lit(kOmega), sig.with_caps(Caps{100000, 3, 1000})); }) ==
        ErrorCode::not_observed_halting);
  CHECK(code_of([&] { prove_not_halted_within(cst("two"), 50, sig); }) == ErrorCode::already_halted);
  CHECK(code_of([&] { prove_not_halts_by_cycle(cst("two"), sig); }) == ErrorCode::no_cycle_found);
  const SentPtr con = Sentence::con();
  try {
    prove_no_proof_before(con, 1, sig.with_axioms({con}));
    FAIL("expected found_proof");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::found_proof);
    CHECK(e.detail() == "0");
  }
  CHECK(code_of([&] { prove_no_proof_before(con, 200000, sig); }) == ErrorCode::budget_exceeded);
}

TEST_CASE("trace proofs cite the exact step count") {
  const Signature sig;
  const ProofPtr p = prove_halted_by_trace(lit("(succ (succ 0))"), sig);
  // The kernel test pins (succ (succ 0)) at 5 steps.
  CHECK(render(*p) ==
        "(proof (line (halted-within (lit (succ (succ 0))) 5) (ax-trace (lit (succ (succ 0))) 5)) "
        "(line (halts (lit (succ (succ 0)))) (r-halts 0)))");
  const ProofPtr off_by_one = parse_proof(
      "(proof (line (halted-within (lit (succ (succ 0))) 4) (ax-trace (lit (succ (succ 0))) 4)))");
  CHECK(check_proof(*off_by_one, *parse_sentence("(halted-within (lit (succ (succ 0))) 4)"), sig).kind ==
        VerdictKind::invalid);
}

TEST_CASE("every mutation class is rejected for the original goal") {
  const Signature sig = small_defs();
  std::vector<std::pair<ProofPtr, SentPtr>> cases = {
      {prove_halted_by_trace(cst("two"), sig), Sentence::halts(cst("two"))},
      {prove_not_halted_within(cst("spin"), 9, sig), Sentence::not_halted_within(cst("spin"), 9)},
      {prove_not_halts_by_cycle(cst("spin"), sig), Sentence::not_halts(cst("spin"))},
      {prove_no_proof_before(Sentence::halts(cst("spin")), 5, sig),
       Sentence::no_proof_before(Sentence::halts(cst("spin")), 5)},
  };
  for (const auto& [proof, goal] : cases) {
    CAPTURE(render(*proof));
    const auto ms = mutants(*proof);
    std::set<std::string> classes;
    for (const Mutant& m : ms) {
      CAPTURE(m.mutation);
      classes.insert(m.mutation);
      CHECK_FALSE(check_proof(*m.proof, *goal, sig).ok());
    }
    CHECK(classes.size() >= 4);
    for (const char* required : {"claim-polarity", "claim-ref", "rule-kind", "rule-argument"}) {
      CHECK(classes.count(required) == 1);
    }
  }
}

TEST_CASE("budget verdicts are distinct from invalid ones") {
  const Signature sig = small_defs().with_caps(Caps{100000, 3, 20});
  const ProofPtr p = parse_proof("(proof (line (not-halted-within (const spin) 21) (ax-running (const spin) 21)))");
  const Verdict v = check_proof(*p, *parse_sentence("(not-halted-within (const spin) 21)"), sig);
  CHECK(v.kind == VerdictKind::budget);
  CHECK(v.line == 0);
  const ProofPtr fits = parse_proof("(proof (line (not-halted-within (const spin) 20) (ax-running (const spin) 20)))");
  CHECK(check_proof(*fits, *parse_sentence("(not-halted-within (const spin) 20)"), sig).ok());
}

TEST_CASE("a valid proof of a different sentence is rejected") {
  const Signature sig = small_defs();
  const ProofPtr p = prove_halted_by_trace(cst("two"), sig);
  const Verdict v = check_proof(*p, *parse_sentence("(halts (const spin))"), sig);
  CHECK(v.kind == VerdictKind::invalid);
}

TEST_CASE("injected axioms are valid only in the signature that carries them") {
  const SentPtr g = parse_sentence("(not-halts (const p))");
  const ProofPtr q = parse_proof("(proof (line (not-halts (const p)) (ax-inj)))");
  CHECK_FALSE(check_proof(*q, *g, Signature()).ok());
  CHECK(check_proof(*q, *g, Signature().with_axioms({g})).ok());
}

TEST_CASE("modus ponens needs both premises earlier in the proof") {
  const SentPtr con = Sentence::con();
  const SentPtr g = parse_sentence("(not-halts (const p))");
  const SentPtr imp = Sentence::implies(con, g);
  const Signature sig = Signature().with_axioms({con, imp});
  const ProofPtr ok = parse_proof(
      "(proof (line (con-f) (ax-inj)) (line (implies (con-f) (not-halts (const p))) (ax-inj)) "
      "(line (not-halts (const p)) (r-mp 0 1)))");
  CHECK(check_proof(*ok, *g, sig).ok());
  const ProofPtr forward = parse_proof(
      "(proof (line (con-f) (ax-inj)) (line (not-halts (const p)) (r-mp 0 2)) "
      "(line (implies (con-f) (not-halts (const p))) (ax-inj)))");
  CHECK_FALSE(check_proof(*forward, *imp, sig).ok());
}

TEST_CASE("rank and unrank are inverse over the first proofs") {
  for (unsigned n = 0; n < 3000; ++n) {
    const ProofPtr p = unrank_proof(n);
    REQUIRE(rank_proof(*p) == n);
    REQUIRE(proof_equal(*parse_proof(render(*p)), *p));
  }
}

TEST_CASE("frozen ranks of the searcher axiom proofs") {
  CHECK(rank_proof(*parse_proof("(proof (line (not-halts (const p)) (ax-inj)))")) == 47827);
  CHECK(rank_proof(*parse_proof("(proof (line (not-halts (const b)) (ax-inj)))")) == 61);
  CHECK(rank_proof(*parse_proof("(proof (line (halts (const b)) (ax-inj)))")) == 46);
  CHECK(rank_proof(*parse_proof("(proof (line (con-f) (ax-inj)))")) == 0);
}

TEST_CASE("directed search agrees with the linear scan") {
  const Signature sig = small_defs().with_axioms({parse_sentence("(halts (const b))")});
  for (const char* goal : {"(halts (const b))", "(not-halts (const b))", "(halts (const spin))", "(not-halts (const spin))", "(halts (lit (quote a)))",
                           "(halted-within (lit ()) 1)", "(not-halted-within (lit ()) 0)", "(con-f)",
                           "(halts (const two))"}) {
    CAPTURE(goal);
    const SentPtr s = parse_sentence(goal);
    const auto linear = first_proof_linear(*s, 20000, sig, 0);
    const auto directed = directed_first_proof(*s, 20000, sig, 0);
    REQUIRE(linear.has_value() == directed.has_value());
    if (linear) CHECK(*linear == *directed);
  }
}

TEST_CASE("search results do not depend on the worker count") {
  const Signature sig = small_defs();
  const SentPtr s = parse_sentence("(not-halted-within (lit ()) 0)");
  const SearchSettings saved = search_settings();
  std::vector<std::optional<Natural>> results;
  for (unsigned threads : {1u, 2u, 4u}) {
    set_search_settings(SearchSettings{saved.linear_limit, threads});
    results.push_back(first_proof_linear(*s, 20000, sig, 0));
  }
  set_search_settings(saved);
  REQUIRE(results[0].has_value());
  CHECK(results[0] == results[1]);
  CHECK(results[0] == results[2]);
  CHECK(check_proof(*unrank_proof(*results[0]), *s, sig).ok());
}

TEST_CASE("enumeration axioms respect the depth cap") {
  const Signature sig = small_defs().with_caps(Caps{100000, 1, 100000});
  const SentPtr inner = parse_sentence("(halts (const spin))");
  const SentPtr outer = Sentence::no_proof_before(Sentence::no_proof_before(inner, 2), 2);
  const ProofPtr p = parse_proof("(proof (line " + render(*outer) + " (ax-enum " +
                                 render(*Sentence::no_proof_before(inner, 2)) + " 2)))");
  CHECK(check_proof(*p, *outer, sig).kind == VerdictKind::budget);
}
