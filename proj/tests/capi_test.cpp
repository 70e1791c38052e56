// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

#include "doctest.h"

#include "exmachina.h"

namespace {

struct Free {
  void operator()(exm_sentence* p) const { exm_sentence_free(p); }
  void operator()(exm_proof* p) const { exm_proof_free(p); }
  void operator()(exm_signature* p) const { exm_signature_free(p); }
  void operator()(exm_bundle* p) const { exm_bundle_free(p); }
  void operator()(exm_counter_program* p) const { exm_counter_free(p); }
  void operator()(exm_formula* p) const { exm_formula_free(p); }
};

template <class T>
using Own = std::unique_ptr<T, Free>;

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  exm_string_free(s);
  return out;
}

Own<exm_sentence> sentence(const char* text) {
  exm_sentence* s = nullptr;
  REQUIRE(exm_sentence_parse(text, &s) == EXM_OK);
  return Own<exm_sentence>(s);
}

Own<exm_proof> proof(const char* text) {
  exm_proof* p = nullptr;
  REQUIRE(exm_proof_parse(text, &p) == EXM_OK);
  return Own<exm_proof>(p);
}

Own<exm_signature> empty_signature() {
  exm_signature* s = nullptr;
  REQUIRE(exm_signature_new(&s) == EXM_OK);
  return Own<exm_signature>(s);
}

Own<exm_bundle> bundle(exm_bundle_kind kind, const exm_signature* base) {
  exm_bundle* b = nullptr;
  REQUIRE(exm_bundle_build(kind, base, &b) == EXM_OK);
  return Own<exm_bundle>(b);
}

Own<exm_signature> with_axiom(const exm_signature* sig, const exm_sentence* ax) {
  exm_signature* out = nullptr;
  REQUIRE(exm_signature_add_axiom(sig, ax, &out) == EXM_OK);
  return Own<exm_signature>(out);
}

}  // namespace

TEST_CASE("status names and version are available") {
  CHECK(std::strlen(exm_version()) > 0);
  CHECK(std::string(exm_status_name(EXM_OK)) == "ok");
  CHECK(std::string(exm_status_name(EXM_E_BUDGET_EXCEEDED)) == "budget-exceeded");
  CHECK(std::string(exm_status_name(EXM_E_NULL_ARGUMENT)) == "null-argument");
}

TEST_CASE("errors are reported through codes and the last-error slot") {
  exm_sentence* s = nullptr;
  CHECK(exm_sentence_parse("(halts", &s) == EXM_E_SYNTAX);
  CHECK(s == nullptr);
  CHECK(std::strlen(exm_last_error()) > 0);
  CHECK(exm_sentence_parse(nullptr, &s) == EXM_E_NULL_ARGUMENT);
  CHECK(exm_sentence_parse("(con-f)", nullptr) == EXM_E_NULL_ARGUMENT);
  CHECK(exm_sentence_parse("(con-f)", &s) == EXM_OK);
  CHECK(std::string(exm_last_error()).empty());
  exm_sentence_free(s);
  exm_sentence_free(nullptr);
}

TEST_CASE("sentences and proofs round-trip through text") {
  const auto s = sentence("(not-halted-within (lit ()) 3)");
  CHECK(take([&] { char* o = nullptr; REQUIRE(exm_sentence_render(s.get(), &o) == EXM_OK); return o; }()) ==
        "(not-halted-within (lit ()) 3)");
  exm_sentence* n = nullptr;
  REQUIRE(exm_sentence_negate(s.get(), &n) == EXM_OK);
  const Own<exm_sentence> neg(n);
  CHECK(exm_sentence_equal(neg.get(), sentence("(halted-within (lit ()) 3)").get()) == 1);
  exm_sentence* bad = nullptr;
  CHECK(exm_sentence_negate(sentence("(con-f)").get(), &bad) == EXM_E_UNSUPPORTED_NEGATION);

  const auto p = proof("(proof (line (con-f) (ax-inj)))");
  CHECK(exm_proof_line_count(p.get()) == 1);
  char* rule = nullptr;
  REQUIRE(exm_proof_rule(p.get(), 0, &rule) == EXM_OK);
  CHECK(take(rule) == "ax-inj");
  CHECK(exm_proof_rule(p.get(), 1, &rule) == EXM_E_INVALID_ARGUMENT);
}

TEST_CASE("ranks round-trip and match the frozen values") {
  const auto p = proof("(proof (line (not-halts (const p)) (ax-inj)))");
  char* rank = nullptr;
  REQUIRE(exm_proof_rank(p.get(), &rank) == EXM_OK);
  CHECK(take(rank) == "47827");
  exm_proof* back = nullptr;
  REQUIRE(exm_proof_unrank("47827", &back) == EXM_OK);
  const Own<exm_proof> owned(back);
  char* text = nullptr;
  REQUIRE(exm_proof_render(owned.get(), &text) == EXM_OK);
  CHECK(take(text) == "(proof (line (not-halts (const p)) (ax-inj)))");
  CHECK(exm_proof_unrank("-1", &back) == EXM_E_INVALID_ARGUMENT);
}

TEST_CASE("checking returns verdicts with reasons") {
  const auto sig = empty_signature();
  exm_proof* t = nullptr;
  REQUIRE(exm_prove_halted_by_trace("(lit (succ 0))", sig.get(), &t) == EXM_OK);
  const Own<exm_proof> trace(t);
  exm_verdict v{};
  REQUIRE(exm_check(trace.get(), sentence("(halts (lit (succ 0)))").get(), sig.get(), &v) == EXM_OK);
  CHECK(v.kind == EXM_VALID);
  REQUIRE(exm_check(trace.get(), sentence("(not-halts (lit (succ 0)))").get(), sig.get(), &v) == EXM_OK);
  CHECK(v.kind == EXM_INVALID);
  CHECK(std::strlen(v.reason) > 0);
  exm_proof* none = nullptr;
  CHECK(exm_prove_halted_by_trace("(lit (call (lambda (x) (call x x)) (lambda (x) (call x x))))", sig.get(),
                                  &none) == EXM_E_NOT_OBSERVED_HALTING);
}

TEST_CASE("search finds injected axioms and reports exhaustion") {
  const auto base = empty_signature();
  const auto goal = sentence("(con-f)");
  const auto sig = with_axiom(base.get(), goal.get());
  int found = 0;
  char* rank = nullptr;
  REQUIRE(exm_search(goal.get(), sig.get(), "1", &found, &rank) == EXM_OK);
  CHECK(found == 1);
  CHECK(take(rank) == "0");
  REQUIRE(exm_search(goal.get(), base.get(), "100", &found, &rank) == EXM_OK);
  CHECK(found == 0);
  CHECK(rank == nullptr);
  CHECK(exm_search(goal.get(), base.get(), "200000", &found, &rank) == EXM_E_INVALID_ARGUMENT);
}

TEST_CASE("bundles build, verify, flip and export") {
  const auto base = empty_signature();
  const auto plain = bundle(EXM_GODEL, base.get());
  int ok = 0;
  REQUIRE(exm_bundle_verify(plain.get(), &ok) == EXM_OK);
  CHECK(ok == 1);
  char* name = nullptr;
  REQUIRE(exm_bundle_constant(plain.get(), &name) == EXM_OK);
  CHECK(take(name) == "p");
  exm_sentence* s = nullptr;
  REQUIRE(exm_bundle_sentence(plain.get(), &s) == EXM_OK);
  const Own<exm_sentence> target(s);

  const auto plus = bundle(EXM_GODEL, with_axiom(base.get(), target.get()).get());
  const auto q = proof("(proof (line (not-halts (const p)) (ax-inj)))");
  exm_proof* f = nullptr;
  REQUIRE(exm_godel_to_neg(q.get(), plus.get(), &f) == EXM_OK);
  const Own<exm_proof> flipped(f);
  exm_signature* ps = nullptr;
  REQUIRE(exm_bundle_signature(plus.get(), &ps) == EXM_OK);
  const Own<exm_signature> plus_sig(ps);
  exm_verdict v{};
  REQUIRE(exm_check(flipped.get(), sentence("(halts (const p))").get(), plus_sig.get(), &v) == EXM_OK);
  CHECK(v.kind == EXM_VALID);
  CHECK(exm_godel_to_neg(proof("(proof (line (con-f) (ax-inj)))").get(), plus.get(), &f) ==
        EXM_E_NOT_A_PROOF_OF_TARGET);

  exm_bundle* clash = nullptr;
  CHECK(exm_bundle_build(EXM_GODEL, plus_sig.get(), &clash) == EXM_E_NAME_CLASH);

  const auto dir = std::filesystem::temp_directory_path() / "exm_capi_test";
  std::filesystem::remove_all(dir);
  const auto rosser = bundle(EXM_ROSSER, base.get());
  REQUIRE(exm_bundle_export(rosser.get(), dir.c_str()) == EXM_OK);
  CHECK(std::filesystem::exists(dir / "b.kl"));
  CHECK(std::filesystem::exists(dir / "signature"));
  CHECK(std::filesystem::exists(dir / "sentence"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("the diagonal falsifier contradicts shipped oracles") {
  REQUIRE(exm_oracle_count() >= 5);
  char* src = nullptr;
  REQUIRE(exm_oracle_source(0, &src) == EXM_OK);
  char* label = nullptr;
  REQUIRE(exm_oracle_label(0, &label) == EXM_OK);
  exm_falsification r{};
  char* line = nullptr;
  REQUIRE(exm_falsify_oracle("(lambda (a) ())", "always-reject", 100000, &r, &line) == EXM_OK);
  CHECK(r.contradiction == EXM_CONTRADICTION_YES);
  CHECK(r.observed == EXM_OBSERVED_HALT);
  CHECK(take(line) == "oracle=always-reject verdict=reject observed=halt contradiction=yes");
  CHECK(exm_falsify_oracle("(lambda (a) (head 0))", "faulting", 100000, &r, nullptr) == EXM_E_ORACLE_NOT_TOTAL);
  exm_string_free(src);
  exm_string_free(label);
}

TEST_CASE("the object checker runs through the library") {
  char* src = nullptr;
  REQUIRE(exm_object_source(EXM_OBJECT_CHECKER, &src) == EXM_OK);
  CHECK(take(src).rfind("(", 0) == 0);
  const auto sig = empty_signature();
  const auto p = proof("(proof (line (con-f) (ax-inj)))");
  int timed_out = 0;
  exm_verdict v{};
  std::uint64_t steps = 0;
  REQUIRE(exm_object_check(p.get(), sentence("(con-f)").get(), sig.get(), 100000000, &timed_out, &v, &steps) ==
          EXM_OK);
  CHECK(timed_out == 0);
  CHECK(v.kind == EXM_INVALID);
  CHECK(steps > 0);
  REQUIRE(exm_object_check(p.get(), sentence("(con-f)").get(), sig.get(), 5, &timed_out, &v, &steps) == EXM_OK);
  CHECK(timed_out == 1);
}

TEST_CASE("counter programs and formulas work through the library") {
  exm_counter_program* cp = nullptr;
  REQUIRE(exm_counter_parse("inc 0\nhalt\n", &cp) == EXM_OK);
  const Own<exm_counter_program> prog(cp);
  CHECK(exm_counter_size(prog.get()) == 2);
  CHECK(exm_counter_registers(prog.get()) == 1);
  exm_counter_result r{};
  REQUIRE(exm_counter_run(prog.get(), nullptr, 0, 10, &r) == EXM_OK);
  CHECK(r.halted == 1);
  CHECK(r.steps == 2);
  const std::uint64_t regs[] = {1, 2};
  char* packed = nullptr;
  REQUIRE(exm_encode_config(3, regs, 2, 4, &packed) == EXM_OK);
  CHECK(take(packed) == "531");
  CHECK(exm_encode_config(3, regs, 2, 1, &packed) == EXM_E_WIDTH_OVERFLOW);

  exm_formula* f = nullptr;
  REQUIRE(exm_compile_halts_within(prog.get(), nullptr, 0, 2, 16, &f) == EXM_OK);
  const Own<exm_formula> within(f);
  int result = -1;
  REQUIRE(exm_formula_eval(within.get(), nullptr, nullptr, 0, nullptr, &result) == EXM_OK);
  CHECK(result == 1);

  REQUIRE(exm_formula_parse("(exists y (= (+ x 1) y))", &f) == EXM_OK);
  const Own<exm_formula> open(f);
  const char* names[] = {"x"};
  const char* values[] = {"2"};
  CHECK(exm_formula_eval(open.get(), names, values, 1, nullptr, &result) == EXM_E_UNBOUNDED_QUANTIFIER);
  REQUIRE(exm_formula_eval(open.get(), names, values, 1, "4", &result) == EXM_OK);
  CHECK(result == 1);
  REQUIRE(exm_formula_eval(open.get(), names, values, 1, "3", &result) == EXM_OK);
  CHECK(result == 0);
  CHECK(exm_formula_eval(open.get(), nullptr, nullptr, 0, "3", &result) == EXM_E_INVALID_ARGUMENT);
}
