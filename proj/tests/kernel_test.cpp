// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "core/error.hpp"
#include "kernel/expr.hpp"
#include "kernel/machine.hpp"

using namespace exm;
using namespace exm::kl;

namespace {

const char* kOmega = "(call (lambda (x) (call x x)) (lambda (x) (call x x)))";

std::size_t syntax_position(const std::string& text) {
  try {
    parse_expr(text);
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::syntax);
    return std::stoul(e.detail());
  }
  FAIL("expected a syntax error for " << text);
  return 0;
}

}  // namespace

TEST_CASE("literal forms parse and render canonically") {
  ExprPtr q = parse_expr("(quote a)");
  CHECK(q->kind() == ExprKind::quote);
  CHECK(q->literal()->is_sym());
  CHECK(q->literal()->sym()->name == "a");
  CHECK(render(*q) == "(quote a)");
  CHECK(render(*parse_expr("7")) == "7");
  CHECK(render(*parse_expr("  ( if  x\n ( quote (a . b) )\t() ) ; note")) == "(if x (quote (a . b)) ())");
  CHECK(render(*parse_expr("(quote (a . (b . (c . ()))))")) == "(quote (a b c))");
}

TEST_CASE("syntax errors carry the offending offset") {
  CHECK(syntax_position("(") == 1);
  CHECK(syntax_position(")") == 0);
  CHECK(syntax_position("(quote a b)") == 0);
  CHECK(syntax_position("(lambda (x x) x)") == 11);
  CHECK(syntax_position("007") == 0);
  CHECK(syntax_position("(foo 1)") == 0);
  CHECK(syntax_position("ab_c") == 2);
  CHECK(syntax_position("a b") == 2);
}

TEST_CASE("quote evaluates in one step") {
  Outcome o = run(parse_expr("(quote a)"), DefsTable(), 10);
  REQUIRE(o.kind == OutcomeKind::value);
  CHECK(o.steps == 1);
  CHECK(render(*o.result) == "a");
}

TEST_CASE("nested successor follows the published step count") {
  // Hand trace: eval outer, push frame, eval inner, push frame, return 0,
  // return 1, return 2.
  Outcome o = run(parse_expr("(succ (succ 0))"), DefsTable(), 10);
  REQUIRE(o.kind == OutcomeKind::value);
  CHECK(o.steps == 5);
  CHECK(render(*o.result) == "2");
  Outcome short_fuel = run(parse_expr("(succ (succ 0))"), DefsTable(), 4);
  CHECK(short_fuel.kind == OutcomeKind::out_of_fuel);
}

TEST_CASE("omega diverges and repeats its state") {
  Outcome o = run(parse_expr(kOmega), DefsTable(), 100);
  CHECK(o.kind == OutcomeKind::out_of_fuel);
  CHECK(o.steps == 100);
  // Hand trace: after 5 transitions the machine evaluates (call x x) with
  // x bound to the second closure and an empty continuation; 5 later it is
  // back in the same state.
  auto w = find_cycle(parse_expr(kOmega), DefsTable(), 100);
  REQUIRE(w.has_value());
  CHECK(w->i == 5);
  CHECK(w->j == 10);
  Machine a(parse_expr(kOmega), DefsTable());
  Machine b(parse_expr(kOmega), DefsTable());
  while (a.steps() < w->i) a.advance();
  while (b.steps() < w->j) b.advance();
  CHECK(state_equal(a.state(), b.state()));
  CHECK(render(*encode_state(a.state())) == w->state_digest);
}

TEST_CASE("terminating programs have no cycle") {
  CHECK_FALSE(find_cycle(parse_expr("(quote a)"), DefsTable(), 100).has_value());
  CHECK_FALSE(find_cycle(parse_expr("(succ (succ 0))"), DefsTable(), 100).has_value());
}

TEST_CASE("runtime faults") {
  CHECK(run(parse_expr("(head ())"), DefsTable(), 10).kind == OutcomeKind::fault);
  CHECK(run(parse_expr("(call 1)"), DefsTable(), 10).kind == OutcomeKind::fault);
  CHECK(run(parse_expr("(call (lambda (x) x))"), DefsTable(), 10).kind == OutcomeKind::fault);
  CHECK(run(parse_expr("(eq (lambda () 1) 1)"), DefsTable(), 10).kind == OutcomeKind::fault);
  CHECK(run(parse_expr("y"), DefsTable(), 10).fault == "unbound-variable");
}

TEST_CASE("primitives") {
  auto value_of = [](const char* src) {
    Outcome o = run(parse_expr(src), DefsTable(), 1000);
    REQUIRE(o.kind == OutcomeKind::value);
    return render(*o.result);
  };
  CHECK(value_of("(eq (quote (a 1)) (cons (quote a) (quote (1))))") == "t");
  CHECK(value_of("(eq 1 2)") == "()");
  CHECK(value_of("(pred 0)") == "0");
  CHECK(value_of("(sym-nat (quote a))") == "1");
  CHECK(value_of("(sym-nat (quote -))") == "0");
  CHECK(value_of("(sym-nat (quote --))") == "27");
  CHECK(value_of("(nat-sym 28)") == "-a");
  CHECK(value_of("(if (zerop 0) (quote yes) (quote no))") == "yes");
  CHECK(value_of("(call (lambda (f n) (call f f n)) (lambda (self n) (if (zerop n) (quote done) "
                 "(call self self (pred n)))) 7)") == "done");
}

TEST_CASE("free names fall back to the definition table") {
  DefsTable defs({{intern("two"), parse_expr("(succ (succ 0))")}});
  Outcome o = run(parse_expr("(succ two)"), defs, 100);
  REQUIRE(o.kind == OutcomeKind::value);
  CHECK(render(*o.result) == "3");
  CHECK(render(*defs_to_datum(defs)) == "(defs (two (succ (succ 0))))");
}

TEST_CASE("fuel monotonicity and determinism") {
  const char* prog =
      "(call (lambda (f) (call f f 5 ())) (lambda (self n acc) (if (zerop n) acc (call self self (pred n) "
      "(cons n acc)))))";
  Outcome full = run(parse_expr(prog), DefsTable(), 100000);
  REQUIRE(full.kind == OutcomeKind::value);
  for (std::uint64_t fuel = full.steps; fuel < full.steps + 20; ++fuel) {
    Outcome again = run(parse_expr(prog), DefsTable(), fuel);
    REQUIRE(again.kind == OutcomeKind::value);
    CHECK(again.steps == full.steps);
    CHECK(render(*again.result) == render(*full.result));
  }
  CHECK(run(parse_expr(prog), DefsTable(), full.steps - 1).kind == OutcomeKind::out_of_fuel);
}
