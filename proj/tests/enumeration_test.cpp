// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <functional>
#include <map>

#include "doctest.h"

#include "kernel/enumeration.hpp"
#include "kernel/expr.hpp"

using namespace exm;
using namespace exm::kl;

namespace {

// Independent count of expression trees by size, written directly from the
// shape of the syntax rather than from the grammar tables.
struct Counter {
  std::map<std::pair<int, int>, Natural> memo;

  Natural nat(int s) { return s == 1 ? 1 : (s >= 2 ? 2 * nat(s - 1) : 0); }
  Natural datum(int s) {
    if (s < 1) return 0;
    auto key = std::make_pair(0, s);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Natural c = 2 * nat(s - 1) + (s == 1 ? 1 : 0);
    for (int a = 1; a < s - 1; ++a) c += datum(a) * datum(s - 1 - a);
    return memo[key] = c;
  }
  // Sequences of k-coded names, each element costing one cell plus a natural.
  Natural params(int s) {
    if (s == 1) return 1;
    Natural c = 0;
    for (int a = 1; a < s - 1; ++a) c += nat(a) * params(s - 1 - a);
    return c;
  }
  Natural exprs(int s) {
    if (s == 1) return 1;
    Natural c = 0;
    for (int a = 1; a < s - 1; ++a) c += expr(a) * exprs(s - 1 - a);
    return c;
  }
  Natural expr(int s) {
    if (s < 1) return 0;
    auto key = std::make_pair(1, s);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Natural c = 2 * nat(s - 1) + (s == 1 ? 1 : 0) + datum(s - 1);
    for (int a = 1; a < s - 1; ++a) c += params(a) * expr(s - 1 - a) + expr(a) * exprs(s - 1 - a);
    Natural one = expr(s - 1);
    Natural two = 0;
    for (int a = 1; a < s - 1; ++a) two += expr(a) * expr(s - 1 - a);
    Natural three = 0;
    for (int a = 1; a < s - 1; ++a) {
      for (int b = 1; a + b < s - 1; ++b) three += expr(a) * expr(b) * expr(s - 1 - a - b);
    }
    c += three + 2 * two + 10 * one;
    return memo[key] = c;
  }
};

}  // namespace

TEST_CASE("grammar counts agree with a direct recurrence") {
  Counter oracle;
  for (int s = 1; s <= 14; ++s) {
    CHECK(expr_grammar().count(kExprNt, s) == oracle.expr(s));
  }
}

TEST_CASE("natural trees use bijective binary digits") {
  for (unsigned n = 0; n < 2000; ++n) CHECK(nat_from_tree(nat_tree(n)) == n);
  CHECK(raw_size(nat_tree(0)) == 1);
  CHECK(raw_size(nat_tree(1)) == 2);
  CHECK(raw_size(nat_tree(2)) == 2);
  CHECK(raw_size(nat_tree(3)) == 3);
  CHECK(raw_size(nat_tree(6)) == 3);
  CHECK(raw_size(nat_tree(7)) == 4);
}

TEST_CASE("the least expression is nil") {
  CHECK(render(*unrank_expr(0)) == "()");
  CHECK(render(*unrank_expr(1)) == "-");
  CHECK(render(*unrank_expr(2)) == "0");
}

TEST_CASE("rank and unrank are inverse over the first indices") {
  std::size_t last_size = 0;
  for (unsigned n = 0; n < 10000; ++n) {
    ExprPtr e = unrank_expr(n);
    REQUIRE(rank_expr(*e) == n);
    const std::size_t size = expr_node_count(*e);
    CHECK(size >= last_size);
    last_size = size;
    CHECK(render(*parse_expr(render(*e))) == render(*e));
    CHECK(expr_equal(*parse_expr(render(*e)), *e));
  }
}

TEST_CASE("ranks are a bijection onto every expression of a size") {
  // All expressions of the first sizes appear exactly once.
  std::map<std::string, unsigned> seen;
  Natural total = 0;
  for (int s = 1; s <= 5; ++s) total += expr_grammar().count(kExprNt, s);
  const unsigned limit = static_cast<unsigned>(to_u64(total));
  for (unsigned n = 0; n < limit; ++n) seen[render(*unrank_expr(n))] = n;
  CHECK(seen.size() == limit);
  CHECK(expr_node_count(*unrank_expr(limit - 1)) == 5);
  CHECK(expr_node_count(*unrank_expr(limit)) == 6);
}

TEST_CASE("large indices take the arbitrary precision path") {
  const Natural big = Natural(1) << 200;
  ExprPtr e = unrank_expr(big);
  CHECK(rank_expr(*e) == big);
  const Natural mid = (Natural(1) << 63) + 12345;
  CHECK(rank_expr(*unrank_expr(mid)) == mid);
  const Natural below = (Natural(1) << 63) - 7;
  CHECK(rank_expr(*unrank_expr(below)) == below);
}

TEST_CASE("lambda parameters are skip coded and stay distinct") {
  for (const char* text : {"(lambda (b a) a)", "(lambda (a b c) (cons a b))", "(lambda () 0)", "(lambda (z - y) -)"}) {
    ExprPtr e = parse_expr(text);
    CHECK(render(*unrank_expr(rank_expr(*e))) == text);
  }
}
