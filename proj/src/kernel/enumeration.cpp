// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernel/enumeration.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"

namespace exm::kl {
namespace {

enum NatProd : int { kZ = 0, kOne, kTwo };
enum ExprProd : int { kVar = 0, kLit, kNil, kQuote, kLambda, kCall, kIf };
enum ListProd : int { kEnd = 0, kMore };
enum DatumProd : int { kDSym = 0, kDNat, kDNil, kDPair };

RawTree leaf(int nt, int prod) { return RawTree{nt, prod, {}}; }

RawTree node(int nt, int prod, std::vector<RawTree> kids) { return RawTree{nt, prod, std::move(kids)}; }

void expect(const RawTree& t, int nt) {
  if (t.nt != nt) throw Error(ErrorCode::defect, "syntax tree has the wrong nonterminal");
}

RawTree exprs_tree(const std::vector<ExprPtr>& items, std::size_t from) {
  RawTree out = leaf(kExprsNt, kEnd);
  for (std::size_t i = items.size(); i-- > from;) out = node(kExprsNt, kMore, {expr_tree(*items[i]), std::move(out)});
  return out;
}

std::vector<ExprPtr> exprs_from_tree(const RawTree* t) {
  std::vector<ExprPtr> out;
  for (; t->prod == kMore; t = &t->kids[1]) out.push_back(expr_from_tree(t->kids[0]));
  return out;
}

RawTree params_tree(const std::vector<Symbol>& params) {
  std::vector<Natural> codes;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Natural x = symbol_index(params[i]);
    Natural skipped = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (symbol_index(params[j]) < x) ++skipped;
    }
    codes.push_back(x - skipped);
  }
  RawTree out = leaf(kParamsNt, kEnd);
  for (std::size_t i = codes.size(); i-- > 0;) out = node(kParamsNt, kMore, {nat_tree(codes[i]), std::move(out)});
  return out;
}

std::vector<Symbol> params_from_tree(const RawTree* t) {
  std::vector<Symbol> out;
  std::vector<Natural> used;
  for (; t->prod == kMore; t = &t->kids[1]) {
    Natural x = nat_from_tree(t->kids[0]);
    for (const Natural& y : used) {
      if (y <= x) ++x;
    }
    used.insert(std::upper_bound(used.begin(), used.end(), x), x);
    out.push_back(symbol_at(x));
  }
  return out;
}

}  // namespace

void add_kernel_grammar(Grammar& g) {
  if (g.nonterminal_count() != 0) throw Error(ErrorCode::defect, "kernel grammar must come first");
  const int nat = g.add_nonterminal("nat");
  const int expr = g.add_nonterminal("expr");
  const int exprs = g.add_nonterminal("exprs");
  const int params = g.add_nonterminal("params");
  const int datum = g.add_nonterminal("datum");
  g.add_production(nat, "zero", {});
  g.add_production(nat, "one", {nat});
  g.add_production(nat, "two", {nat});
  g.add_production(expr, "var", {nat});
  g.add_production(expr, "nat", {nat});
  g.add_production(expr, "nil", {});
  g.add_production(expr, "quote", {datum});
  g.add_production(expr, "lambda", {params, expr});
  g.add_production(expr, "call", {expr, exprs});
  g.add_production(expr, "if", {expr, expr, expr});
  for (std::size_t i = 0; i < kPrimCount; ++i) {
    const auto op = static_cast<PrimOp>(i);
    g.add_production(expr, std::string(prim_name(op)), std::vector<int>(prim_arity(op), expr));
  }
  g.add_production(exprs, "end", {});
  g.add_production(exprs, "more", {expr, exprs});
  g.add_production(params, "end", {});
  g.add_production(params, "more", {nat, params});
  g.add_production(datum, "sym", {nat});
  g.add_production(datum, "nat", {nat});
  g.add_production(datum, "nil", {});
  g.add_production(datum, "pair", {datum, datum});
}

const Grammar& expr_grammar() {
  static const Grammar* g = [] {
    auto* out = new Grammar();
    add_kernel_grammar(*out);
    return out;
  }();
  return *g;
}

RawTree nat_tree(const Natural& value) {
  std::vector<int> digits;
  Natural n = value;
  while (n != 0) {
    if ((n & 1) != 0) {
      digits.push_back(kOne);
      n = (n - 1) >> 1;
    } else {
      digits.push_back(kTwo);
      n = (n - 2) >> 1;
    }
  }
  RawTree out = leaf(kNatNt, kZ);
  for (std::size_t i = digits.size(); i-- > 0;) out = node(kNatNt, digits[i], {std::move(out)});
  return out;
}

Natural nat_from_tree(const RawTree& t) {
  std::vector<int> digits;
  const RawTree* cur = &t;
  for (; cur->prod != kZ; cur = &cur->kids[0]) {
    expect(*cur, kNatNt);
    digits.push_back(cur->prod);
  }
  Natural n = 0;
  for (std::size_t i = digits.size(); i-- > 0;) n = 2 * n + (digits[i] == kOne ? 1 : 2);
  return n;
}

RawTree datum_tree(const Value& d) {
  switch (d.kind()) {
    case ValueKind::sym: return node(kDatumNt, kDSym, {nat_tree(symbol_index(d.sym()))});
    case ValueKind::nat: return node(kDatumNt, kDNat, {nat_tree(d.nat())});
    case ValueKind::nil: return leaf(kDatumNt, kDNil);
    case ValueKind::pair: return node(kDatumNt, kDPair, {datum_tree(*d.head()), datum_tree(*d.tail())});
    case ValueKind::closure: break;
  }
  throw Error(ErrorCode::invalid_argument, "closures have no syntax tree");
}

ValuePtr datum_from_tree(const RawTree& t) {
  expect(t, kDatumNt);
  switch (t.prod) {
    case kDSym: return make_sym(symbol_at(nat_from_tree(t.kids[0])));
    case kDNat: return make_nat(nat_from_tree(t.kids[0]));
    case kDNil: return nil();
    default: return cons(datum_from_tree(t.kids[0]), datum_from_tree(t.kids[1]));
  }
}

RawTree expr_tree(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::var: return node(kExprNt, kVar, {nat_tree(symbol_index(e.name()))});
    case ExprKind::nat: return node(kExprNt, kLit, {nat_tree(e.literal()->nat())});
    case ExprKind::nil: return leaf(kExprNt, kNil);
    case ExprKind::quote: return node(kExprNt, kQuote, {datum_tree(*e.literal())});
    case ExprKind::lambda: return node(kExprNt, kLambda, {params_tree(e.params()), expr_tree(*e.body())});
    case ExprKind::call: return node(kExprNt, kCall, {expr_tree(*e.kids()[0]), exprs_tree(e.kids(), 1)});
    case ExprKind::if_:
      return node(kExprNt, kIf, {expr_tree(*e.kids()[0]), expr_tree(*e.kids()[1]), expr_tree(*e.kids()[2])});
    case ExprKind::prim: {
      std::vector<RawTree> kids;
      for (const auto& k : e.kids()) kids.push_back(expr_tree(*k));
      return node(kExprNt, kExprPrimBase + static_cast<int>(e.op()), std::move(kids));
    }
  }
  throw Error(ErrorCode::defect, "unknown expression kind");
}

ExprPtr expr_from_tree(const RawTree& t) {
  expect(t, kExprNt);
  switch (t.prod) {
    case kVar: return Expr::var(symbol_at(nat_from_tree(t.kids[0])));
    case kLit: return Expr::nat(nat_from_tree(t.kids[0]));
    case kNil: return Expr::nil();
    case kQuote: return Expr::quote(datum_from_tree(t.kids[0]));
    case kLambda: return Expr::lambda(params_from_tree(&t.kids[0]), expr_from_tree(t.kids[1]));
    case kCall: return Expr::call(expr_from_tree(t.kids[0]), exprs_from_tree(&t.kids[1]));
    case kIf: return Expr::if_(expr_from_tree(t.kids[0]), expr_from_tree(t.kids[1]), expr_from_tree(t.kids[2]));
    default: {
      std::vector<ExprPtr> args;
      for (const auto& k : t.kids) args.push_back(expr_from_tree(k));
      return Expr::prim(static_cast<PrimOp>(t.prod - kExprPrimBase), std::move(args));
    }
  }
}

Natural rank_expr(const Expr& e) { return expr_grammar().rank(expr_tree(e)); }

ExprPtr unrank_expr(const Natural& n) { return expr_from_tree(expr_grammar().unrank(kExprNt, n)); }

std::size_t expr_node_count(const Expr& e) { return raw_size(expr_tree(e)); }

}  // namespace exm::kl
