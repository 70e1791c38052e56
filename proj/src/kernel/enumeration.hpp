// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "kernel/expr.hpp"
#include "kernel/grammar.hpp"

namespace exm::kl {

// Nonterminals of the kernel syntax, registered first and in this order by
// add_kernel_grammar so that larger grammars can reuse them.
enum KernelNt : int { kNatNt = 0, kExprNt, kExprsNt, kParamsNt, kDatumNt, kKernelNtCount };

// Expr productions: var, nat, nil, quote, lambda, call, if, then one per
// primitive in PrimOp order.
inline constexpr int kExprPrimBase = 7;

void add_kernel_grammar(Grammar& g);
const Grammar& expr_grammar();

// Naturals are trees of bijective base-2 digits: Z = 0, One(m) = 2m + 1,
// Two(m) = 2m + 2.
RawTree nat_tree(const Natural& n);
Natural nat_from_tree(const RawTree& t);

RawTree datum_tree(const Value& d);
ValuePtr datum_from_tree(const RawTree& t);

RawTree expr_tree(const Expr& e);
ExprPtr expr_from_tree(const RawTree& t);

Natural rank_expr(const Expr& e);
ExprPtr unrank_expr(const Natural& n);
std::size_t expr_node_count(const Expr& e);

}  // namespace exm::kl
