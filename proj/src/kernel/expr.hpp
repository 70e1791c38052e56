// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kernel/value.hpp"

namespace exm::kl {

enum class ExprKind : std::uint8_t { var, nat, nil, quote, lambda, call, if_, prim };

enum class PrimOp : std::uint8_t {
  eq, cons, head, tail, pairp, symp, natp, zerop, succ, pred, sym_nat, nat_sym
};
inline constexpr std::size_t kPrimCount = 12;

std::string_view prim_name(PrimOp op) noexcept;
std::size_t prim_arity(PrimOp op) noexcept;
std::optional<PrimOp> prim_by_name(std::string_view name) noexcept;

// Code of the kernel language. Nodes are immutable and shared; the hash of a
// node is computed once from the hashes of its parts.
class Expr final : public RcNode {
 public:
  static ExprPtr var(Symbol name);
  static ExprPtr nat(const Natural& n);
  static ExprPtr nil();
  static ExprPtr quote(ValuePtr datum);
  static ExprPtr lambda(std::vector<Symbol> params, ExprPtr body);
  static ExprPtr call(ExprPtr callee, std::vector<ExprPtr> args);
  static ExprPtr if_(ExprPtr c, ExprPtr t, ExprPtr e);
  static ExprPtr prim(PrimOp op, std::vector<ExprPtr> args);

  ExprKind kind() const noexcept { return kind_; }
  PrimOp op() const noexcept { return op_; }
  std::size_t hash() const noexcept { return hash_; }
  Symbol name() const noexcept { return name_; }
  // Literal value of nat, nil and quote nodes.
  const ValuePtr& literal() const noexcept { return literal_; }
  const std::vector<Symbol>& params() const noexcept { return params_; }
  const ExprPtr& body() const noexcept { return kids_[0]; }
  const std::vector<ExprPtr>& kids() const noexcept { return kids_; }
  // Hash of the sequence kids()[i..]; used for continuation frames.
  std::size_t suffix_hash(std::size_t i) const noexcept { return suffix_[i]; }

 private:
  Expr(ExprKind kind, PrimOp op) : kind_(kind), op_(op) {}
  void seal();

  ExprKind kind_;
  PrimOp op_;
  std::size_t hash_ = 0;
  Symbol name_ = nullptr;
  ValuePtr literal_;
  std::vector<Symbol> params_;
  std::vector<ExprPtr> kids_;
  std::vector<std::size_t> suffix_;
};

bool expr_equal(const Expr& a, const Expr& b);
bool expr_suffix_equal(const Expr& a, std::size_t ia, const Expr& b, std::size_t ib);
std::size_t sequence_seed() noexcept;

// Programs are data: every Expr has exactly one datum form and back.
ValuePtr expr_to_datum(const Expr& e);
ExprPtr expr_from_datum(const Value& d);

// Text syntax. parse accepts any whitespace and ';' comments; render emits
// the canonical single-space form.
ExprPtr parse_expr(std::string_view text);
std::string render(const Expr& e);

ValuePtr parse_datum(std::string_view text);
std::string render(const Value& v);

// Parses every datum in a text, in order.
std::vector<ValuePtr> parse_data(std::string_view text);

}  // namespace exm::kl
