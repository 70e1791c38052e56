// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/natural.hpp"
#include "core/rc.hpp"
#include "kernel/symbol.hpp"

namespace exm::kl {

class Expr;
class EnvFrame;
class Value;
using ExprPtr = Rc<Expr>;
using EnvPtr = Rc<EnvFrame>;
using ValuePtr = Rc<Value>;

enum class ValueKind : std::uint8_t { nil, nat, sym, pair, closure };

// Runtime values. Data (nil, naturals, symbols, pairs of data) double as the
// quoted form of programs; closures only arise during evaluation and may sit
// inside pairs.
class Value : public RcNode {
 public:
  ValueKind kind() const noexcept { return kind_; }
  std::size_t hash() const noexcept { return hash_; }
  bool has_closure() const noexcept { return has_closure_; }
  bool is_nil() const noexcept { return kind_ == ValueKind::nil; }
  bool is_pair() const noexcept { return kind_ == ValueKind::pair; }
  bool is_sym() const noexcept { return kind_ == ValueKind::sym; }
  bool is_nat() const noexcept { return kind_ == ValueKind::nat; }
  bool is_closure() const noexcept { return kind_ == ValueKind::closure; }

  const Natural& nat() const noexcept;
  Symbol sym() const noexcept;
  const ValuePtr& head() const noexcept;
  const ValuePtr& tail() const noexcept;
  const ExprPtr& lambda() const noexcept;
  const EnvPtr& env() const noexcept;

 protected:
  Value(ValueKind kind, std::size_t hash, bool has_closure)
      : kind_(kind), has_closure_(has_closure), hash_(hash) {}

 private:
  ValueKind kind_;
  bool has_closure_;
  std::size_t hash_;
};

class NatValue final : public Value {
 public:
  explicit NatValue(Natural n);
  Natural value;
};

class SymValue final : public Value {
 public:
  explicit SymValue(Symbol s);
  Symbol value;
};

class PairValue final : public Value {
 public:
  PairValue(ValuePtr h, ValuePtr t);
  ValuePtr first;
  ValuePtr second;
};

class ClosureValue final : public Value {
 public:
  ClosureValue(ExprPtr lam, EnvPtr e);
  ~ClosureValue() override;
  ExprPtr lambda_expr;
  EnvPtr captured;
};

inline const Natural& Value::nat() const noexcept { return static_cast<const NatValue*>(this)->value; }
inline Symbol Value::sym() const noexcept { return static_cast<const SymValue*>(this)->value; }
inline const ValuePtr& Value::head() const noexcept { return static_cast<const PairValue*>(this)->first; }
inline const ValuePtr& Value::tail() const noexcept { return static_cast<const PairValue*>(this)->second; }
inline const ExprPtr& Value::lambda() const noexcept {
  return static_cast<const ClosureValue*>(this)->lambda_expr;
}
inline const EnvPtr& Value::env() const noexcept { return static_cast<const ClosureValue*>(this)->captured; }

// One environment frame: the bindings introduced by a single application.
class EnvFrame final : public RcNode {
 public:
  using Bindings = std::vector<std::pair<Symbol, ValuePtr>>;
  EnvFrame(Bindings binds, EnvPtr next);
  const Bindings& binds() const noexcept { return binds_; }
  const EnvPtr& next() const noexcept { return next_; }
  std::size_t hash() const noexcept { return hash_; }

 private:
  Bindings binds_;
  EnvPtr next_;
  std::size_t hash_;
};

std::size_t env_hash(const EnvFrame* env) noexcept;

const ValuePtr& nil();
ValuePtr make_nat(const Natural& n);
ValuePtr make_sym(Symbol s);
ValuePtr make_sym(std::string_view name);
ValuePtr cons(ValuePtr head, ValuePtr tail);
ValuePtr make_closure(ExprPtr lambda, EnvPtr env);
ValuePtr list(std::initializer_list<ValuePtr> items);
ValuePtr list_from(const std::vector<ValuePtr>& items);
ValuePtr truth(bool b);

// Structural equality; closures compare by code and captured environment.
bool value_equal(const Value& a, const Value& b);
bool env_equal(const EnvFrame* a, const EnvFrame* b);

// Number of pair cells along the tail spine; -1 if the list is improper.
long list_length(const Value& v);
std::vector<ValuePtr> list_items(const Value& v);

std::size_t datum_node_count(const Value& v);

}  // namespace exm::kl
