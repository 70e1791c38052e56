// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/natural.hpp"

namespace exm::ar {

enum class TermKind : std::uint8_t { num, var, add, mul, pow };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Terms over numerals, variables, +, * and ^. A numeral n abbreviates
// 1 + ... + 1 (or 0).
struct Term {
  TermKind kind = TermKind::num;
  Natural value;
  std::string name;
  TermPtr a;
  TermPtr b;
};

TermPtr num(const Natural& n);
TermPtr var(std::string name);
TermPtr add(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr pow(TermPtr a, TermPtr b);
// Left-nested sum; the empty sum is 0.
TermPtr sum(const std::vector<TermPtr>& terms);

enum class FormulaKind : std::uint8_t { eq, lt, not_, and_, or_, implies, exists_below, forall_below, exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind = FormulaKind::and_;
  TermPtr l;
  TermPtr r;
  std::vector<FormulaPtr> kids;
  std::string var;
  TermPtr bound;
};

FormulaPtr eq(TermPtr a, TermPtr b);
FormulaPtr lt(TermPtr a, TermPtr b);
// a <= b, written as a < b + 1.
FormulaPtr le(TermPtr a, TermPtr b);
FormulaPtr not_(FormulaPtr f);
// The empty conjunction is true and the empty disjunction is false.
FormulaPtr and_(std::vector<FormulaPtr> kids);
FormulaPtr or_(std::vector<FormulaPtr> kids);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr exists_below(std::string v, TermPtr bound, FormulaPtr body);
FormulaPtr forall_below(std::string v, TermPtr bound, FormulaPtr body);
FormulaPtr exists(std::string v, FormulaPtr body);

// Canonical s-expression text: 0, 1, numerals, names, (+ a b), (* a b),
// (^ a b), (= a b), (< a b), (not f), (and f ...), (or f ...),
// (implies f g), (exists-below x t f), (forall-below x t f), (exists x f).
std::string render(const Term& t);
std::string render(const Formula& f);
FormulaPtr parse_formula(std::string_view text);
TermPtr parse_term(std::string_view text);

std::size_t unbounded_quantifiers(const Formula& f);
std::vector<std::string> free_variables(const Formula& f);

using Env = std::map<std::string, Natural>;

struct EvalOptions {
  // Relativizes unbounded quantifiers to values below the cap.
  std::optional<Natural> cap;
  // Formula and term nodes visited before budget_exceeded is thrown.
  std::uint64_t budget = 2'000'000'000;
  // Restricts each bounded quantifier to the values its body's atoms allow.
  // Turning it off gives the plain enumeration, with the same results.
  bool narrowing = true;
};

struct EvalStats {
  std::uint64_t nodes = 0;
};

// Truth in the standard model. Throws unbounded_quantifier when an
// unbounded quantifier is met without a cap, budget_exceeded past the
// budget, and invalid_argument on an unbound or shadowed variable.
bool eval_formula(const Formula& f, const Env& env, const std::optional<Natural>& cap = std::nullopt);
bool eval_formula(const Formula& f, const Env& env, const EvalOptions& opts, EvalStats* stats = nullptr);

// A formula compiled once for repeated evaluation under different values
// of the listed variables. Not safe for concurrent use.
class PreparedFormula {
 public:
  PreparedFormula(FormulaPtr f, std::vector<std::string> free);
  ~PreparedFormula();
  PreparedFormula(PreparedFormula&&) noexcept;

  // `values` follows the order of the variables given at construction.
  bool eval(const std::vector<Natural>& values, const EvalOptions& opts = {}, EvalStats* stats = nullptr);

 private:
  struct Impl;
  FormulaPtr formula_;
  std::vector<std::string> free_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace exm::ar
