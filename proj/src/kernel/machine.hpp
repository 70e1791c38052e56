// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kernel/expr.hpp"

namespace exm::kl {

// Ordered table of named closed definitions. Copies share storage.
class DefsTable {
 public:
  DefsTable();
  explicit DefsTable(std::vector<std::pair<Symbol, ExprPtr>> entries);

  const std::vector<std::pair<Symbol, ExprPtr>>& entries() const noexcept { return data_->entries; }
  const Expr* find(Symbol name) const;
  bool contains(Symbol name) const { return find(name) != nullptr; }
  std::size_t size() const noexcept { return data_->entries.size(); }

  // New table with the definition placed in front of the existing ones.
  DefsTable prepended(Symbol name, ExprPtr def) const;
  // Entries that follow `name`; empty when the name is absent.
  DefsTable after(Symbol name) const;

 private:
  struct Data {
    std::vector<std::pair<Symbol, ExprPtr>> entries;
    std::unordered_map<Symbol, const Expr*> index;
  };
  std::shared_ptr<const Data> data_;
};

ValuePtr defs_to_datum(const DefsTable& defs);
DefsTable defs_from_datum(const Value& d);

enum class FrameKind : std::uint8_t { if_, call, prim };

class KFrame;
using KPtr = Rc<KFrame>;

// Continuation frame. The expressions still to evaluate are owner->kids()
// from `index` on; `acc` holds the values already computed, newest first.
class KFrame final : public RcNode {
 public:
  KFrame(FrameKind kind, ExprPtr owner, std::uint32_t index, EnvPtr env, ValuePtr acc, KPtr next);

  FrameKind kind() const noexcept { return kind_; }
  const ExprPtr& owner() const noexcept { return owner_; }
  std::uint32_t index() const noexcept { return index_; }
  const EnvPtr& env() const noexcept { return env_; }
  const ValuePtr& acc() const noexcept { return acc_; }
  const KPtr& next() const noexcept { return next_; }
  std::size_t hash() const noexcept { return hash_; }

 private:
  FrameKind kind_;
  std::uint32_t index_;
  ExprPtr owner_;
  EnvPtr env_;
  ValuePtr acc_;
  KPtr next_;
  std::size_t hash_;
};

std::size_t k_hash(const KFrame* k) noexcept;
bool k_equal(const KFrame* a, const KFrame* b);

// Machine state: either evaluating `expr` in `env`, or returning `value`.
struct State {
  bool returning = false;
  ExprPtr expr;
  EnvPtr env;
  ValuePtr value;
  KPtr k;
};

State initial_state(ExprPtr e);
bool is_terminal(const State& s) noexcept;
std::size_t state_hash(const State& s) noexcept;
bool state_equal(const State& a, const State& b);

enum class StepStatus : std::uint8_t { ok, terminal, fault };

struct StepResult {
  StepStatus status = StepStatus::ok;
  State next;
  std::string fault;
};

// One transition of the machine. A terminal state has no successor.
StepResult step(const State& s, const DefsTable& defs);

enum class OutcomeKind : std::uint8_t { value, out_of_fuel, fault };

struct Outcome {
  OutcomeKind kind = OutcomeKind::out_of_fuel;
  ValuePtr result;
  std::uint64_t steps = 0;
  State final_state;
  std::string fault;
};

Outcome run(ExprPtr e, const DefsTable& defs, std::uint64_t fuel);

// Incremental driver used where intermediate states must be kept.
class Machine {
 public:
  Machine(ExprPtr e, const DefsTable& defs) : defs_(defs), state_(initial_state(std::move(e))) {}
  // Advances one step; returns false once terminal or faulted.
  bool advance();
  const State& state() const noexcept { return state_; }
  std::uint64_t steps() const noexcept { return steps_; }
  bool faulted() const noexcept { return faulted_; }
  const std::string& fault() const noexcept { return fault_; }

 private:
  const DefsTable& defs_;
  State state_;
  std::uint64_t steps_ = 0;
  bool faulted_ = false;
  std::string fault_;
};

struct CycleWitness {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  std::string state_digest;
};

std::optional<CycleWitness> find_cycle(ExprPtr e, const DefsTable& defs, std::uint64_t bound);

// Data encoding of runtime values and states, shared with the evaluator that
// is written in the kernel language itself:
//   closure-free value d  -> (q . d)
//   pair holding closures -> (p V1 . V2)
//   closure               -> (c params body env)
//   state                 -> (ev expr env k) | (rt V k)
ValuePtr encode_value(const Value& v);
ValuePtr encode_env(const EnvFrame* env);
ValuePtr encode_state(const State& s);

}  // namespace exm::kl
