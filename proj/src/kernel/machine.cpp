// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernel/machine.hpp"

#include <unordered_set>

#include "core/error.hpp"
#include "core/hash.hpp"

namespace exm::kl {

DefsTable::DefsTable() : data_(std::make_shared<Data>()) {}

DefsTable::DefsTable(std::vector<std::pair<Symbol, ExprPtr>> entries) {
  auto data = std::make_shared<Data>();
  data->entries = std::move(entries);
  for (const auto& [name, def] : data->entries) {
    if (!data->index.emplace(name, def.get()).second) {
      throw Error(ErrorCode::name_clash, "duplicate definition of " + name->name);
    }
  }
  data_ = std::move(data);
}

const Expr* DefsTable::find(Symbol name) const {
  auto it = data_->index.find(name);
  return it == data_->index.end() ? nullptr : it->second;
}

DefsTable DefsTable::prepended(Symbol name, ExprPtr def) const {
  std::vector<std::pair<Symbol, ExprPtr>> entries;
  entries.reserve(size() + 1);
  entries.emplace_back(name, std::move(def));
  for (const auto& e : data_->entries) entries.push_back(e);
  return DefsTable(std::move(entries));
}

DefsTable DefsTable::after(Symbol name) const {
  std::vector<std::pair<Symbol, ExprPtr>> entries;
  bool seen = false;
  for (const auto& e : data_->entries) {
    if (seen) entries.push_back(e);
    if (e.first == name) seen = true;
  }
  return DefsTable(std::move(entries));
}

ValuePtr defs_to_datum(const DefsTable& defs) {
  std::vector<ValuePtr> items{make_sym("defs")};
  for (const auto& [name, def] : defs.entries()) items.push_back(list({make_sym(name), expr_to_datum(*def)}));
  return list_from(items);
}

DefsTable defs_from_datum(const Value& d) {
  if (!d.is_pair() || list_length(d) < 0 || !d.head()->is_sym() || d.head()->sym()->name != "defs") {
    throw Error(ErrorCode::syntax, "expected (defs (name expr) ...)");
  }
  std::vector<std::pair<Symbol, ExprPtr>> entries;
  for (const auto& item : list_items(*d.tail())) {
    if (list_length(*item) != 2 || !item->head()->is_sym()) {
      throw Error(ErrorCode::syntax, "definition must be (name expr)");
    }
    entries.emplace_back(item->head()->sym(), expr_from_datum(*item->tail()->head()));
  }
  return DefsTable(std::move(entries));
}

KFrame::KFrame(FrameKind kind, ExprPtr owner, std::uint32_t index, EnvPtr env, ValuePtr acc, KPtr next)
    : kind_(kind),
      index_(index),
      owner_(std::move(owner)),
      env_(std::move(env)),
      acc_(std::move(acc)),
      next_(std::move(next)) {
  std::size_t h = hash_mix(0x4b46, static_cast<std::size_t>(kind_));
  if (kind_ == FrameKind::prim) h = hash_mix(h, static_cast<std::size_t>(owner_->op()));
  h = hash_mix(h, owner_->suffix_hash(index_));
  h = hash_mix(h, env_hash(env_.get()));
  h = hash_mix(h, acc_->hash());
  hash_ = hash_mix(h, k_hash(next_.get()));
}

std::size_t k_hash(const KFrame* k) noexcept { return k == nullptr ? hash_mix(0x4b4e, 0) : k->hash(); }

bool k_equal(const KFrame* a, const KFrame* b) {
  while (true) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
    if (a->kind() == FrameKind::prim && a->owner()->op() != b->owner()->op()) return false;
    if (!expr_suffix_equal(*a->owner(), a->index(), *b->owner(), b->index())) return false;
    if (!env_equal(a->env().get(), b->env().get())) return false;
    if (!value_equal(*a->acc(), *b->acc())) return false;
    a = a->next().get();
    b = b->next().get();
  }
}

State initial_state(ExprPtr e) {
  State s;
  s.expr = std::move(e);
  return s;
}

bool is_terminal(const State& s) noexcept { return s.returning && !s.k; }

std::size_t state_hash(const State& s) noexcept {
  if (s.returning) return hash_mix(hash_mix(0x5254, s.value->hash()), k_hash(s.k.get()));
  return hash_mix(hash_mix(hash_mix(0x4556, s.expr->hash()), env_hash(s.env.get())), k_hash(s.k.get()));
}

bool state_equal(const State& a, const State& b) {
  if (a.returning != b.returning) return false;
  if (state_hash(a) != state_hash(b)) return false;
  if (a.returning) return value_equal(*a.value, *b.value) && k_equal(a.k.get(), b.k.get());
  return expr_equal(*a.expr, *b.expr) && env_equal(a.env.get(), b.env.get()) && k_equal(a.k.get(), b.k.get());
}

namespace {

StepResult eval_to(ExprPtr e, EnvPtr env, KPtr k) {
  StepResult r;
  r.next.expr = std::move(e);
  r.next.env = std::move(env);
  r.next.k = std::move(k);
  return r;
}

StepResult return_to(ValuePtr v, KPtr k) {
  StepResult r;
  r.next.returning = true;
  r.next.value = std::move(v);
  r.next.k = std::move(k);
  return r;
}

StepResult fault(std::string reason) {
  StepResult r;
  r.status = StepStatus::fault;
  r.fault = std::move(reason);
  return r;
}

const Value* lookup(const EnvFrame* env, Symbol name) {
  for (; env != nullptr; env = env->next().get()) {
    for (const auto& [n, v] : env->binds()) {
      if (n == name) return v.get();
    }
  }
  return nullptr;
}

StepResult apply_prim(PrimOp op, const std::vector<ValuePtr>& args, KPtr k) {
  const Value& a = *args[0];
  switch (op) {
    case PrimOp::eq:
      if (a.has_closure() || args[1]->has_closure()) return fault("eq-on-closure");
      return return_to(truth(value_equal(a, *args[1])), std::move(k));
    case PrimOp::cons: return return_to(cons(args[0], args[1]), std::move(k));
    case PrimOp::head:
      if (!a.is_pair()) return fault("head-of-non-pair");
      return return_to(a.head(), std::move(k));
    case PrimOp::tail:
      if (!a.is_pair()) return fault("tail-of-non-pair");
      return return_to(a.tail(), std::move(k));
    case PrimOp::pairp: return return_to(truth(a.is_pair()), std::move(k));
    case PrimOp::symp: return return_to(truth(a.is_sym()), std::move(k));
    case PrimOp::natp: return return_to(truth(a.is_nat()), std::move(k));
    case PrimOp::zerop:
      if (!a.is_nat()) return fault("zerop-of-non-natural");
      return return_to(truth(a.nat() == 0), std::move(k));
    case PrimOp::succ:
      if (!a.is_nat()) return fault("succ-of-non-natural");
      return return_to(make_nat(a.nat() + 1), std::move(k));
    case PrimOp::pred:
      if (!a.is_nat()) return fault("pred-of-non-natural");
      return return_to(a.nat() == 0 ? args[0] : make_nat(a.nat() - 1), std::move(k));
    case PrimOp::sym_nat:
      if (!a.is_sym()) return fault("sym-nat-of-non-symbol");
      return return_to(make_nat(symbol_index(a.sym())), std::move(k));
    case PrimOp::nat_sym:
      if (!a.is_nat()) return fault("nat-sym-of-non-natural");
      return return_to(make_sym(symbol_at(a.nat())), std::move(k));
  }
  return fault("unknown-primitive");
}

// Values of a finished frame, oldest first.
std::vector<ValuePtr> frame_values(const Value& acc) {
  std::vector<ValuePtr> vals = list_items(acc);
  std::reverse(vals.begin(), vals.end());
  return vals;
}

}  // namespace

StepResult step(const State& s, const DefsTable& defs) {
  if (!s.returning) {
    const Expr& e = *s.expr;
    switch (e.kind()) {
      case ExprKind::var: {
        if (const Value* v = lookup(s.env.get(), e.name())) return return_to(ValuePtr(v), s.k);
        if (const Expr* def = defs.find(e.name())) return eval_to(ExprPtr(def), EnvPtr(), s.k);
        return fault("unbound-variable");
      }
      case ExprKind::nat:
      case ExprKind::nil:
      case ExprKind::quote: return return_to(e.literal(), s.k);
      case ExprKind::lambda: return return_to(make_closure(s.expr, s.env), s.k);
      case ExprKind::if_:
        return eval_to(e.kids()[0], s.env, make_rc<KFrame>(FrameKind::if_, s.expr, 1, s.env, nil(), s.k));
      case ExprKind::call:
        return eval_to(e.kids()[0], s.env, make_rc<KFrame>(FrameKind::call, s.expr, 1, s.env, nil(), s.k));
      case ExprKind::prim:
        return eval_to(e.kids()[0], s.env, make_rc<KFrame>(FrameKind::prim, s.expr, 1, s.env, nil(), s.k));
    }
    return fault("unknown-expression");
  }
  if (!s.k) {
    StepResult r;
    r.status = StepStatus::terminal;
    return r;
  }
  const KFrame& f = *s.k;
  const Expr& owner = *f.owner();
  if (f.kind() == FrameKind::if_) {
    return eval_to(owner.kids()[s.value->is_nil() ? 2 : 1], f.env(), f.next());
  }
  ValuePtr acc = cons(s.value, f.acc());
  if (f.index() < owner.kids().size()) {
    return eval_to(owner.kids()[f.index()], f.env(),
                   make_rc<KFrame>(f.kind(), f.owner(), f.index() + 1, f.env(), std::move(acc), f.next()));
  }
  std::vector<ValuePtr> vals = frame_values(*acc);
  if (f.kind() == FrameKind::prim) return apply_prim(owner.op(), vals, f.next());
  const Value& callee = *vals[0];
  if (!callee.is_closure()) return fault("call-of-non-function");
  const Expr& lam = *callee.lambda();
  if (lam.params().size() + 1 != vals.size()) return fault("arity-mismatch");
  EnvFrame::Bindings binds;
  binds.reserve(lam.params().size());
  for (std::size_t i = 0; i < lam.params().size(); ++i) binds.emplace_back(lam.params()[i], vals[i + 1]);
  return eval_to(lam.body(), make_rc<EnvFrame>(std::move(binds), callee.env()), f.next());
}

bool Machine::advance() {
  if (faulted_) return false;
  StepResult r = step(state_, defs_);
  if (r.status == StepStatus::terminal) return false;
  if (r.status == StepStatus::fault) {
    faulted_ = true;
    fault_ = std::move(r.fault);
    return false;
  }
  state_ = std::move(r.next);
  ++steps_;
  return true;
}

Outcome run(ExprPtr e, const DefsTable& defs, std::uint64_t fuel) {
  Machine m(std::move(e), defs);
  Outcome out;
  while (true) {
    if (is_terminal(m.state())) {
      out.kind = OutcomeKind::value;
      out.result = m.state().value;
      out.steps = m.steps();
      return out;
    }
    if (m.steps() >= fuel) break;
    if (!m.advance()) {
      out.kind = OutcomeKind::fault;
      out.fault = m.fault();
      out.steps = m.steps();
      out.final_state = m.state();
      return out;
    }
  }
  out.kind = OutcomeKind::out_of_fuel;
  out.steps = m.steps();
  out.final_state = m.state();
  return out;
}

std::optional<CycleWitness> find_cycle(ExprPtr e, const DefsTable& defs, std::uint64_t bound) {
  Machine m(std::move(e), defs);
  std::unordered_multimap<std::size_t, std::pair<std::uint64_t, State>> seen;
  seen.emplace(state_hash(m.state()), std::make_pair(std::uint64_t{0}, m.state()));
  while (m.steps() < bound) {
    if (!m.advance()) return std::nullopt;
    const State& cur = m.state();
    const std::size_t h = state_hash(cur);
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (state_equal(it->second.second, cur)) {
        return CycleWitness{it->second.first, m.steps(), render(*encode_state(cur))};
      }
    }
    seen.emplace(h, std::make_pair(m.steps(), cur));
  }
  return std::nullopt;
}

ValuePtr encode_value(const Value& v) {
  if (!v.has_closure()) return cons(make_sym("q"), ValuePtr(&v));
  if (v.is_pair()) return cons(make_sym("p"), cons(encode_value(*v.head()), encode_value(*v.tail())));
  const Expr& lam = *v.lambda();
  std::vector<ValuePtr> params;
  for (Symbol p : lam.params()) params.push_back(make_sym(p));
  return list({make_sym("c"), list_from(params), expr_to_datum(*lam.body()), encode_env(v.env().get())});
}

ValuePtr encode_env(const EnvFrame* env) {
  std::vector<ValuePtr> frames;
  for (; env != nullptr; env = env->next().get()) {
    std::vector<ValuePtr> binds;
    for (const auto& [name, value] : env->binds()) binds.push_back(cons(make_sym(name), encode_value(*value)));
    frames.push_back(list_from(binds));
  }
  return list_from(frames);
}

namespace {

ValuePtr encode_k(const KFrame* k) {
  std::vector<ValuePtr> frames;
  for (; k != nullptr; k = k->next().get()) {
    const Expr& owner = *k->owner();
    std::vector<ValuePtr> rest;
    for (std::size_t i = k->index(); i < owner.kids().size(); ++i) rest.push_back(expr_to_datum(*owner.kids()[i]));
    if (k->kind() == FrameKind::if_) {
      frames.push_back(list({make_sym("ifk"), rest[0], rest[1], encode_env(k->env().get())}));
      continue;
    }
    std::vector<ValuePtr> acc;
    for (const auto& v : list_items(*k->acc())) acc.push_back(encode_value(*v));
    if (k->kind() == FrameKind::call) {
      frames.push_back(list({make_sym("callk"), list_from(rest), encode_env(k->env().get()), list_from(acc)}));
    } else {
      frames.push_back(list({make_sym("primk"), make_sym(prim_name(owner.op())), list_from(rest),
                             encode_env(k->env().get()), list_from(acc)}));
    }
  }
  return list_from(frames);
}

}  // namespace

ValuePtr encode_state(const State& s) {
  if (s.returning) return list({make_sym("rt"), encode_value(*s.value), encode_k(s.k.get())});
  return list({make_sym("ev"), expr_to_datum(*s.expr), encode_env(s.env.get()), encode_k(s.k.get())});
}

}  // namespace exm::kl
