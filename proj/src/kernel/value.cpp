// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernel/value.hpp"

#include <array>

#include "core/hash.hpp"
#include "kernel/expr.hpp"

namespace exm::kl {
namespace {

constexpr std::size_t kNilTag = 0x4e494c;
constexpr std::size_t kEmptyEnvTag = 0x454e56;

class NilValue final : public Value {
 public:
  NilValue() : Value(ValueKind::nil, hash_mix(kNilTag, 0), false) {}
};

std::size_t nat_hash(const Natural& n) { return hash_mix(0x4e4154, hash_natural(n)); }

}  // namespace

NatValue::NatValue(Natural n) : Value(ValueKind::nat, nat_hash(n), false), value(std::move(n)) {}

SymValue::SymValue(Symbol s) : Value(ValueKind::sym, hash_mix(0x53594d, s->hash), false), value(s) {}

PairValue::PairValue(ValuePtr h, ValuePtr t)
    : Value(ValueKind::pair, hash_mix(hash_mix(0x504149, h->hash()), t->hash()),
            h->has_closure() || t->has_closure()),
      first(std::move(h)),
      second(std::move(t)) {}

ClosureValue::ClosureValue(ExprPtr lam, EnvPtr e)
    : Value(ValueKind::closure, hash_mix(hash_mix(0x434c4f, lam->hash()), env_hash(e.get())), true),
      lambda_expr(std::move(lam)),
      captured(std::move(e)) {}

ClosureValue::~ClosureValue() = default;

EnvFrame::EnvFrame(Bindings binds, EnvPtr next) : binds_(std::move(binds)), next_(std::move(next)) {
  std::size_t h = hash_mix(0x46524d, env_hash(next_.get()));
  for (const auto& [name, value] : binds_) h = hash_mix(hash_mix(h, name->hash), value->hash());
  hash_ = h;
}

std::size_t env_hash(const EnvFrame* env) noexcept {
  return env == nullptr ? hash_mix(kEmptyEnvTag, 0) : env->hash();
}

const ValuePtr& nil() {
  static const ValuePtr* instance = new ValuePtr(new NilValue());
  return *instance;
}

ValuePtr make_nat(const Natural& n) {
  static const std::array<ValuePtr, 64>* small = [] {
    auto* table = new std::array<ValuePtr, 64>();
    for (unsigned i = 0; i < 64; ++i) (*table)[i] = ValuePtr(new NatValue(Natural(i)));
    return table;
  }();
  if (n >= 0 && n < 64) return (*small)[static_cast<unsigned>(n)];
  return ValuePtr(new NatValue(n));
}

ValuePtr make_sym(Symbol s) { return ValuePtr(new SymValue(s)); }
ValuePtr make_sym(std::string_view name) { return make_sym(intern(name)); }

ValuePtr cons(ValuePtr head, ValuePtr tail) {
  return ValuePtr(new PairValue(std::move(head), std::move(tail)));
}

ValuePtr make_closure(ExprPtr lambda, EnvPtr env) {
  return ValuePtr(new ClosureValue(std::move(lambda), std::move(env)));
}

ValuePtr list(std::initializer_list<ValuePtr> items) {
  std::vector<ValuePtr> v(items);
  return list_from(v);
}

ValuePtr list_from(const std::vector<ValuePtr>& items) {
  ValuePtr out = nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
  return out;
}

ValuePtr truth(bool b) {
  static const ValuePtr* t = new ValuePtr(make_sym("t"));
  return b ? *t : nil();
}

bool value_equal(const Value& a0, const Value& b0) {
  const Value* a = &a0;
  const Value* b = &b0;
  while (true) {
    if (a == b) return true;
    if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
    switch (a->kind()) {
      case ValueKind::nil: return true;
      case ValueKind::nat: return a->nat() == b->nat();
      case ValueKind::sym: return a->sym() == b->sym();
      case ValueKind::closure:
        return expr_equal(*a->lambda(), *b->lambda()) && env_equal(a->env().get(), b->env().get());
      case ValueKind::pair:
        if (!value_equal(*a->head(), *b->head())) return false;
        a = a->tail().get();
        b = b->tail().get();
        break;
    }
  }
}

bool env_equal(const EnvFrame* a, const EnvFrame* b) {
  while (true) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->hash() != b->hash() || a->binds().size() != b->binds().size()) return false;
    for (std::size_t i = 0; i < a->binds().size(); ++i) {
      if (a->binds()[i].first != b->binds()[i].first) return false;
      if (!value_equal(*a->binds()[i].second, *b->binds()[i].second)) return false;
    }
    a = a->next().get();
    b = b->next().get();
  }
}

long list_length(const Value& v) {
  long n = 0;
  const Value* cur = &v;
  while (cur->is_pair()) {
    ++n;
    cur = cur->tail().get();
  }
  return cur->is_nil() ? n : -1;
}

std::vector<ValuePtr> list_items(const Value& v) {
  std::vector<ValuePtr> out;
  const Value* cur = &v;
  while (cur->is_pair()) {
    out.push_back(cur->head());
    cur = cur->tail().get();
  }
  return out;
}

std::size_t datum_node_count(const Value& v) {
  std::size_t n = 0;
  std::vector<const Value*> work{&v};
  while (!work.empty()) {
    const Value* cur = work.back();
    work.pop_back();
    ++n;
    if (cur->is_pair()) {
      work.push_back(cur->head().get());
      work.push_back(cur->tail().get());
    }
  }
  return n;
}

}  // namespace exm::kl
