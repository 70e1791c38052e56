// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "objkl/linker.hpp"

#include <map>
#include <set>

#include "core/error.hpp"

namespace exm::obj {
namespace {

using kl::cons;
using kl::list;
using kl::make_sym;
using kl::nil;
using kl::Symbol;
using kl::Value;
using kl::ValuePtr;

Error link_error(const std::string& what) { return Error(ErrorCode::syntax, "link: " + what); }

bool is_tag(const Value& d, std::string_view tag) {
  return d.is_pair() && d.head()->is_sym() && d.head()->sym()->name == tag;
}

std::vector<ValuePtr> items_of(const Value& d, const std::string& context) {
  if (kl::list_length(d) < 0) throw link_error("improper list in " + context);
  return kl::list_items(d);
}

ValuePtr quote_sym(std::string_view name) { return list({make_sym("quote"), make_sym(name)}); }

class Compiler {
 public:
  Compiler(const KlsProgram& program, std::map<Symbol, ValuePtr> access)
      : program_(program), access_(std::move(access)), lib_(kl::intern("lib")) {}

  ValuePtr function(const KlsFunction& f) {
    std::set<Symbol> scope(f.params.begin(), f.params.end());
    std::vector<ValuePtr> params{make_sym(lib_)};
    for (Symbol p : f.params) params.push_back(make_sym(p));
    return list({make_sym("lambda"), kl::list_from(params), expr(*f.body, scope, f.name->name)});
  }

  // Names of defined functions a body calls.
  static void calls(const Value& d, const KlsProgram& program, std::set<Symbol>& out) {
    if (!d.is_pair()) return;
    if (is_tag(d, "quote")) return;
    if (d.head()->is_sym() && program.find(d.head()->sym()->name) != nullptr) out.insert(d.head()->sym());
    for (const Value* cur = &d; cur->is_pair(); cur = cur->tail().get()) calls(*cur->head(), program, out);
  }

 private:
  ValuePtr expr(const Value& d, const std::set<Symbol>& scope, const std::string& where) {
    switch (d.kind()) {
      case kl::ValueKind::nat:
      case kl::ValueKind::nil: return ValuePtr(&d);
      case kl::ValueKind::sym:
        if (d.sym() == lib_ || !scope.count(d.sym())) {
          throw link_error("unbound name " + d.sym()->name + " in " + where);
        }
        return ValuePtr(&d);
      case kl::ValueKind::closure: throw link_error("closure in source");
      case kl::ValueKind::pair: break;
    }
    if (!d.head()->is_sym()) throw link_error("application head must be a name in " + where);
    const Symbol head = d.head()->sym();
    const std::string& op = head->name;
    std::vector<ValuePtr> args = items_of(*d.tail(), where);
    auto sub = [&](const Value& e) { return expr(e, scope, where); };
    auto arity = [&](std::size_t n) {
      if (args.size() != n) throw link_error("wrong number of operands to " + op + " in " + where);
    };
    if (scope.count(head)) throw link_error("use (call " + op + " ...) for local functions in " + where);
    if (op == "quote") {
      arity(1);
      return ValuePtr(&d);
    }
    if (op == "if") {
      arity(3);
      return list({make_sym("if"), sub(*args[0]), sub(*args[1]), sub(*args[2])});
    }
    if (op == "not") {
      arity(1);
      return list({make_sym("if"), sub(*args[0]), nil(), quote_sym("t")});
    }
    if (op == "and" || op == "or") return junction(op == "and", args, 0, scope, where);
    if (op == "list") {
      ValuePtr out = nil();
      for (std::size_t i = args.size(); i-- > 0;) out = list({make_sym("cons"), sub(*args[i]), out});
      return out;
    }
    if (op == "cond") return cond(args, 0, scope, where);
    if (op == "let" || op == "lets") {
      arity(2);
      std::vector<ValuePtr> binds = items_of(*args[0], where);
      if (op == "lets" && binds.size() > 1) {
        ValuePtr inner = list({make_sym("lets"), kl::list_from({binds.begin() + 1, binds.end()}), args[1]});
        ValuePtr outer = list({make_sym("let"), list({binds[0]}), inner});
        return expr(*outer, scope, where);
      }
      std::vector<ValuePtr> names;
      std::vector<ValuePtr> values;
      std::set<Symbol> inner = scope;
      for (const auto& b : binds) {
        auto parts = items_of(*b, where);
        if (parts.size() != 2 || !parts[0]->is_sym()) throw link_error("bad binding in " + where);
        names.push_back(parts[0]);
        values.push_back(sub(*parts[1]));
        inner.insert(parts[0]->sym());
      }
      check_locals(names, where);
      std::vector<ValuePtr> call{make_sym("call"),
                                 list({make_sym("lambda"), kl::list_from(names), expr(*args[1], inner, where)})};
      call.insert(call.end(), values.begin(), values.end());
      return kl::list_from(call);
    }
    if (op == "lambda") {
      arity(2);
      std::vector<ValuePtr> names = items_of(*args[0], where);
      check_locals(names, where);
      std::set<Symbol> inner = scope;
      for (const auto& n : names) inner.insert(n->sym());
      return list({make_sym("lambda"), args[0], expr(*args[1], inner, where)});
    }
    if (op == "call") {
      if (args.empty()) throw link_error("empty call in " + where);
      std::vector<ValuePtr> out{make_sym("call")};
      for (const auto& a : args) out.push_back(sub(*a));
      return kl::list_from(out);
    }
    if (auto prim = kl::prim_by_name(op)) {
      arity(kl::prim_arity(*prim));
      std::vector<ValuePtr> out{d.head()};
      for (const auto& a : args) out.push_back(sub(*a));
      return kl::list_from(out);
    }
    if (const KlsFunction* f = program_.find(op)) {
      arity(f->params.size());
      std::vector<ValuePtr> out{make_sym("call"), access_.at(f->name), make_sym(lib_)};
      for (const auto& a : args) out.push_back(sub(*a));
      return kl::list_from(out);
    }
    throw link_error("unknown operator " + op + " in " + where);
  }

  ValuePtr junction(bool conj, const std::vector<ValuePtr>& args, std::size_t i, const std::set<Symbol>& scope,
                    const std::string& where) {
    if (i == args.size()) return conj ? quote_sym("t") : nil();
    if (i + 1 == args.size()) return expr(*args[i], scope, where);
    ValuePtr first = expr(*args[i], scope, where);
    ValuePtr rest = junction(conj, args, i + 1, scope, where);
    if (conj) return list({make_sym("if"), first, rest, nil()});
    return list({make_sym("if"), first, quote_sym("t"), rest});
  }

  ValuePtr cond(const std::vector<ValuePtr>& clauses, std::size_t i, const std::set<Symbol>& scope,
                const std::string& where) {
    if (i == clauses.size()) throw link_error("cond without else in " + where);
    auto parts = items_of(*clauses[i], where);
    if (parts.size() != 2) throw link_error("cond clause needs a test and a value in " + where);
    if (parts[0]->is_sym() && parts[0]->sym()->name == "else") {
      if (i + 1 != clauses.size()) throw link_error("else must be last in " + where);
      return expr(*parts[1], scope, where);
    }
    return list({make_sym("if"), expr(*parts[0], scope, where), expr(*parts[1], scope, where),
                 cond(clauses, i + 1, scope, where)});
  }

  void check_locals(const std::vector<ValuePtr>& names, const std::string& where) {
    for (const auto& n : names) {
      if (!n->is_sym() || n->sym() == lib_ || program_.find(n->sym()->name) != nullptr) {
        throw link_error("bad local name in " + where);
      }
    }
  }

  const KlsProgram& program_;
  std::map<Symbol, ValuePtr> access_;
  Symbol lib_;
};

ValuePtr tree(const std::vector<ValuePtr>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return leaves[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return list({make_sym("cons"), tree(leaves, lo, mid), tree(leaves, mid, hi)});
}

void paths(std::size_t lo, std::size_t hi, const ValuePtr& at, std::vector<ValuePtr>& out) {
  if (hi - lo == 1) {
    out[lo] = at;
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  paths(lo, mid, list({make_sym("head"), at}), out);
  paths(mid, hi, list({make_sym("tail"), at}), out);
}

}  // namespace

const KlsFunction* KlsProgram::find(std::string_view name) const {
  for (const auto& f : functions) {
    if (f.name->name == name) return &f;
  }
  return nullptr;
}

KlsProgram parse_kls(std::string_view text) {
  KlsProgram program;
  std::set<Symbol> seen;
  for (const auto& form : kl::parse_data(text)) {
    if (is_tag(*form, "hot")) {
      for (const auto& name : items_of(*form->tail(), "hot list")) {
        if (!name->is_sym()) throw link_error("hot list entries must be names");
        program.hot.push_back(name->sym());
      }
      continue;
    }
    auto parts = items_of(*form, "definition");
    if (parts.size() != 3 || !is_tag(*form, "define") || !parts[1]->is_pair()) {
      throw link_error("expected (define (name param ...) body)");
    }
    auto sig = items_of(*parts[1], "definition");
    KlsFunction f;
    for (const auto& s : sig) {
      if (!s->is_sym()) throw link_error("definition names must be symbols");
    }
    f.name = sig[0]->sym();
    for (std::size_t i = 1; i < sig.size(); ++i) f.params.push_back(sig[i]->sym());
    f.body = parts[2];
    if (!seen.insert(f.name).second) throw link_error("duplicate definition of " + f.name->name);
    program.functions.push_back(std::move(f));
  }
  return program;
}

kl::ExprPtr link(const KlsProgram& program, std::string_view entry) {
  const KlsFunction* main = program.find(entry);
  if (main == nullptr) throw link_error("no entry " + std::string(entry));
  std::set<Symbol> reachable{main->name};
  std::vector<Symbol> work{main->name};
  while (!work.empty()) {
    const KlsFunction* f = program.find(work.back()->name);
    work.pop_back();
    std::set<Symbol> called;
    Compiler::calls(*f->body, program, called);
    for (Symbol s : called) {
      if (reachable.insert(s).second) work.push_back(s);
    }
  }
  std::vector<const KlsFunction*> order;
  std::set<Symbol> placed;
  for (Symbol s : program.hot) {
    const KlsFunction* f = program.find(s->name);
    if (f == nullptr) throw link_error("unknown hot function " + s->name);
    if (reachable.count(s) && placed.insert(s).second) order.push_back(f);
  }
  const std::size_t hot = order.size();
  for (const auto& f : program.functions) {
    if (reachable.count(f.name) && !placed.count(f.name)) order.push_back(&f);
  }
  const ValuePtr lib = make_sym("lib");
  std::vector<ValuePtr> access(order.size());
  const bool split = hot > 0 && hot < order.size();
  if (split) {
    paths(0, hot, list({make_sym("head"), lib}), access);
    paths(hot, order.size(), list({make_sym("tail"), lib}), access);
  } else {
    paths(0, order.size(), lib, access);
  }
  std::map<Symbol, ValuePtr> by_name;
  for (std::size_t i = 0; i < order.size(); ++i) by_name[order[i]->name] = access[i];
  Compiler compiler(program, by_name);
  std::vector<ValuePtr> leaves;
  for (const auto* f : order) leaves.push_back(compiler.function(*f));
  std::vector<ValuePtr> params;
  std::vector<ValuePtr> call{make_sym("call"), by_name.at(main->name), lib};
  for (Symbol p : main->params) {
    params.push_back(make_sym(p));
    call.push_back(make_sym(p));
  }
  ValuePtr body = list({make_sym("call"), list({make_sym("lambda"), list({lib}), kl::list_from(call)}),
                        split ? list({make_sym("cons"), tree(leaves, 0, hot), tree(leaves, hot, leaves.size())})
                              : tree(leaves, 0, leaves.size())});
  return kl::expr_from_datum(*list({make_sym("lambda"), kl::list_from(params), body}));
}

ValuePtr quoted_constant(const KlsProgram& program, std::string_view name) {
  const KlsFunction* f = program.find(name);
  if (f == nullptr || !f->params.empty() || !is_tag(*f->body, "quote")) {
    throw link_error("no quoted constant " + std::string(name));
  }
  return f->body->tail()->head();
}

}  // namespace exm::obj
