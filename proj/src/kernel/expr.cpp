// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernel/expr.hpp"

#include <array>
#include <unordered_map>
#include <unordered_set>

#include "core/error.hpp"
#include "core/hash.hpp"

namespace exm::kl {
namespace {

struct PrimInfo {
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<PrimInfo, kPrimCount> kPrims = {{
    {"eq", 2},
    {"cons", 2},
    {"head", 1},
    {"tail", 1},
    {"pairp", 1},
    {"symp", 1},
    {"natp", 1},
    {"zerop", 1},
    {"succ", 1},
    {"pred", 1},
    {"sym-nat", 1},
    {"nat-sym", 1},
}};

constexpr std::size_t kExprTag = 0x45585052;

Error syntax_error(std::size_t pos, const std::string& what) {
  return Error(ErrorCode::syntax, "syntax error at " + std::to_string(pos) + ": " + what,
               std::to_string(pos));
}

}  // namespace

std::string_view prim_name(PrimOp op) noexcept { return kPrims[static_cast<std::size_t>(op)].name; }
std::size_t prim_arity(PrimOp op) noexcept { return kPrims[static_cast<std::size_t>(op)].arity; }

std::optional<PrimOp> prim_by_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kPrimCount; ++i) {
    if (kPrims[i].name == name) return static_cast<PrimOp>(i);
  }
  return std::nullopt;
}

std::size_t sequence_seed() noexcept { return hash_mix(kExprTag, 0x534551); }

void Expr::seal() {
  suffix_.assign(kids_.size() + 1, sequence_seed());
  for (std::size_t i = kids_.size(); i-- > 0;) suffix_[i] = hash_mix(suffix_[i + 1], kids_[i]->hash());
  std::size_t h = hash_mix(kExprTag, static_cast<std::size_t>(kind_) * 16 + static_cast<std::size_t>(op_));
  if (name_ != nullptr) h = hash_mix(h, name_->hash);
  if (literal_) h = hash_mix(h, literal_->hash());
  for (Symbol p : params_) h = hash_mix(h, p->hash);
  hash_ = hash_mix(h, suffix_[0]);
}

ExprPtr Expr::var(Symbol name) {
  auto* e = new Expr(ExprKind::var, PrimOp::eq);
  e->name_ = name;
  e->seal();
  return ExprPtr(e);
}

ExprPtr Expr::nat(const Natural& n) {
  auto* e = new Expr(ExprKind::nat, PrimOp::eq);
  e->literal_ = make_nat(n);
  e->seal();
  return ExprPtr(e);
}

ExprPtr Expr::nil() {
  static const ExprPtr* instance = [] {
    auto* e = new Expr(ExprKind::nil, PrimOp::eq);
    e->literal_ = kl::nil();
    e->seal();
    return new ExprPtr(e);
  }();
  return *instance;
}

ExprPtr Expr::quote(ValuePtr datum) {
  if (datum->has_closure()) throw Error(ErrorCode::invalid_argument, "quoted datum contains a closure");
  auto* e = new Expr(ExprKind::quote, PrimOp::eq);
  e->literal_ = std::move(datum);
  e->seal();
  return ExprPtr(e);
}

ExprPtr Expr::lambda(std::vector<Symbol> params, ExprPtr body) {
  std::unordered_set<Symbol> seen;
  for (Symbol p : params) {
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::invalid_argument, "duplicate lambda parameter " + p->name);
    }
  }
  auto* e = new Expr(ExprKind::lambda, PrimOp::eq);
  e->params_ = std::move(params);
  e->kids_.push_back(std::move(body));
  e->seal();
  return ExprPtr(e);
}

ExprPtr Expr::call(ExprPtr callee, std::vector<ExprPtr> args) {
  auto* e = new Expr(ExprKind::call, PrimOp::eq);
  e->kids_.reserve(args.size() + 1);
  e->kids_.push_back(std::move(callee));
  for (auto& a : args) e->kids_.push_back(std::move(a));
  e->seal();
  return ExprPtr(e);
}

ExprPtr Expr::if_(ExprPtr c, ExprPtr t, ExprPtr f) {
  auto* e = new Expr(ExprKind::if_, PrimOp::eq);
  e->kids_ = {std::move(c), std::move(t), std::move(f)};
  e->seal();
  return ExprPtr(e);
}

ExprPtr Expr::prim(PrimOp op, std::vector<ExprPtr> args) {
  if (args.size() != prim_arity(op)) {
    throw Error(ErrorCode::invalid_argument, "wrong arity for " + std::string(prim_name(op)));
  }
  auto* e = new Expr(ExprKind::prim, op);
  e->kids_ = std::move(args);
  e->seal();
  return ExprPtr(e);
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.op() != b.op()) return false;
  if (a.name() != b.name() || a.params() != b.params()) return false;
  if (static_cast<bool>(a.literal()) != static_cast<bool>(b.literal())) return false;
  if (a.literal() && !value_equal(*a.literal(), *b.literal())) return false;
  return expr_suffix_equal(a, 0, b, 0);
}

bool expr_suffix_equal(const Expr& a, std::size_t ia, const Expr& b, std::size_t ib) {
  if (a.suffix_hash(ia) != b.suffix_hash(ib)) return false;
  if (a.kids().size() - ia != b.kids().size() - ib) return false;
  for (; ia < a.kids().size(); ++ia, ++ib) {
    if (!expr_equal(*a.kids()[ia], *b.kids()[ib])) return false;
  }
  return true;
}

ValuePtr expr_to_datum(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::var: return make_sym(e.name());
    case ExprKind::nat:
    case ExprKind::nil: return e.literal();
    case ExprKind::quote: return list({make_sym("quote"), e.literal()});
    case ExprKind::lambda: {
      std::vector<ValuePtr> ps;
      for (Symbol p : e.params()) ps.push_back(make_sym(p));
      return list({make_sym("lambda"), list_from(ps), expr_to_datum(*e.body())});
    }
    case ExprKind::call:
    case ExprKind::if_:
    case ExprKind::prim: {
      std::vector<ValuePtr> items;
      items.reserve(e.kids().size() + 1);
      if (e.kind() == ExprKind::call) {
        items.push_back(make_sym("call"));
      } else if (e.kind() == ExprKind::if_) {
        items.push_back(make_sym("if"));
      } else {
        items.push_back(make_sym(prim_name(e.op())));
      }
      for (const auto& k : e.kids()) items.push_back(expr_to_datum(*k));
      return list_from(items);
    }
  }
  return nil();
}

namespace {

using PositionMap = std::unordered_map<const Value*, std::size_t>;

std::size_t position_of(const PositionMap* pos, const Value& v, std::size_t fallback) {
  if (pos == nullptr) return fallback;
  auto it = pos->find(&v);
  return it == pos->end() ? fallback : it->second;
}

ExprPtr convert(const Value& d, const PositionMap* pos, std::size_t at) {
  at = position_of(pos, d, at);
  switch (d.kind()) {
    case ValueKind::sym: return Expr::var(d.sym());
    case ValueKind::nat: return Expr::nat(d.nat());
    case ValueKind::nil: return Expr::nil();
    case ValueKind::closure: throw syntax_error(at, "closure in code");
    case ValueKind::pair: break;
  }
  const long len = list_length(d);
  if (len < 0) throw syntax_error(at, "improper list in code");
  const Value& head = *d.head();
  if (!head.is_sym()) throw syntax_error(at, "form must start with a keyword");
  const std::string& kw = head.sym()->name;
  std::vector<ValuePtr> items = list_items(*d.tail());
  auto sub = [&](std::size_t i) { return convert(*items[i], pos, at); };
  if (kw == "quote") {
    if (items.size() != 1) throw syntax_error(at, "quote takes one datum");
    return Expr::quote(items[0]);
  }
  if (kw == "lambda") {
    if (items.size() != 2) throw syntax_error(at, "lambda takes a parameter list and a body");
    if (list_length(*items[0]) < 0) throw syntax_error(at, "parameter list is improper");
    std::vector<Symbol> params;
    std::unordered_set<Symbol> seen;
    for (const auto& p : list_items(*items[0])) {
      if (!p->is_sym()) throw syntax_error(position_of(pos, *p, at), "parameter must be a symbol");
      if (!seen.insert(p->sym()).second) {
        throw syntax_error(position_of(pos, *p, at), "duplicate parameter " + p->sym()->name);
      }
      params.push_back(p->sym());
    }
    return Expr::lambda(std::move(params), sub(1));
  }
  if (kw == "call") {
    if (items.empty()) throw syntax_error(at, "call needs a callee");
    std::vector<ExprPtr> args;
    for (std::size_t i = 1; i < items.size(); ++i) args.push_back(sub(i));
    return Expr::call(sub(0), std::move(args));
  }
  if (kw == "if") {
    if (items.size() != 3) throw syntax_error(at, "if takes three expressions");
    return Expr::if_(sub(0), sub(1), sub(2));
  }
  if (auto op = prim_by_name(kw)) {
    if (items.size() != prim_arity(*op)) throw syntax_error(at, "wrong arity for " + kw);
    std::vector<ExprPtr> args;
    for (std::size_t i = 0; i < items.size(); ++i) args.push_back(sub(i));
    return Expr::prim(*op, std::move(args));
  }
  throw syntax_error(at, "unknown form " + kw);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return i_ >= text_.size();
  }

  std::size_t offset() const { return i_; }

  ValuePtr read() {
    skip_space();
    if (i_ >= text_.size()) throw syntax_error(i_, "unexpected end of input");
    const char c = text_[i_];
    if (c == ')') throw syntax_error(i_, "unexpected ')'");
    if (c == '(') return read_list();
    const std::size_t start = i_;
    std::string_view tok = atom();
    if (tok == ".") throw syntax_error(start, "unexpected '.'");
    return make_atom(tok, start);
  }

  PositionMap positions;

 private:
  void skip_space() {
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++i_;
      } else if (c == ';') {
        while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  std::string_view atom() {
    const std::size_t start = i_;
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')' || c == ';') break;
      ++i_;
    }
    return text_.substr(start, i_ - start);
  }

  ValuePtr make_atom(std::string_view tok, std::size_t start) {
    ValuePtr v;
    if (tok[0] >= '0' && tok[0] <= '9') {
      auto n = parse_decimal(tok);
      if (!n) throw syntax_error(start, "malformed natural '" + std::string(tok) + "'");
      v = make_nat(*n);
      if (*n < 64) return v;
    } else {
      for (std::size_t k = 0; k < tok.size(); ++k) {
        if (!is_symbol_char(tok[k])) throw syntax_error(start + k, "illegal character");
      }
      v = make_sym(tok);
    }
    positions.emplace(v.get(), start);
    return v;
  }

  ValuePtr read_list() {
    const std::size_t open = i_++;
    std::vector<ValuePtr> items;
    ValuePtr tail = nil();
    while (true) {
      skip_space();
      if (i_ >= text_.size()) throw syntax_error(i_, "unbalanced '('");
      if (text_[i_] == ')') {
        ++i_;
        break;
      }
      if (text_[i_] != '(') {
        const std::size_t start = i_;
        std::string_view tok = atom();
        if (tok == ".") {
          if (items.empty()) throw syntax_error(start, "'.' without a head");
          tail = read();
          skip_space();
          if (i_ >= text_.size()) throw syntax_error(i_, "unbalanced '('");
          if (text_[i_] != ')') throw syntax_error(i_, "expected ')' after dotted tail");
          ++i_;
          break;
        }
        items.push_back(make_atom(tok, start));
        continue;
      }
      items.push_back(read_list());
    }
    ValuePtr out = tail;
    for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
    if (out->is_pair()) positions.emplace(out.get(), open);
    return out;
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

void render_into(const Value& v, std::string& out) {
  switch (v.kind()) {
    case ValueKind::nil: out += "()"; return;
    case ValueKind::nat: out += v.nat().str(); return;
    case ValueKind::sym: out += v.sym()->name; return;
    case ValueKind::closure: out += "#<closure>"; return;
    case ValueKind::pair: break;
  }
  out += '(';
  const Value* cur = &v;
  bool first = true;
  while (cur->is_pair()) {
    if (!first) out += ' ';
    first = false;
    render_into(*cur->head(), out);
    cur = cur->tail().get();
  }
  if (!cur->is_nil()) {
    out += " . ";
    render_into(*cur, out);
  }
  out += ')';
}

}  // namespace

ExprPtr expr_from_datum(const Value& d) { return convert(d, nullptr, 0); }

ValuePtr parse_datum(std::string_view text) {
  Reader r(text);
  ValuePtr v = r.read();
  if (!r.at_end()) throw syntax_error(r.offset(), "trailing input after datum");
  return v;
}

std::vector<ValuePtr> parse_data(std::string_view text) {
  Reader r(text);
  std::vector<ValuePtr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

ExprPtr parse_expr(std::string_view text) {
  Reader r(text);
  ValuePtr v = r.read();
  if (!r.at_end()) throw syntax_error(r.offset(), "trailing input after expression");
  return convert(*v, &r.positions, 0);
}

std::string render(const Value& v) {
  std::string out;
  render_into(v, out);
  return out;
}

std::string render(const Expr& e) { return render(*expr_to_datum(e)); }

}  // namespace exm::kl
