// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "arith/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <utility>

#include "core/error.hpp"

namespace exm::ar {

TermPtr num(const Natural& n) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::num;
  t->value = n;
  return t;
}

TermPtr var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::var;
  t->name = std::move(name);
  return t;
}

namespace {

TermPtr binary(TermKind k, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

FormulaPtr atom(FormulaKind k, TermPtr a, TermPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->l = std::move(a);
  f->r = std::move(b);
  return f;
}

FormulaPtr connective(FormulaKind k, std::vector<FormulaPtr> kids) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->kids = std::move(kids);
  return f;
}

FormulaPtr quantifier(FormulaKind k, std::string v, TermPtr bound, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = std::move(v);
  f->bound = std::move(bound);
  f->kids.push_back(std::move(body));
  return f;
}

}  // namespace

TermPtr add(TermPtr a, TermPtr b) { return binary(TermKind::add, std::move(a), std::move(b)); }
TermPtr mul(TermPtr a, TermPtr b) { return binary(TermKind::mul, std::move(a), std::move(b)); }
TermPtr pow(TermPtr a, TermPtr b) { return binary(TermKind::pow, std::move(a), std::move(b)); }

TermPtr sum(const std::vector<TermPtr>& terms) {
  if (terms.empty()) return num(0);
  TermPtr acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = add(acc, terms[i]);
  return acc;
}

FormulaPtr eq(TermPtr a, TermPtr b) { return atom(FormulaKind::eq, std::move(a), std::move(b)); }
FormulaPtr lt(TermPtr a, TermPtr b) { return atom(FormulaKind::lt, std::move(a), std::move(b)); }
FormulaPtr le(TermPtr a, TermPtr b) { return lt(std::move(a), add(std::move(b), num(1))); }
FormulaPtr not_(FormulaPtr f) { return connective(FormulaKind::not_, {std::move(f)}); }
FormulaPtr and_(std::vector<FormulaPtr> kids) { return connective(FormulaKind::and_, std::move(kids)); }
FormulaPtr or_(std::vector<FormulaPtr> kids) { return connective(FormulaKind::or_, std::move(kids)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return connective(FormulaKind::implies, {std::move(a), std::move(b)}); }
FormulaPtr exists_below(std::string v, TermPtr bound, FormulaPtr body) {
  return quantifier(FormulaKind::exists_below, std::move(v), std::move(bound), std::move(body));
}
FormulaPtr forall_below(std::string v, TermPtr bound, FormulaPtr body) {
  return quantifier(FormulaKind::forall_below, std::move(v), std::move(bound), std::move(body));
}
FormulaPtr exists(std::string v, FormulaPtr body) {
  return quantifier(FormulaKind::exists, std::move(v), nullptr, std::move(body));
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

const char* op_name(TermKind k) {
  switch (k) {
    case TermKind::add: return "+";
    case TermKind::mul: return "*";
    default: return "^";
  }
}

const char* op_name(FormulaKind k) {
  switch (k) {
    case FormulaKind::eq: return "=";
    case FormulaKind::lt: return "<";
    case FormulaKind::not_: return "not";
    case FormulaKind::and_: return "and";
    case FormulaKind::or_: return "or";
    case FormulaKind::implies: return "implies";
    case FormulaKind::exists_below: return "exists-below";
    case FormulaKind::forall_below: return "forall-below";
    case FormulaKind::exists: return "exists";
  }
  return "";
}

void render_to(const Term& t, std::string& out) {
  switch (t.kind) {
    case TermKind::num: out += t.value.str(); return;
    case TermKind::var: out += t.name; return;
    default:
      out += '(';
      out += op_name(t.kind);
      out += ' ';
      render_to(*t.a, out);
      out += ' ';
      render_to(*t.b, out);
      out += ')';
  }
}

void render_to(const Formula& f, std::string& out) {
  out += '(';
  out += op_name(f.kind);
  switch (f.kind) {
    case FormulaKind::eq:
    case FormulaKind::lt:
      out += ' ';
      render_to(*f.l, out);
      out += ' ';
      render_to(*f.r, out);
      break;
    case FormulaKind::exists_below:
    case FormulaKind::forall_below:
      out += ' ' + f.var + ' ';
      render_to(*f.bound, out);
      out += ' ';
      render_to(*f.kids[0], out);
      break;
    case FormulaKind::exists:
      out += ' ' + f.var + ' ';
      render_to(*f.kids[0], out);
      break;
    default:
      for (const FormulaPtr& k : f.kids) {
        out += ' ';
        render_to(*k, out);
      }
  }
  out += ')';
}

struct Sexp {
  std::string atom;
  std::vector<Sexp> items;
  bool is_list = false;
  std::size_t pos = 0;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Sexp read_all() {
    Sexp s = read();
    skip();
    if (i_ != text_.size()) fail("trailing text");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::syntax, "formula: " + what + " at offset " + std::to_string(i_), std::to_string(i_));
  }

  void skip() {
    while (i_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[i_]))) {
        ++i_;
      } else if (text_[i_] == ';') {
        while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip();
    if (i_ >= text_.size()) fail("unexpected end");
    Sexp s;
    s.pos = i_;
    if (text_[i_] == '(') {
      ++i_;
      s.is_list = true;
      for (;;) {
        skip();
        if (i_ >= text_.size()) fail("unclosed list");
        if (text_[i_] == ')') {
          ++i_;
          return s;
        }
        s.items.push_back(read());
      }
    }
    if (text_[i_] == ')') fail("unexpected ')'");
    while (i_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i_])) && text_[i_] != '(' &&
           text_[i_] != ')' && text_[i_] != ';') {
      s.atom += text_[i_++];
    }
    return s;
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

[[noreturn]] void bad(const Sexp& s, const std::string& what) {
  throw Error(ErrorCode::syntax, "formula: " + what + " at offset " + std::to_string(s.pos), std::to_string(s.pos));
}

bool is_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"not", "and", "or", "implies", "exists-below", "forall-below", "exists"};
  return k;
}

std::string name_of(const Sexp& s) {
  if (s.is_list || !is_name(s.atom) || keywords().count(s.atom)) bad(s, "expected a variable name");
  return s.atom;
}

TermPtr term_of(const Sexp& s) {
  if (!s.is_list) {
    if (!s.atom.empty() && std::isdigit(static_cast<unsigned char>(s.atom[0]))) {
      auto n = parse_decimal(s.atom);
      if (!n) bad(s, "bad numeral");
      return num(*n);
    }
    return var(name_of(s));
  }
  if (s.items.size() != 3 || s.items[0].is_list) bad(s, "expected (op a b)");
  const std::string& op = s.items[0].atom;
  TermPtr a = term_of(s.items[1]);
  TermPtr b = term_of(s.items[2]);
  if (op == "+") return add(a, b);
  if (op == "*") return mul(a, b);
  if (op == "^") return pow(a, b);
  bad(s, "unknown term operator");
}

FormulaPtr formula_of(const Sexp& s) {
  if (!s.is_list || s.items.empty() || s.items[0].is_list) bad(s, "expected a formula");
  const std::string& op = s.items[0].atom;
  const std::size_t n = s.items.size();
  if (op == "=" || op == "<") {
    if (n != 3) bad(s, "atom takes two terms");
    return op == "=" ? eq(term_of(s.items[1]), term_of(s.items[2])) : lt(term_of(s.items[1]), term_of(s.items[2]));
  }
  if (op == "not") {
    if (n != 2) bad(s, "not takes one formula");
    return not_(formula_of(s.items[1]));
  }
  if (op == "and" || op == "or") {
    std::vector<FormulaPtr> kids;
    for (std::size_t i = 1; i < n; ++i) kids.push_back(formula_of(s.items[i]));
    return op == "and" ? and_(std::move(kids)) : or_(std::move(kids));
  }
  if (op == "implies") {
    if (n != 3) bad(s, "implies takes two formulas");
    return implies(formula_of(s.items[1]), formula_of(s.items[2]));
  }
  if (op == "exists-below" || op == "forall-below") {
    if (n != 4) bad(s, op + " takes a name, a bound and a body");
    std::string v = name_of(s.items[1]);
    return op == "exists-below" ? exists_below(v, term_of(s.items[2]), formula_of(s.items[3]))
                                : forall_below(v, term_of(s.items[2]), formula_of(s.items[3]));
  }
  if (op == "exists") {
    if (n != 3) bad(s, "exists takes a name and a body");
    return exists(name_of(s.items[1]), formula_of(s.items[2]));
  }
  bad(s, "unknown formula operator");
}

}  // namespace

std::string render(const Term& t) {
  std::string out;
  render_to(t, out);
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  render_to(f, out);
  return out;
}

FormulaPtr parse_formula(std::string_view text) { return formula_of(Reader(text).read_all()); }
TermPtr parse_term(std::string_view text) { return term_of(Reader(text).read_all()); }

std::size_t unbounded_quantifiers(const Formula& f) {
  std::size_t n = f.kind == FormulaKind::exists ? 1 : 0;
  for (const FormulaPtr& k : f.kids) n += unbounded_quantifiers(*k);
  return n;
}

namespace {

void term_vars(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (t.kind == TermKind::var) {
    if (!bound.count(t.name)) out.insert(t.name);
  } else if (t.kind != TermKind::num) {
    term_vars(*t.a, bound, out);
    term_vars(*t.b, bound, out);
  }
}

void formula_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f.l) term_vars(*f.l, bound, out);
  if (f.r) term_vars(*f.r, bound, out);
  if (f.bound) term_vars(*f.bound, bound, out);
  const bool binds = !f.var.empty() && !bound.count(f.var);
  if (binds) bound.insert(f.var);
  for (const FormulaPtr& k : f.kids) formula_vars(*k, bound, out);
  if (binds) bound.erase(f.var);
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  formula_vars(f, bound, out);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

struct CTerm {
  TermKind kind;
  Natural value;
  int slot = -1;
  const CTerm* a = nullptr;
  const CTerm* b = nullptr;
  std::vector<int> slots;
  std::vector<int> exp_slots;
};

struct CForm {
  FormulaKind kind;
  const CTerm* l = nullptr;
  const CTerm* r = nullptr;
  const CTerm* bound = nullptr;
  int slot = -1;
  std::vector<const CForm*> kids;
  std::vector<int> slots;
  bool quantifier_free = true;
};

std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

using Intervals = std::vector<std::pair<Natural, Natural>>;

Intervals intersect(const Intervals& a, const Intervals& b) {
  Intervals out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    Natural lo = std::max(a[i].first, b[j].first);
    Natural hi = std::min(a[i].second, b[j].second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a[i].second < b[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

Intervals unite(Intervals a, const Intervals& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  Intervals out;
  for (auto& iv : a) {
    if (!out.empty() && iv.first <= out.back().second) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

class Evaluator {
 public:
  explicit Evaluator(const std::vector<std::string>& free) {
    for (const std::string& name : free) {
      scope_.emplace_back(name, static_cast<int>(vals_.size()));
      vals_.emplace_back();
      bound_.push_back(1);
    }
  }

  bool run(const CForm& f, const std::vector<Natural>& values, const EvalOptions& opts, EvalStats* stats) {
    if (values.size() > vals_.size()) throw Error(ErrorCode::invalid_argument, "too many values");
    std::copy(values.begin(), values.end(), vals_.begin());
    opts_ = opts;
    nodes_ = 0;
    bool result = eval(f);
    if (stats) stats->nodes = nodes_;
    return result;
  }

  const CForm* compile(const Formula& f) {
    CForm& c = forms_.emplace_back();
    c.kind = f.kind;
    switch (f.kind) {
      case FormulaKind::eq:
      case FormulaKind::lt:
        c.l = compile(*f.l);
        c.r = compile(*f.r);
        c.slots = merge(c.l->slots, c.r->slots);
        break;
      case FormulaKind::exists_below:
      case FormulaKind::forall_below:
      case FormulaKind::exists: {
        if (f.bound) c.bound = compile(*f.bound);
        for (const auto& [name, slot] : scope_) {
          if (name == f.var) throw Error(ErrorCode::invalid_argument, "variable " + f.var + " is bound twice");
        }
        c.slot = static_cast<int>(vals_.size());
        vals_.emplace_back();
        bound_.push_back(0);
        scope_.emplace_back(f.var, c.slot);
        const CForm* body = compile(*f.kids[0]);
        scope_.pop_back();
        c.kids.push_back(body);
        c.slots = body->slots;
        c.slots.erase(std::remove(c.slots.begin(), c.slots.end(), c.slot), c.slots.end());
        if (c.bound) c.slots = merge(c.slots, c.bound->slots);
        c.quantifier_free = false;
        break;
      }
      default:
        if (f.kind == FormulaKind::not_ && f.kids.size() != 1) throw Error(ErrorCode::invalid_argument, "bad not");
        if (f.kind == FormulaKind::implies && f.kids.size() != 2) throw Error(ErrorCode::invalid_argument, "bad implies");
        for (const FormulaPtr& k : f.kids) {
          const CForm* ck = compile(*k);
          c.kids.push_back(ck);
          c.slots = merge(c.slots, ck->slots);
          c.quantifier_free = c.quantifier_free && ck->quantifier_free;
        }
    }
    return &c;
  }

  bool eval(const CForm& f) {
    tick();
    switch (f.kind) {
      case FormulaKind::eq: return term(*f.l) == term(*f.r);
      case FormulaKind::lt: return term(*f.l) < term(*f.r);
      case FormulaKind::not_: return !eval(*f.kids[0]);
      case FormulaKind::and_:
        for (const CForm* k : f.kids) {
          if (!eval(*k)) return false;
        }
        return true;
      case FormulaKind::or_:
        for (const CForm* k : f.kids) {
          if (eval(*k)) return true;
        }
        return false;
      case FormulaKind::implies: return !eval(*f.kids[0]) || eval(*f.kids[1]);
      case FormulaKind::exists_below: return exists(f, term(*f.bound));
      case FormulaKind::exists:
        if (!opts_.cap) throw Error(ErrorCode::unbounded_quantifier, "unbounded quantifier needs a cap");
        return exists(f, *opts_.cap);
      case FormulaKind::forall_below: {
        const Natural limit = term(*f.bound);
        bound_[f.slot] = 1;
        bool ok = true;
        for (Natural x = 0; x < limit; ++x) {
          vals_[f.slot] = x;
          if (!eval(*f.kids[0])) {
            ok = false;
            break;
          }
        }
        bound_[f.slot] = 0;
        return ok;
      }
    }
    return false;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const CTerm* compile(const Term& t) {
    CTerm& c = terms_.emplace_back();
    c.kind = t.kind;
    switch (t.kind) {
      case TermKind::num: c.value = t.value; break;
      case TermKind::var: {
        auto it = std::find_if(scope_.rbegin(), scope_.rend(), [&](const auto& p) { return p.first == t.name; });
        if (it == scope_.rend()) throw Error(ErrorCode::invalid_argument, "unbound variable " + t.name);
        c.slot = it->second;
        c.slots = {c.slot};
        break;
      }
      default:
        c.a = compile(*t.a);
        c.b = compile(*t.b);
        c.slots = merge(c.a->slots, c.b->slots);
        c.exp_slots = merge(c.a->exp_slots, c.b->exp_slots);
        if (t.kind == TermKind::pow) c.exp_slots = merge(c.exp_slots, c.b->slots);
    }
    return &c;
  }

  void tick() {
    if (++nodes_ > opts_.budget) throw Error(ErrorCode::budget_exceeded, "formula evaluation budget exhausted");
  }

  Natural term(const CTerm& t) {
    tick();
    switch (t.kind) {
      case TermKind::num: return t.value;
      case TermKind::var: return vals_[t.slot];
      case TermKind::add: return term(*t.a) + term(*t.b);
      case TermKind::mul: return term(*t.a) * term(*t.b);
      case TermKind::pow: {
        Natural base = term(*t.a);
        Natural e = term(*t.b);
        if (base < 2 || e == 0) return e == 0 ? Natural(1) : base;
        if (e > 1'000'000) throw Error(ErrorCode::budget_exceeded, "exponent too large to evaluate");
        return boost::multiprecision::pow(base, static_cast<unsigned>(e));
      }
    }
    return 0;
  }

  bool all_bound(const std::vector<int>& slots, int except) const {
    return std::all_of(slots.begin(), slots.end(), [&](int s) { return s == except || bound_[s]; });
  }

  // Least x in [lo, hi) with g(x) >= c (or > c when strict); hi if none.
  Natural first_reaching(const CTerm& g, int v, const Natural& c, bool strict, Natural lo, Natural hi) {
    while (lo < hi) {
      Natural mid = lo + (hi - lo) / 2;
      vals_[v] = mid;
      Natural val = term(g);
      if (strict ? val > c : val >= c) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

  // A superset of the values of v in [lo, hi) satisfying f. Every term is
  // nondecreasing in each variable outside exponents, so an atom with v on
  // one side only cuts out an interval found by bisection.
  Intervals narrow(const CForm& f, int v, const Natural& lo, const Natural& hi) {
    const Intervals all{{lo, hi}};
    if (!contains(f.slots, v)) {
      if (f.quantifier_free && all_bound(f.slots, -1)) return eval(f) ? all : Intervals{};
      return all;
    }
    switch (f.kind) {
      case FormulaKind::and_: {
        Intervals acc = all;
        for (const CForm* k : f.kids) {
          acc = intersect(acc, narrow(*k, v, lo, hi));
          if (acc.empty()) break;
        }
        return acc;
      }
      case FormulaKind::or_: {
        Intervals acc;
        for (const CForm* k : f.kids) {
          acc = unite(std::move(acc), narrow(*k, v, lo, hi));
          if (acc == all) break;
        }
        return acc;
      }
      case FormulaKind::eq:
      case FormulaKind::lt: {
        const bool left = contains(f.l->slots, v);
        const bool right = contains(f.r->slots, v);
        if (left == right) return all;
        const CTerm& g = left ? *f.l : *f.r;
        const CTerm& c = left ? *f.r : *f.l;
        if (contains(g.exp_slots, v) || !all_bound(g.slots, v) || !all_bound(c.slots, -1)) return all;
        const Natural k = term(c);
        Intervals out;
        if (f.kind == FormulaKind::eq) {
          Natural a = first_reaching(g, v, k, false, lo, hi);
          Natural b = first_reaching(g, v, k, true, a, hi);
          if (a < b) out.emplace_back(a, b);
        } else if (left) {
          Natural b = first_reaching(g, v, k, false, lo, hi);
          if (lo < b) out.emplace_back(lo, b);
        } else {
          Natural a = first_reaching(g, v, k, true, lo, hi);
          if (a < hi) out.emplace_back(a, hi);
        }
        return out;
      }
      case FormulaKind::exists_below:
      case FormulaKind::exists: {
        // {v : some u makes the body true} lies inside the union, over the
        // few candidate values of u, of the body's own bound for v.
        if (!contains(f.kids[0]->slots, v)) return all;
        Natural limit;
        if (f.bound) {
          if (contains(f.bound->slots, v) || !all_bound(f.bound->slots, -1)) return all;
          limit = term(*f.bound);
        } else {
          if (!opts_.cap) return all;
          limit = *opts_.cap;
        }
        Intervals inner = limit > 0 ? narrow(*f.kids[0], f.slot, 0, limit) : Intervals{};
        Natural count = 0;
        for (const auto& [a, b] : inner) count += b - a;
        if (count > kInnerCandidates) return all;
        Intervals acc;
        bound_[f.slot] = 1;
        for (const auto& [a, b] : inner) {
          for (Natural x = a; x < b; ++x) {
            vals_[f.slot] = x;
            acc = unite(std::move(acc), narrow(*f.kids[0], v, lo, hi));
          }
        }
        bound_[f.slot] = 0;
        return acc;
      }
      default:
        return all;
    }
  }

  static constexpr unsigned kInnerCandidates = 64;

  bool exists(const CForm& f, const Natural& limit) {
    Intervals ivs;
    if (limit > 0) ivs = opts_.narrowing ? narrow(*f.kids[0], f.slot, 0, limit) : Intervals{{0, limit}};
    bound_[f.slot] = 1;
    bool found = false;
    for (const auto& [a, b] : ivs) {
      for (Natural x = a; x < b && !found; ++x) {
        vals_[f.slot] = x;
        found = eval(*f.kids[0]);
      }
      if (found) break;
    }
    bound_[f.slot] = 0;
    return found;
  }

  EvalOptions opts_;
  std::deque<CTerm> terms_;
  std::deque<CForm> forms_;
  std::vector<std::pair<std::string, int>> scope_;
  std::vector<Natural> vals_;
  std::vector<char> bound_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

struct PreparedFormula::Impl {
  Impl(const Formula& f, const std::vector<std::string>& free) : ev(free), root(ev.compile(f)) {}
  Evaluator ev;
  const CForm* root;
};

PreparedFormula::PreparedFormula(FormulaPtr f, std::vector<std::string> free)
    : formula_(std::move(f)), free_(std::move(free)), impl_(std::make_unique<Impl>(*formula_, free_)) {}
PreparedFormula::~PreparedFormula() = default;
PreparedFormula::PreparedFormula(PreparedFormula&&) noexcept = default;

bool PreparedFormula::eval(const std::vector<Natural>& values, const EvalOptions& opts, EvalStats* stats) {
  if (values.size() != free_.size()) throw Error(ErrorCode::invalid_argument, "one value per variable is required");
  return impl_->ev.run(*impl_->root, values, opts, stats);
}

bool eval_formula(const Formula& f, const Env& env, const EvalOptions& opts, EvalStats* stats) {
  std::vector<std::string> names;
  std::vector<Natural> values;
  for (const auto& [name, value] : env) {
    names.push_back(name);
    values.push_back(value);
  }
  Evaluator ev(names);
  const CForm* c = ev.compile(f);
  return ev.run(*c, values, opts, stats);
}

bool eval_formula(const Formula& f, const Env& env, const std::optional<Natural>& cap) {
  EvalOptions opts;
  opts.cap = cap;
  return eval_formula(f, env, opts);
}

}  // namespace exm::ar
