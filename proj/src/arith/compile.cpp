// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "arith/compile.hpp"

#include <algorithm>
#include <string>

#include "core/error.hpp"

namespace exm::ar {
namespace {

struct Layout {
  unsigned width;
  std::size_t registers;
  Natural base;

  TermPtr base_term() const { return pow(num(2), num(width)); }
  // base^k as a term.
  TermPtr place(std::size_t k) const { return k == 0 ? num(1) : pow(base_term(), num(k)); }
  // Bound on packed configurations: base^(registers + 1).
  TermPtr config_bound() const { return place(registers + 1); }
};

struct Digits {
  std::string pc;
  std::vector<std::string> regs;
};

Layout layout_for(const CounterProgram& p, unsigned width) {
  validate(p);
  Layout l{width, p.registers(), digit_base(width)};
  if (Natural(p.size()) >= l.base) throw Error(ErrorCode::width_overflow, "program labels do not fit the width");
  return l;
}

Digits make_digits(const Layout& l, const std::string& suffix) {
  Digits d{"p" + suffix, {}};
  for (std::size_t j = 0; j < l.registers; ++j) d.regs.push_back("r" + suffix + "_" + std::to_string(j));
  return d;
}

// sum over i >= from of base^(i+1) * r_i.
TermPtr high_part(const Layout& l, const Digits& d, std::size_t from) {
  std::vector<TermPtr> parts;
  for (std::size_t i = l.registers; i-- > from;) parts.push_back(mul(l.place(i + 1), var(d.regs[i])));
  return sum(parts);
}

// Binds the digits of x most significant first, each pinned by the range
// x lies in, then requires `then`.
FormulaPtr decode(const Layout& l, const TermPtr& x, const Digits& d, FormulaPtr then) {
  FormulaPtr body = and_({eq(x, add(high_part(l, d, 0), var(d.pc))), std::move(then)});
  body = exists_below(d.pc, l.base_term(), body);
  for (std::size_t j = 0; j < l.registers; ++j) {
    TermPtr low = high_part(l, d, j);
    body = exists_below(d.regs[j], l.base_term(),
                        and_({le(low, x), lt(x, add(low, l.place(j + 1))), std::move(body)}));
  }
  return body;
}

// Packed value of a configuration with the given pc term and registers.
TermPtr packed(const Layout& l, TermPtr pc, const Digits& d) { return add(pc, high_part(l, d, 0)); }

FormulaPtr halted(const CounterProgram& p, const Digits& d) {
  std::vector<FormulaPtr> cases;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.code[i].op == Op::halt) cases.push_back(eq(var(d.pc), num(i)));
  }
  cases.push_back(eq(var(d.pc), num(p.size())));
  return or_(std::move(cases));
}

// y is the successor of the configuration with digits d.
FormulaPtr next(const CounterProgram& p, const Layout& l, const Digits& d, const TermPtr& y) {
  std::vector<FormulaPtr> cases;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Instr& ins = p.code[i];
    const TermPtr at = num(i);
    const TermPtr reg = var(d.regs[ins.reg]);
    if (ins.op == Op::inc) {
      cases.push_back(and_({eq(var(d.pc), at), lt(add(reg, num(1)), l.base_term()),
                            eq(y, add(packed(l, num(i + 1), d), l.place(ins.reg + 1)))}));
    } else if (ins.op == Op::decjz) {
      cases.push_back(and_({eq(var(d.pc), at), eq(reg, num(0)), eq(y, packed(l, num(ins.target), d))}));
      cases.push_back(and_({eq(var(d.pc), at), lt(num(0), reg),
                            eq(add(y, l.place(ins.reg + 1)), packed(l, num(i + 1), d))}));
    }
  }
  return or_(std::move(cases));
}

// Configurations remaining including x's; x is already bound.
FormulaPtr run_from(const CounterProgram& p, const Layout& l, const std::string& x, std::uint64_t remaining,
                    std::uint64_t level) {
  const Digits d = make_digits(l, std::to_string(level));
  std::vector<FormulaPtr> options{halted(p, d)};
  if (remaining > 1) {
    const std::string y = "c" + std::to_string(level + 1);
    options.push_back(exists_below(
        y, l.config_bound(), and_({next(p, l, d, var(y)), run_from(p, l, y, remaining - 1, level + 1)})));
  }
  return decode(l, var(x), d, or_(std::move(options)));
}

// The configuration at index k of history h is bound to `name` while
// `then` is evaluated.
FormulaPtr config_at(const Layout& l, const std::string& h, const TermPtr& k, const std::string& name,
                     FormulaPtr then) {
  const std::string a = "a" + name;
  const TermPtr span = pow(l.config_bound(), k);
  const TermPtr span1 = pow(l.config_bound(), add(k, num(1)));
  const TermPtr above = mul(var(a), span1);
  const TermPtr here = add(above, mul(var(name), span));
  return exists_below(a, add(var(h), num(1)),
                      and_({le(above, var(h)), lt(var(h), add(above, span1)),
                            exists_below(name, l.config_bound(),
                                         and_({le(here, var(h)), lt(var(h), add(here, span)), std::move(then)}))}));
}

void check_inputs(const Layout& l, const std::vector<std::uint64_t>& input) {
  if (input.size() > l.registers) throw Error(ErrorCode::invalid_argument, "too many input registers");
  for (std::uint64_t v : input) {
    if (Natural(v) >= l.base) throw Error(ErrorCode::width_overflow, "input register does not fit the width");
  }
}

Natural start_config(const Layout& l, const std::vector<std::uint64_t>& input) {
  CMState s;
  s.regs = input;
  s.regs.resize(l.registers, 0);
  return encode_config(s, l.width);
}

}  // namespace

FormulaPtr compile_step(const CounterProgram& p, unsigned width) {
  const Layout l = layout_for(p, width);
  const Digits d = make_digits(l, "");
  return decode(l, var("x"), d, next(p, l, d, var("y")));
}

FormulaPtr compile_halts_within(const CounterProgram& p, const std::vector<std::uint64_t>& input, std::uint64_t t,
                                unsigned width) {
  const Layout l = layout_for(p, width);
  check_inputs(l, input);
  const std::uint64_t peak = input.empty() ? 0 : *std::max_element(input.begin(), input.end());
  if (t > 0 && Natural(peak) + (t - 1) >= l.base) {
    throw Error(ErrorCode::width_overflow, "registers may outgrow the width within t steps");
  }
  if (t == 0) return or_({});
  return exists_below("c0", l.config_bound(),
                      and_({eq(var("c0"), num(start_config(l, input))), run_from(p, l, "c0", t, 0)}));
}

FormulaPtr compile_halts(const CounterProgram& p, const std::vector<std::uint64_t>& input, unsigned width) {
  const Layout l = layout_for(p, width);
  check_inputs(l, input);
  const Digits du = make_digits(l, "u");
  const Digits dz = make_digits(l, "z");
  FormulaPtr first = config_at(l, "h", num(0), "first", eq(var("first"), num(start_config(l, input))));
  FormulaPtr steps = forall_below(
      "k", var("t"),
      config_at(l, "h", var("k"), "cur",
                config_at(l, "h", add(var("k"), num(1)), "nxt", decode(l, var("cur"), du, next(p, l, du, var("nxt"))))));
  FormulaPtr last = config_at(l, "h", var("t"), "last", decode(l, var("last"), dz, halted(p, dz)));
  FormulaPtr matrix = exists_below("h", pow(l.config_bound(), add(var("t"), num(1))),
                                   and_({std::move(first), std::move(steps), std::move(last)}));
  return exists("t", std::move(matrix));
}

}  // namespace exm::ar
