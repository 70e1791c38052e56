// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "arith/counter.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "core/error.hpp"

namespace exm::ar {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_label(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::uint32_t parse_index(const std::string& s, int line) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorCode::syntax, "line " + std::to_string(line) + ": bad number '" + s + "'", std::to_string(line));
  }
  return static_cast<std::uint32_t>(std::stoul(s));
}

}  // namespace

std::size_t CounterProgram::registers() const noexcept {
  std::size_t n = 1;
  for (const Instr& i : code) {
    if (i.op != Op::halt) n = std::max<std::size_t>(n, i.reg + 1);
  }
  return n;
}

void validate(const CounterProgram& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.code[i].op == Op::decjz && p.code[i].target > p.size()) {
      throw Error(ErrorCode::invalid_argument, "instruction " + std::to_string(i) + " jumps out of range");
    }
  }
  std::vector<bool> seen(p.size() + 1, false);
  std::vector<std::size_t> todo{0};
  while (!todo.empty()) {
    std::size_t pc = todo.back();
    todo.pop_back();
    if (pc >= p.size() || seen[pc]) continue;
    seen[pc] = true;
    const Instr& i = p.code[pc];
    if (i.op == Op::halt) return;
    todo.push_back(pc + 1);
    if (i.op == Op::decjz) todo.push_back(i.target);
  }
  throw Error(ErrorCode::invalid_argument, "no halt instruction is reachable");
}

CounterProgram parse_counter_program(std::string_view text) {
  struct Pending {
    std::vector<std::string> words;
    int line;
  };
  std::vector<Pending> items;
  std::map<std::string, std::uint32_t> labels;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    while (true) {
      auto colon = s.find(':');
      if (colon == std::string::npos) break;
      std::string name = trim(s.substr(0, colon));
      if (!is_label(name)) throw Error(ErrorCode::syntax, "line " + std::to_string(line) + ": bad label", std::to_string(line));
      if (!labels.emplace(name, static_cast<std::uint32_t>(items.size())).second) {
        throw Error(ErrorCode::syntax, "line " + std::to_string(line) + ": duplicate label " + name, std::to_string(line));
      }
      s = trim(s.substr(colon + 1));
    }
    if (s.empty()) continue;
    std::istringstream ws(s);
    Pending p{{}, line};
    for (std::string w; ws >> w;) p.words.push_back(w);
    items.push_back(std::move(p));
  }
  CounterProgram prog;
  for (const Pending& p : items) {
    const auto& w = p.words;
    const std::string where = "line " + std::to_string(p.line) + ": ";
    Instr ins;
    if (w[0] == "halt" && w.size() == 1) {
      ins.op = Op::halt;
    } else if (w[0] == "inc" && w.size() == 2) {
      ins.op = Op::inc;
      ins.reg = parse_index(w[1], p.line);
    } else if (w[0] == "decjz" && w.size() == 3) {
      ins.op = Op::decjz;
      ins.reg = parse_index(w[1], p.line);
      if (auto it = labels.find(w[2]); it != labels.end()) {
        ins.target = it->second;
      } else if (is_label(w[2])) {
        throw Error(ErrorCode::syntax, where + "unknown label " + w[2], std::to_string(p.line));
      } else {
        ins.target = parse_index(w[2], p.line);
      }
    } else {
      throw Error(ErrorCode::syntax, where + "unknown instruction", std::to_string(p.line));
    }
    prog.code.push_back(ins);
  }
  validate(prog);
  return prog;
}

std::string render(const CounterProgram& p) {
  std::string out;
  for (const Instr& i : p.code) {
    switch (i.op) {
      case Op::inc: out += "inc " + std::to_string(i.reg); break;
      case Op::decjz: out += "decjz " + std::to_string(i.reg) + " " + std::to_string(i.target); break;
      case Op::halt: out += "halt"; break;
    }
    out += "\n";
  }
  return out;
}

bool cm_step(const CounterProgram& p, CMState& s) {
  if (p.is_halt_pc(s.pc)) return false;
  const Instr& i = p.code[s.pc];
  if (s.regs.size() <= i.reg) s.regs.resize(i.reg + 1, 0);
  if (i.op == Op::inc) {
    ++s.regs[i.reg];
    ++s.pc;
  } else if (s.regs[i.reg] == 0) {
    s.pc = i.target;
  } else {
    --s.regs[i.reg];
    ++s.pc;
  }
  return true;
}

CMResult cm_run(const CounterProgram& p, const std::vector<std::uint64_t>& input, std::uint64_t fuel) {
  if (input.size() > p.registers()) throw Error(ErrorCode::invalid_argument, "too many input registers");
  CMResult r;
  r.state.regs = input;
  r.state.regs.resize(p.registers(), 0);
  while (r.steps < fuel) {
    ++r.steps;
    if (!cm_step(p, r.state)) {
      r.halted = true;
      break;
    }
  }
  return r;
}

Natural digit_base(unsigned width) {
  if (width == 0 || width > 64) throw Error(ErrorCode::invalid_argument, "width must be in 1..64");
  return Natural(1) << width;
}

Natural encode_config(const CMState& s, unsigned width) {
  const Natural base = digit_base(width);
  if (Natural(s.pc) >= base) throw Error(ErrorCode::width_overflow, "pc does not fit the width");
  Natural x = 0;
  for (std::size_t j = s.regs.size(); j-- > 0;) {
    if (Natural(s.regs[j]) >= base) throw Error(ErrorCode::width_overflow, "register does not fit the width");
    x = x * base + s.regs[j];
  }
  return x * base + s.pc;
}

CMState decode_config(const Natural& x, unsigned width, std::size_t registers) {
  const Natural base = digit_base(width);
  CMState s;
  Natural rest = x;
  s.pc = static_cast<std::uint64_t>(rest % base);
  rest /= base;
  for (std::size_t j = 0; j < registers; ++j) {
    s.regs.push_back(static_cast<std::uint64_t>(rest % base));
    rest /= base;
  }
  if (rest != 0) throw Error(ErrorCode::width_overflow, "value has more digits than the configuration");
  return s;
}

}  // namespace exm::ar
