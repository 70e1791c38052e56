// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/natural.hpp"

namespace exm::ar {

enum class Op : std::uint8_t { inc, decjz, halt };

struct Instr {
  Op op = Op::halt;
  std::uint32_t reg = 0;
  std::uint32_t target = 0;

  bool operator==(const Instr&) const = default;
};

// A counter machine. Labels are instruction indices; pc == size() is the
// state reached by running off the end and counts as halted.
struct CounterProgram {
  std::vector<Instr> code;

  std::size_t size() const noexcept { return code.size(); }
  std::size_t registers() const noexcept;
  bool is_halt_pc(std::uint64_t pc) const noexcept {
    return pc >= code.size() || code[pc].op == Op::halt;
  }
  bool operator==(const CounterProgram&) const = default;
};

// Throws invalid_argument when a jump target is out of range or no halt
// instruction is reachable from pc 0.
void validate(const CounterProgram& p);

// Line format: optional `name:` prefix, then `inc R`, `decjz R LABEL` or
// `halt`. LABEL is a declared name or an instruction index. `#` starts a
// comment.
CounterProgram parse_counter_program(std::string_view text);
std::string render(const CounterProgram& p);

struct CMState {
  std::uint64_t pc = 0;
  std::vector<std::uint64_t> regs;

  bool operator==(const CMState&) const = default;
};

struct CMResult {
  bool halted = false;
  CMState state;
  // Configurations visited, the final halted one included.
  std::uint64_t steps = 0;
};

// One transition; false when the state is halted.
bool cm_step(const CounterProgram& p, CMState& s);
CMResult cm_run(const CounterProgram& p, const std::vector<std::uint64_t>& input, std::uint64_t fuel);

// Base-2^width digit packing with the pc in digit 0 and register j in
// digit j + 1. Throws width_overflow when a field does not fit.
Natural encode_config(const CMState& s, unsigned width);
CMState decode_config(const Natural& x, unsigned width, std::size_t registers);
Natural digit_base(unsigned width);

}  // namespace exm::ar
