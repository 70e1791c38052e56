// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "arith/counter.hpp"
#include "arith/formula.hpp"

namespace exm::ar {

inline constexpr unsigned kDefaultWidth = 16;

// Step(x, y): x and y encode configurations of width `width` and x steps
// to y. Throws width_overflow when the program's labels do not fit a digit.
FormulaPtr compile_step(const CounterProgram& p, unsigned width = kDefaultWidth);

// Closed formula using bounded quantifiers only: the run from `input`
// reaches a halted configuration within t configurations. Each
// configuration of the history is one packed natural quantified below
// base^(registers + 1) and pinned to its predecessor by the step relation.
FormulaPtr compile_halts_within(const CounterProgram& p, const std::vector<std::uint64_t>& input, std::uint64_t t,
                                unsigned width = kDefaultWidth);

// (exists t M(t)) where M(t) says a history of exactly t + 1 configurations,
// packed as base^(registers + 1) digits of one natural, starts at `input`
// and ends halted. With cap c the formula agrees with
// compile_halts_within(p, input, c).
FormulaPtr compile_halts(const CounterProgram& p, const std::vector<std::uint64_t>& input,
                         unsigned width = kDefaultWidth);

}  // namespace exm::ar
