// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kernel/expr.hpp"

namespace exm::obj {

// Source dialect used to write the object-level programs. A program is a
// sequence of (define (name param ...) body) forms. Bodies may use, besides
// the kernel forms, let, lets (sequential let), cond (with else), and, or, not and list, and
// may call any defined function by name.
//
// Linking turns the functions reachable from an entry point into one closed
// kernel expression. Every function becomes (lambda (lib param ...) body)
// and the library is a tree of their closures built from pairs, so a call
// to f becomes (call PATH-TO-F lib arg ...). A top-level (hot name ...) form
// lists functions to keep in a small subtree next to the root; the others
// form a balanced subtree.
struct KlsFunction {
  kl::Symbol name = nullptr;
  std::vector<kl::Symbol> params;
  kl::ValuePtr body;
};

struct KlsProgram {
  std::vector<KlsFunction> functions;
  std::vector<kl::Symbol> hot;
  const KlsFunction* find(std::string_view name) const;
};

KlsProgram parse_kls(std::string_view text);

// Closed expression (lambda (entry-params) ...) running the entry function.
kl::ExprPtr link(const KlsProgram& program, std::string_view entry);

// Datum D of a function written as (define (name) (quote D)).
kl::ValuePtr quoted_constant(const KlsProgram& program, std::string_view name);

}  // namespace exm::obj
