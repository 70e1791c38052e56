// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "core/natural.hpp"

namespace exm::kl {

// Symbols are interned: two symbols are equal exactly when their pointers are.
struct SymbolInfo {
  std::string name;
  std::size_t hash;
};
using Symbol = const SymbolInfo*;

// The symbol alphabet in its canonical order; '-' sorts first as in ASCII.
inline constexpr std::string_view kAlphabet = "-abcdefghijklmnopqrstuvwxyz";

bool is_symbol_char(char c) noexcept;
bool is_symbol_name(std::string_view name) noexcept;

// Interns a name; the caller guarantees is_symbol_name(name).
Symbol intern(std::string_view name);

// Position of a name in shortlex order over kAlphabet ("-" is 0, "a" is 1).
Natural symbol_index(Symbol s);
Symbol symbol_at(const Natural& index);

}  // namespace exm::kl
