// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernel/symbol.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>

#include "core/hash.hpp"

namespace exm::kl {
namespace {

struct Interner {
  std::mutex mu;
  std::unordered_map<std::string_view, std::unique_ptr<SymbolInfo>> table;
};

Interner& interner() {
  static Interner* instance = new Interner();
  return *instance;
}

int digit_of(char c) { return c == '-' ? 0 : c - 'a' + 1; }

}  // namespace

bool is_symbol_char(char c) noexcept { return c == '-' || (c >= 'a' && c <= 'z'); }

bool is_symbol_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  for (char c : name) {
    if (!is_symbol_char(c)) return false;
  }
  return true;
}

Symbol intern(std::string_view name) {
  Interner& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  auto it = in.table.find(name);
  if (it != in.table.end()) return it->second.get();
  auto info = std::make_unique<SymbolInfo>(SymbolInfo{std::string(name), hash_text(name)});
  Symbol s = info.get();
  in.table.emplace(std::string_view(info->name), std::move(info));
  return s;
}

Natural symbol_index(Symbol s) {
  const std::string& name = s->name;
  Natural offset = 0;
  Natural block = 27;
  for (std::size_t len = 1; len < name.size(); ++len) {
    offset += block;
    block *= 27;
  }
  Natural value = 0;
  for (char c : name) value = value * 27 + digit_of(c);
  return offset + value;
}

Symbol symbol_at(const Natural& index) {
  Natural rest = index;
  Natural block = 27;
  std::size_t len = 1;
  while (rest >= block) {
    rest -= block;
    block *= 27;
    ++len;
  }
  std::string name(len, '-');
  for (std::size_t i = len; i-- > 0;) {
    name[i] = kAlphabet[static_cast<std::size_t>(static_cast<unsigned>(rest % 27))];
    rest /= 27;
  }
  return intern(name);
}

}  // namespace exm::kl
