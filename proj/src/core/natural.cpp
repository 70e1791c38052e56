// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/natural.hpp"

#include "core/hash.hpp"

namespace exm {

std::optional<Natural> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.size() > 1 && text[0] == '0') return std::nullopt;
  Natural value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

std::size_t hash_natural(const Natural& n) {
  if (n <= Natural(std::numeric_limits<std::uint64_t>::max())) {
    return hash_mix(0x6e61, static_cast<std::size_t>(static_cast<std::uint64_t>(n)));
  }
  std::size_t h = 0x6e62;
  Natural rest = n;
  const Natural base = Natural(1) << 64;
  while (rest != 0) {
    h = hash_mix(h, static_cast<std::size_t>(static_cast<std::uint64_t>(rest % base)));
    rest >>= 64;
  }
  return h;
}

}  // namespace exm
