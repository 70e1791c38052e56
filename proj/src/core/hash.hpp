// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace exm {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::size_t hash_mix(std::size_t seed, std::size_t value) noexcept {
  return static_cast<std::size_t>(splitmix64(static_cast<std::uint64_t>(seed) * 31 + value));
}

// FNV-1a, stable across runs and platforms.
inline std::size_t hash_text(std::string_view s) noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(splitmix64(h));
}

}  // namespace exm
