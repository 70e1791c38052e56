// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace exm {

using Natural = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Natural& n) { return n.str(); }

// Accepts canonical decimal only: no sign, no leading zeros except "0".
std::optional<Natural> parse_decimal(std::string_view text);

inline bool fits_u64(const Natural& n) {
  return n >= 0 && n <= Natural(std::numeric_limits<std::uint64_t>::max());
}

inline std::uint64_t to_u64(const Natural& n) { return static_cast<std::uint64_t>(n); }

std::size_t hash_natural(const Natural& n);

}  // namespace exm
