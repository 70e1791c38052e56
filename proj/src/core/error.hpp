// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace exm {

enum class ErrorCode : std::uint8_t {
  syntax,
  io,
  name_clash,
  unsupported_negation,
  not_observed_halting,
  already_halted,
  no_cycle_found,
  found_proof,
  budget_exceeded,
  not_a_proof_of_target,
  found_earlier_opposite,
  oracle_not_total,
  decode,
  width_overflow,
  unbounded_quantifier,
  out_of_fuel,
  invalid_argument,
  defect,
};

const char* error_code_name(ErrorCode code) noexcept;

// Single exception type for every recoverable failure. `detail` carries the
// numeric payload some errors need: the character offset of a syntax error
// or the rank reported by found_proof and found_earlier_opposite.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace exm
