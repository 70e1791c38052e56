// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/error.hpp"

namespace exm {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::syntax: return "syntax-error";
    case ErrorCode::io: return "io-error";
    case ErrorCode::name_clash: return "name-clash";
    case ErrorCode::unsupported_negation: return "unsupported-negation";
    case ErrorCode::not_observed_halting: return "not-observed-halting";
    case ErrorCode::already_halted: return "already-halted";
    case ErrorCode::no_cycle_found: return "no-cycle-found";
    case ErrorCode::found_proof: return "found-proof";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::not_a_proof_of_target: return "not-a-proof-of-target";
    case ErrorCode::found_earlier_opposite: return "found-earlier-opposite";
    case ErrorCode::oracle_not_total: return "oracle-not-total";
    case ErrorCode::decode: return "decode-error";
    case ErrorCode::width_overflow: return "width-overflow";
    case ErrorCode::unbounded_quantifier: return "unbounded-quantifier";
    case ErrorCode::out_of_fuel: return "out-of-fuel";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::defect: return "defect";
  }
  return "unknown";
}

}  // namespace exm
