// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "formal/syntax.hpp"

namespace exm::fm {

// Two lines: ax-trace at the observed step count, then r-halts.
ProofPtr prove_halted_by_trace(const Ref& r, const Signature& sig);
// One ax-running line.
ProofPtr prove_not_halted_within(const Ref& r, const Natural& n, const Signature& sig);
// One ax-cycle line at the first repeated state.
ProofPtr prove_not_halts_by_cycle(const Ref& r, const Signature& sig);
// One ax-enum line, after confirming no candidate below k proves s.
ProofPtr prove_no_proof_before(const SentPtr& s, const Natural& k, const Signature& sig);

enum class Decision : std::uint8_t { halts, does_not_halt, exhausted };
std::string_view decision_name(Decision d) noexcept;

struct DecisionResult {
  Decision decision = Decision::exhausted;
  std::optional<Natural> rank;
};

// Scans ranks below k for the first valid proof of halting or of
// non-halting, whichever comes first.
DecisionResult decide_by_search(const Ref& r, const Natural& k, const Signature& sig);

}  // namespace exm::fm
