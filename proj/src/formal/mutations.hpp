// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "formal/syntax.hpp"

namespace exm::fm {

struct Mutant {
  std::string mutation;
  ProofPtr proof;
};

// Deterministic damaged copies of a non-empty proof, each meant to fail
// against the original goal. Every proof yields at least the classes
// claim-polarity, claim-ref, rule-kind and rule-argument; claim-number and
// truncate are added when the final claim carries a number or the proof
// has more than one line.
std::vector<Mutant> mutants(const Proof& p);

}  // namespace exm::fm
