// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "formal/syntax.hpp"

namespace exm::fm {

// Least rank below k of a valid proof of the goal, found without visiting
// every smaller rank. A proof of least size never repeats a claim and every
// line feeds the last one, so only lines whose claims can feed the goal are
// tried, smallest size first and in rank order within a size.
std::optional<Natural> directed_first_proof(const Sentence& goal, const Natural& k, const Signature& sig,
                                            std::uint64_t depth);

// Every valid proof of the goal of least size, at most max_size nodes, in
// rank order. Empty when there is none that small.
std::vector<ProofPtr> minimal_proofs(const Sentence& goal, const Signature& sig, std::uint64_t depth,
                                     std::size_t max_size);

// First repeated state and period of a referenced expression within the fuel
// cap, if any.
std::optional<std::pair<std::uint64_t, std::uint64_t>> cycle_of(const Ref& r, const Signature& sig);

}  // namespace exm::fm
