// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "formal/syntax.hpp"

namespace exm::fm {

enum class SearcherKind : std::uint8_t { single, twin };

// Definition a searcher constant must have to count as canonical: the
// self-application of the searcher built for `name` over the signature's
// remaining definitions, axioms and caps. Null when none can be built.
ValuePtr expected_searcher_def(SearcherKind kind, Symbol name, const Signature& sig);

// Expression a reference denotes, or null for an undefined constant.
const kl::Expr* resolve(const Ref& r, const Signature& sig);

Verdict check_proof(const Proof& p, const Sentence& goal, const Signature& sig);
// Checks at a nesting depth; depth counts enclosing enumeration axioms.
Verdict check_proof_at(const Proof& p, const Sentence& goal, const Signature& sig, std::uint64_t depth);
// Verdict of one line given the lines before it, ignoring the goal.
Verdict check_line(const Proof& p, std::size_t index, const Signature& sig, std::uint64_t depth);

// Least rank below k whose proof is valid for the goal at the given depth.
std::optional<Natural> first_proof(const Sentence& goal, const Natural& k, const Signature& sig,
                                   std::uint64_t depth);

// Process-wide search tuning. Neither setting changes any result.
struct SearchSettings {
  // Scans up to this many ranks directly; larger bounds use the
  // goal-directed search.
  std::uint64_t linear_limit = 131072;
  unsigned threads = 1;
};
SearchSettings search_settings();
void set_search_settings(const SearchSettings& s);

// Scan by direct enumeration only; used to cross-check the directed search.
std::optional<Natural> first_proof_linear(const Sentence& goal, const Natural& k, const Signature& sig,
                                          std::uint64_t depth);

}  // namespace exm::fm
