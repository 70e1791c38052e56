// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "formal/checker.hpp"
#include "formal/syntax.hpp"

namespace exm::sr {

using fm::Proof;
using fm::ProofPtr;
using fm::SentPtr;
using fm::Signature;
using kl::ExprPtr;

// Names of the two searcher constants.
kl::Symbol p_name();
kl::Symbol b_name();

// A searcher installed as a constant: the constant is defined as
// (call source (quote source)) and the bundle sentence says it never halts.
struct SearcherBundle {
  fm::SearcherKind kind = fm::SearcherKind::single;
  ExprPtr source;
  ExprPtr self_app;
  kl::Symbol const_name = nullptr;
  SentPtr sentence;
  Signature sig;
};

// Source of the searcher of `kind` named `name` over the given base.
kl::ValuePtr searcher_source(fm::SearcherKind kind, kl::Symbol name, const kl::DefsTable& base_defs,
                             const std::vector<SentPtr>& axioms, const fm::Caps& caps);

SearcherBundle build_searcher(fm::SearcherKind kind, kl::Symbol name, const Signature& base);
SearcherBundle build_searcher_P(const Signature& base);
SearcherBundle build_searcher_B(const Signature& base);

// Sentences the searcher's body reacts to, decoded from its source in the
// order they are tried.
std::vector<SentPtr> embedded_targets(const SearcherBundle& b);

// Both bundle invariants: the constant's definition renders exactly as
// "(call " + S + " (quote " + S + "))" for S the rendered source, and the
// embedded targets are the bundle sentence (then, for B, its negation).
bool verify_bundle(const SearcherBundle& b);

// From a valid proof of the P sentence, a proof of its negation.
ProofPtr godel_to_neg(const Proof& q, const SearcherBundle& b);

// From a valid proof of the B sentence or of its negation, a proof of the
// opposite that cites the rank of q.
ProofPtr rosser_flip(const Proof& q, const SearcherBundle& b);

// (implies (con-f) S) for the P bundle sentence S.
SentPtr second_incompleteness_sentence(const SearcherBundle& b);

// Writes p.kl or b.kl, signature and sentence files into dir.
void export_bundle(const SearcherBundle& b, const std::filesystem::path& dir);

struct OracleCandidate {
  ExprPtr source;
  std::string label;
};

// Shipped candidates, in report order.
std::vector<OracleCandidate> shipped_oracles();

// The diagonal program (call D (quote D)) where D runs h on its argument and
// halts when h rejects, or enters an endless self-application when h accepts.
ExprPtr build_diagonal(const OracleCandidate& h);
ExprPtr diagonal_function(const OracleCandidate& h);

enum class Observation : std::uint8_t { halt, cycle, timeout };
enum class Contradiction : std::uint8_t { yes, no, inconclusive };

struct FalsificationReport {
  std::string label;
  bool accepts = false;
  Observation observed = Observation::timeout;
  Contradiction contradiction = Contradiction::inconclusive;
  std::optional<kl::CycleWitness> cycle;
  std::uint64_t steps = 0;
};

FalsificationReport falsify_oracle(const OracleCandidate& h, std::uint64_t fuel);

// oracle=<label> verdict=<accept|reject> observed=<halt|cycle|timeout> contradiction=<yes|no|inconclusive>
std::string render(const FalsificationReport& r);

}  // namespace exm::sr
