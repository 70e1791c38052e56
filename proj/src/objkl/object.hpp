// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "formal/checker.hpp"
#include "formal/syntax.hpp"

namespace exm::obj {

using fm::Proof;
using fm::Sentence;
using fm::Signature;
using fm::Verdict;
using kl::ValuePtr;

// Concatenated text of the object-level program sources.
std::string_view kls_text();

// The checker (a function of its own source, the unranker's source, a
// proof, a goal and a signature) and the unranker (a function of a
// natural), both linked into closed kernel expressions.
struct ObjectCheckerSource {
  kl::ExprPtr checker;
  kl::ExprPtr unranker;
  ValuePtr checker_datum;
  ValuePtr unranker_datum;
  std::string checker_text;
  std::string unranker_text;
};

const ObjectCheckerSource& object_checker_source();

// Closed expression for an entry point of the object-level sources.
kl::ExprPtr linked_entry(std::string_view entry);

// Searcher template of the given kind with its hole symbols.
ValuePtr searcher_skeleton(fm::SearcherKind kind);

// Copy of `t` with every symbol bound in `binds` replaced by its value.
ValuePtr fill_template(const ValuePtr& t, const std::vector<std::pair<kl::Symbol, ValuePtr>>& binds);

// Codec between formal objects and kernel data.
ValuePtr encode(const Sentence& s);
ValuePtr encode(const Proof& p);
ValuePtr encode(const kl::Expr& e);
ValuePtr encode(const Signature& s);
fm::SentPtr decode_sentence(const kl::Value& d);
fm::ProofPtr decode_proof(const kl::Value& d);
kl::ExprPtr decode_expr(const kl::Value& d);
Signature decode_signature(const kl::Value& d);

struct ObjectOutcome {
  bool timed_out = false;
  Verdict verdict;
  std::uint64_t steps = 0;
};

// Runs the object checker under the kernel machine with the given fuel.
ObjectOutcome run_object_check(const Proof& p, const Sentence& goal, const Signature& sig, std::uint64_t fuel);

// Runs the object unranker; nullopt when the fuel runs out.
std::optional<fm::ProofPtr> run_object_unrank(const Natural& n, std::uint64_t fuel);

struct AgreementItem {
  fm::ProofPtr proof;
  fm::SentPtr goal;
  Signature sig;
  // Short description such as "running/p/3" or "trace/two/rule-kind".
  std::string label;
};

struct AgreementRecord {
  std::size_t item = 0;
  std::string label;
  Verdict meta;
  std::optional<Verdict> object;
  bool agree = false;
};

struct AgreementReport {
  std::vector<AgreementRecord> records;
  std::size_t decided = 0;
  std::size_t agreed = 0;
  std::size_t timeouts = 0;
};

// Checks every item with both checkers. Items whose object run exhausts the
// fuel are reported as timeouts and not counted as disagreements.
AgreementReport agreement_harness(const std::vector<AgreementItem>& corpus, std::uint64_t fuel,
                                  unsigned threads = 1);

// One line per item: item=<n> meta=<v> object=<v|timeout> agree=<yes|no|n/a> label=<l>,
// then a summary line.
std::string render_report(const AgreementReport& r);

}  // namespace exm::obj
