// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kernel/enumeration.hpp"
#include "kernel/machine.hpp"

namespace exm::fm {

using kl::DefsTable;
using kl::ExprPtr;
using kl::Symbol;
using kl::ValuePtr;

// Reference to an expression inside a sentence: a literal expression or the
// name of a definition in the ambient signature.
struct Ref {
  bool is_const = false;
  ExprPtr expr;
  Symbol name = nullptr;

  static Ref literal(ExprPtr e) { return Ref{false, std::move(e), nullptr}; }
  static Ref constant(Symbol n) { return Ref{true, nullptr, n}; }
};

enum class SentKind : std::uint8_t {
  halts,
  not_halts,
  halted_within,
  not_halted_within,
  no_proof_before,
  implies,
  con,
};

class Sentence;
using SentPtr = std::shared_ptr<const Sentence>;

// A sentence of the formal system. Each sentence keeps its canonical datum,
// which also serves as its identity.
class Sentence {
 public:
  static SentPtr halts(Ref r);
  static SentPtr not_halts(Ref r);
  static SentPtr halted_within(Ref r, Natural n);
  static SentPtr not_halted_within(Ref r, Natural n);
  static SentPtr no_proof_before(SentPtr target, Natural k);
  static SentPtr implies(SentPtr lhs, SentPtr rhs);
  static SentPtr con();

  SentKind kind() const noexcept { return kind_; }
  const Ref& ref() const noexcept { return ref_; }
  const Natural& n() const noexcept { return n_; }
  const SentPtr& lhs() const noexcept { return lhs_; }
  const SentPtr& rhs() const noexcept { return rhs_; }
  // Target of no-proof-before.
  const SentPtr& target() const noexcept { return lhs_; }
  const ValuePtr& datum() const noexcept { return datum_; }

 private:
  Sentence() = default;
  static SentPtr finish(Sentence s);

  SentKind kind_ = SentKind::con;
  Ref ref_;
  Natural n_;
  SentPtr lhs_;
  SentPtr rhs_;
  ValuePtr datum_;
};

bool sentence_equal(const Sentence& a, const Sentence& b);

// Swaps halts with not-halts and halted-within with not-halted-within.
SentPtr negate(const Sentence& s);

enum class RuleKind : std::uint8_t {
  ax_inj,
  ax_trace,
  ax_running,
  ax_cycle,
  ax_enum,
  r_halts,
  r_mp,
  r_finds_halt,
  r_rosser_halt,
  r_rosser_loop,
};
inline constexpr std::size_t kRuleCount = 10;

std::string_view rule_name(RuleKind k) noexcept;

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

// Rule tag with its arguments. Which fields are meaningful depends on kind:
//   ax-trace / ax-running   ref, a = n
//   ax-cycle                ref, a = i, b = j
//   ax-enum                 sent, a = k
//   r-halts                 a = premise
//   r-mp                    a = premise, b = implication premise
//   r-finds-halt            proof
//   r-rosser-halt / -loop   proof, a = premise
struct Rule {
  RuleKind kind = RuleKind::ax_inj;
  Ref ref;
  Natural a;
  Natural b;
  SentPtr sent;
  ProofPtr proof;
};

struct Line {
  SentPtr claim;
  Rule rule;
};

struct Proof {
  std::vector<Line> lines;
};

struct Caps {
  Natural enum_cap = 100000;
  std::uint64_t depth_cap = 3;
  std::uint64_t fuel_cap = 100000;
};

struct SignatureCache;

// The formal system instance: definitions, injected axioms and budgets.
class Signature {
 public:
  Signature();
  Signature(DefsTable defs, std::vector<SentPtr> axioms, Caps caps);

  const DefsTable& defs() const noexcept { return defs_; }
  const std::vector<SentPtr>& axioms() const noexcept { return axioms_; }
  const Caps& caps() const noexcept { return caps_; }
  bool has_axiom(const Sentence& s) const;

  Signature with_defs(DefsTable defs) const { return Signature(std::move(defs), axioms_, caps_); }
  Signature with_axioms(std::vector<SentPtr> axioms) const { return Signature(defs_, std::move(axioms), caps_); }
  Signature with_caps(Caps caps) const { return Signature(defs_, axioms_, caps); }

  // Memo tables shared by every check run under this signature.
  SignatureCache& cache() const { return *cache_; }

 private:
  DefsTable defs_;
  std::vector<SentPtr> axioms_;
  Caps caps_;
  std::shared_ptr<SignatureCache> cache_;
};

enum class VerdictKind : std::uint8_t { valid, invalid, budget };

struct Verdict {
  VerdictKind kind = VerdictKind::valid;
  std::uint64_t line = 0;
  std::string reason;

  static Verdict valid() { return {}; }
  static Verdict invalid(std::uint64_t line, std::string reason) {
    return Verdict{VerdictKind::invalid, line, std::move(reason)};
  }
  static Verdict budget(std::uint64_t line, std::string reason) {
    return Verdict{VerdictKind::budget, line, std::move(reason)};
  }
  bool ok() const noexcept { return kind == VerdictKind::valid; }
  bool operator==(const Verdict& o) const { return kind == o.kind && line == o.line && reason == o.reason; }
};

std::string_view verdict_kind_name(VerdictKind k) noexcept;
// Single-line record: verdict=<kind> line=<n> reason=<token>.
std::string render_verdict(const Verdict& v);
// Data form used at the object level: (valid) | (invalid n reason) | (budget n reason).
ValuePtr verdict_to_datum(const Verdict& v);
Verdict verdict_from_datum(const kl::Value& d);

// Datum and text forms.
ValuePtr ref_to_datum(const Ref& r);
Ref ref_from_datum(const kl::Value& d);
SentPtr sentence_from_datum(const kl::Value& d);
ValuePtr proof_to_datum(const Proof& p);
ProofPtr proof_from_datum(const kl::Value& d);
ValuePtr caps_to_datum(const Caps& c);
ValuePtr axioms_to_datum(const std::vector<SentPtr>& axioms);
ValuePtr signature_to_datum(const Signature& s);
Signature signature_from_datum(const kl::Value& d);

std::string render(const Sentence& s);
std::string render(const Proof& p);
std::string render(const Signature& s);
SentPtr parse_sentence(std::string_view text);
ProofPtr parse_proof(std::string_view text);
Signature parse_signature(std::string_view text);

bool proof_equal(const Proof& a, const Proof& b);

// Canonical enumeration of proofs.
enum ProofNt : int {
  kSentNt = kl::kKernelNtCount,
  kRefNt,
  kRuleNt,
  kLineNt,
  kLinesNt,
  kProofNt,
};
const kl::Grammar& proof_grammar();
kl::RawTree proof_tree(const Proof& p);
ProofPtr proof_from_tree(const kl::RawTree& t);
kl::RawTree sentence_tree(const Sentence& s);
SentPtr sentence_from_tree(const kl::RawTree& t);
kl::RawTree line_tree(const Line& l);
Natural rank_proof(const Proof& p);
ProofPtr unrank_proof(const Natural& n);
std::size_t proof_size(const Proof& p);

}  // namespace exm::fm
