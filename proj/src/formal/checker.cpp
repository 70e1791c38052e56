// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "formal/checker.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include "core/error.hpp"
#include "formal/cache.hpp"
#include "formal/search.hpp"

namespace exm::fm {
namespace {

std::mutex g_settings_mu;
SearchSettings g_settings;

std::string scan_key(const Sentence& goal, std::uint64_t depth) {
  return std::to_string(depth) + " " + render(goal);
}

bool halts_exactly(const kl::Expr* e, const DefsTable& defs, std::uint64_t n) {
  kl::Outcome o = kl::run(ExprPtr(e), defs, n);
  return o.kind == kl::OutcomeKind::value && o.steps == n;
}

bool still_running(const kl::Expr* e, const DefsTable& defs, std::uint64_t n) {
  return kl::run(ExprPtr(e), defs, n).kind == kl::OutcomeKind::out_of_fuel;
}

bool repeats(const kl::Expr* e, const DefsTable& defs, std::uint64_t i, std::uint64_t j) {
  kl::Machine m(ExprPtr(e), defs);
  while (m.steps() < i) {
    if (!m.advance()) return false;
  }
  const kl::State first = m.state();
  while (m.steps() < j) {
    if (!m.advance()) return false;
  }
  return kl::state_equal(first, m.state());
}

bool is_const_ref(const Sentence& s, SentKind kind) {
  return s.kind() == kind && s.ref().is_const;
}

Verdict check_searcher(SearcherKind kind, Symbol name, const Signature& sig, std::size_t index) {
  const kl::Expr* def = sig.defs().find(name);
  if (def == nullptr) return Verdict::invalid(index, "unknown-const");
  ValuePtr expected = expected_searcher_def(kind, name, sig);
  if (!expected || !kl::value_equal(*expected, *kl::expr_to_datum(*def))) {
    return Verdict::invalid(index, "not-a-searcher");
  }
  return Verdict::valid();
}

Verdict check_embedded(const Proof& q, const Sentence& target, const Signature& sig, std::uint64_t depth,
                       std::size_t index) {
  Verdict inner = check_proof_at(q, target, sig, depth);
  if (inner.kind == VerdictKind::budget) return Verdict::budget(index, inner.reason);
  if (inner.kind == VerdictKind::invalid) return Verdict::invalid(index, "embedded-invalid");
  return Verdict::valid();
}

// Shared part of both Rosser rules: `claim_kind` is what the line asserts
// about the searcher, the embedded proof must establish the opposite, and
// the premise must rule out earlier proofs of the claim.
Verdict check_rosser(const Proof& p, std::size_t index, const Signature& sig, std::uint64_t depth,
                     SentKind claim_kind) {
  const Line& line = p.lines[index];
  const Rule& rule = line.rule;
  if (rule.a >= index) return Verdict::invalid(index, "bad-premise");
  if (!is_const_ref(*line.claim, claim_kind)) return Verdict::invalid(index, "claim-mismatch");
  const Symbol name = line.claim->ref().name;
  if (Verdict v = check_searcher(SearcherKind::twin, name, sig, index); !v.ok()) return v;
  const Sentence& premise = *p.lines[static_cast<std::size_t>(rule.a)].claim;
  if (premise.kind() != SentKind::no_proof_before || !sentence_equal(*premise.target(), *line.claim)) {
    return Verdict::invalid(index, "premise-mismatch");
  }
  if (rank_proof(*rule.proof) != premise.n()) return Verdict::invalid(index, "rank-mismatch");
  SentPtr opposite = negate(*line.claim);
  return check_embedded(*rule.proof, *opposite, sig, depth, index);
}

}  // namespace

SearchSettings search_settings() {
  std::lock_guard<std::mutex> lock(g_settings_mu);
  return g_settings;
}

void set_search_settings(const SearchSettings& s) {
  std::lock_guard<std::mutex> lock(g_settings_mu);
  g_settings = s;
  if (g_settings.threads == 0) g_settings.threads = 1;
}

const kl::Expr* resolve(const Ref& r, const Signature& sig) {
  if (!r.is_const) return r.expr.get();
  return sig.defs().find(r.name);
}

Verdict check_line(const Proof& p, std::size_t index, const Signature& sig, std::uint64_t depth) {
  const Line& line = p.lines[index];
  const Sentence& claim = *line.claim;
  const Rule& rule = line.rule;
  const Caps& caps = sig.caps();
  switch (rule.kind) {
    case RuleKind::ax_inj:
      if (!sig.has_axiom(claim)) return Verdict::invalid(index, "not-an-axiom");
      return Verdict::valid();
    case RuleKind::ax_trace:
    case RuleKind::ax_running: {
      const bool trace = rule.kind == RuleKind::ax_trace;
      SentPtr expected = trace ? Sentence::halted_within(rule.ref, rule.a)
                               : Sentence::not_halted_within(rule.ref, rule.a);
      if (!sentence_equal(claim, *expected)) return Verdict::invalid(index, "claim-mismatch");
      const kl::Expr* e = resolve(rule.ref, sig);
      if (e == nullptr) return Verdict::invalid(index, "unknown-const");
      if (rule.a > caps.fuel_cap) return Verdict::budget(index, "fuel-cap");
      const auto n = to_u64(rule.a);
      if (trace && !halts_exactly(e, sig.defs(), n)) return Verdict::invalid(index, "trace-mismatch");
      if (!trace && !still_running(e, sig.defs(), n)) return Verdict::invalid(index, "running-mismatch");
      return Verdict::valid();
    }
    case RuleKind::ax_cycle: {
      if (!sentence_equal(claim, *Sentence::not_halts(rule.ref))) return Verdict::invalid(index, "claim-mismatch");
      const kl::Expr* e = resolve(rule.ref, sig);
      if (e == nullptr) return Verdict::invalid(index, "unknown-const");
      if (rule.a >= rule.b) return Verdict::invalid(index, "bad-cycle");
      if (rule.b > caps.fuel_cap) return Verdict::budget(index, "fuel-cap");
      if (!repeats(e, sig.defs(), to_u64(rule.a), to_u64(rule.b))) return Verdict::invalid(index, "cycle-mismatch");
      return Verdict::valid();
    }
    case RuleKind::ax_enum: {
      if (!sentence_equal(claim, *Sentence::no_proof_before(rule.sent, rule.a))) {
        return Verdict::invalid(index, "claim-mismatch");
      }
      if (rule.a > caps.enum_cap) return Verdict::budget(index, "enum-cap");
      if (depth + 1 >= caps.depth_cap) return Verdict::budget(index, "depth-cap");
      if (first_proof(*rule.sent, rule.a, sig, depth + 1)) return Verdict::invalid(index, "enum-found");
      return Verdict::valid();
    }
    case RuleKind::r_halts: {
      if (rule.a >= index) return Verdict::invalid(index, "bad-premise");
      if (claim.kind() != SentKind::halts) return Verdict::invalid(index, "claim-mismatch");
      const Sentence& premise = *p.lines[static_cast<std::size_t>(rule.a)].claim;
      if (premise.kind() != SentKind::halted_within ||
          !sentence_equal(*Sentence::halts(premise.ref()), claim)) {
        return Verdict::invalid(index, "premise-mismatch");
      }
      return Verdict::valid();
    }
    case RuleKind::r_mp: {
      if (rule.a >= index || rule.b >= index) return Verdict::invalid(index, "bad-premise");
      const SentPtr& lhs = p.lines[static_cast<std::size_t>(rule.a)].claim;
      const Sentence& imp = *p.lines[static_cast<std::size_t>(rule.b)].claim;
      if (!sentence_equal(imp, *Sentence::implies(lhs, line.claim))) {
        return Verdict::invalid(index, "premise-mismatch");
      }
      return Verdict::valid();
    }
    case RuleKind::r_finds_halt: {
      if (!is_const_ref(claim, SentKind::halts)) return Verdict::invalid(index, "claim-mismatch");
      if (Verdict v = check_searcher(SearcherKind::single, claim.ref().name, sig, index); !v.ok()) return v;
      return check_embedded(*rule.proof, *negate(claim), sig, depth, index);
    }
    case RuleKind::r_rosser_halt: return check_rosser(p, index, sig, depth, SentKind::halts);
    case RuleKind::r_rosser_loop: return check_rosser(p, index, sig, depth, SentKind::not_halts);
  }
  throw Error(ErrorCode::defect, "unknown rule");
}

Verdict check_proof_at(const Proof& p, const Sentence& goal, const Signature& sig, std::uint64_t depth) {
  if (p.lines.empty()) throw Error(ErrorCode::invalid_argument, "empty proof");
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    Verdict v = check_line(p, i, sig, depth);
    if (!v.ok()) return v;
  }
  if (!sentence_equal(*p.lines.back().claim, goal)) return Verdict::invalid(p.lines.size() - 1, "goal-mismatch");
  return Verdict::valid();
}

Verdict check_proof(const Proof& p, const Sentence& goal, const Signature& sig) {
  return check_proof_at(p, goal, sig, 0);
}

namespace {

std::optional<Natural> scan_serial(const Sentence& goal, const Natural& lo, const Natural& hi, const Signature& sig,
                                   std::uint64_t depth) {
  for (Natural r = lo; r < hi; ++r) {
    if (check_proof_at(*unrank_proof(r), goal, sig, depth).ok()) return r;
  }
  return std::nullopt;
}

// Splits [lo, hi) into blocks; within a block each worker takes a contiguous
// slice, and the least valid rank of the first block with any hit wins.
std::optional<Natural> scan_parallel(const Sentence& goal, const Natural& lo, const Natural& hi,
                                     const Signature& sig, std::uint64_t depth, unsigned threads) {
  const Natural slice = 2048;
  for (Natural base = lo; base < hi; base += slice * threads) {
    std::vector<std::optional<Natural>> found(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      Natural from = base + slice * t;
      Natural to = from + slice;
      if (from >= hi) break;
      if (to > hi) to = hi;
      pool.emplace_back([&, t, from, to] {
        try {
          found[t] = scan_serial(goal, from, to, sig, depth);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (unsigned t = 0; t < threads; ++t) {
      if (errors[t]) std::rethrow_exception(errors[t]);
      if (found[t]) return found[t];
    }
  }
  return std::nullopt;
}

std::optional<Natural> scan(const Sentence& goal, const Natural& lo, const Natural& hi, const Signature& sig,
                            std::uint64_t depth) {
  const unsigned threads = depth == 0 ? search_settings().threads : 1;
  if (threads <= 1 || hi - lo <= 4096) return scan_serial(goal, lo, hi, sig, depth);
  return scan_parallel(goal, lo, hi, sig, depth, threads);
}

}  // namespace

std::optional<Natural> first_proof_linear(const Sentence& goal, const Natural& k, const Signature& sig,
                                          std::uint64_t depth) {
  return scan(goal, 0, k, sig, depth);
}

std::optional<Natural> first_proof(const Sentence& goal, const Natural& k, const Signature& sig,
                                   std::uint64_t depth) {
  SignatureCache& cache = sig.cache();
  const std::string key = scan_key(goal, depth);
  ScanMemo memo;
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.scans.find(key);
    if (it != cache.scans.end()) memo = it->second;
  }
  if (memo.found) return *memo.found < k ? memo.found : std::nullopt;
  if (memo.scanned >= k) return std::nullopt;
  std::optional<Natural> hit;
  if (k - memo.scanned <= search_settings().linear_limit) {
    hit = scan(goal, memo.scanned, k, sig, depth);
  } else {
    hit = directed_first_proof(goal, k, sig, depth);
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  ScanMemo& slot = cache.scans[key];
  if (hit) {
    slot.found = hit;
  } else if (slot.scanned < k) {
    slot.scanned = k;
  }
  return hit;
}

}  // namespace exm::fm
