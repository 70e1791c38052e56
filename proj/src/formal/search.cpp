// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "formal/search.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "formal/cache.hpp"
#include "formal/checker.hpp"

namespace exm::fm {
namespace {

constexpr std::size_t kMaxMinimal = 256;

std::size_t nat_size(const Natural& n) { return kl::raw_size(kl::nat_tree(n)); }

std::size_t line_size(const Line& l) { return kl::raw_size(line_tree(l)); }

std::string ref_key(const Ref& r) { return kl::render(*ref_to_datum(r)); }

RunMemo& run_memo_locked(SignatureCache& cache, const std::string& key) { return cache.runs[key]; }

// Halting step count of a referenced expression within the fuel cap.
std::optional<std::uint64_t> halting_time(const Ref& r, const Signature& sig) {
  SignatureCache& cache = sig.cache();
  const std::string key = ref_key(r);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    RunMemo& m = run_memo_locked(cache, key);
    if (m.run_known) return m.kind == RunMemo::halts ? std::optional<std::uint64_t>(m.steps) : std::nullopt;
  }
  RunMemo::Kind kind = RunMemo::faults;
  std::uint64_t steps = 0;
  if (const kl::Expr* e = resolve(r, sig)) {
    kl::Outcome o = kl::run(ExprPtr(e), sig.defs(), sig.caps().fuel_cap);
    steps = o.steps;
    kind = o.kind == kl::OutcomeKind::value ? RunMemo::halts
           : o.kind == kl::OutcomeKind::fault ? RunMemo::faults
                                              : RunMemo::runs;
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  RunMemo& m = run_memo_locked(cache, key);
  m.kind = kind;
  m.steps = steps;
  m.run_known = true;
  return kind == RunMemo::halts ? std::optional<std::uint64_t>(steps) : std::nullopt;
}

struct Candidate {
  std::size_t size;
  Natural rank;
  Line line;
};

class Engine {
 public:
  Engine(SentPtr goal, const Signature& sig, std::uint64_t depth, bool collect)
      : goal_(std::move(goal)), sig_(sig), depth_(depth), collect_(collect) {
    add_claim(goal_);
    for (const auto& a : sig_.axioms()) add_with_parts(a);
    const std::size_t base = universe_.size();
    for (std::size_t i = 0; i < base; ++i) {
      const Sentence& s = *universe_[i];
      if (s.kind() != SentKind::halts) continue;
      if (auto n = halting_time(s.ref(), sig_)) add_claim(Sentence::halted_within(s.ref(), *n));
    }
    goal_line_min_ = kl::raw_size(sentence_tree(*goal_)) + 2;
  }

  // Explores proofs of exactly `size` nodes; true once the search may stop.
  bool explore(std::size_t size) {
    proof_.lines.clear();
    if (size < 2) return false;
    return descend(size - 1, true);
  }

  std::vector<ProofPtr>& results() { return results_; }

 private:
  void add_claim(const SentPtr& s) {
    for (const auto& u : universe_) {
      if (sentence_equal(*u, *s)) return;
    }
    universe_.push_back(s);
  }

  void add_with_parts(const SentPtr& s) {
    add_claim(s);
    if (s->kind() == SentKind::implies) {
      add_with_parts(s->lhs());
      add_with_parts(s->rhs());
    }
  }

  bool in_context(const Sentence& s) const {
    for (const auto& l : proof_.lines) {
      if (sentence_equal(*l.claim, s)) return true;
    }
    return false;
  }

  bool twin_searcher(const Sentence& s) const {
    if (!s.ref().is_const) return false;
    const kl::Expr* def = sig_.defs().find(s.ref().name);
    if (def == nullptr) return false;
    ValuePtr expected = expected_searcher_def(SearcherKind::twin, s.ref().name, sig_);
    return expected && kl::value_equal(*expected, *kl::expr_to_datum(*def));
  }

  void offer(std::vector<Candidate>& out, SentPtr claim, Rule rule, std::size_t budget) {
    Line line{std::move(claim), std::move(rule)};
    const std::size_t size = line_size(line);
    if (size > budget) return;
    proof_.lines.push_back(line);
    const bool ok = check_line(proof_, proof_.lines.size() - 1, sig_, depth_).ok();
    proof_.lines.pop_back();
    if (!ok) return;
    Natural rank = proof_grammar().rank(line_tree(line));
    out.push_back(Candidate{size, std::move(rank), std::move(line)});
  }

  void cycle_rules(std::vector<Candidate>& out, const SentPtr& claim, std::size_t budget) {
    auto cyc = cycle_of(claim->ref(), sig_);
    if (!cyc) return;
    const std::size_t claim_size = kl::raw_size(sentence_tree(*claim));
    const std::size_t fixed = 1 + claim_size + 1 + (claim_size - 1);
    if (fixed >= budget) return;
    const std::size_t args = budget - fixed;
    const std::uint64_t fuel = sig_.caps().fuel_cap;
    const auto [mu, lambda] = *cyc;
    for (std::uint64_t i = mu; nat_size(i) + 2 <= args && i < fuel; ++i) {
      for (std::uint64_t j = i + lambda; j <= fuel && nat_size(i) + nat_size(j) <= args; j += lambda) {
        Rule r;
        r.kind = RuleKind::ax_cycle;
        r.ref = claim->ref();
        r.a = i;
        r.b = j;
        offer(out, claim, std::move(r), budget);
      }
    }
  }

  void rules_for(std::vector<Candidate>& out, const SentPtr& claim, std::size_t budget) {
    const Sentence& x = *claim;
    const std::size_t n = proof_.lines.size();
    if (sig_.has_axiom(x)) offer(out, claim, Rule{}, budget);
    switch (x.kind()) {
      case SentKind::halted_within:
      case SentKind::not_halted_within: {
        Rule r;
        r.kind = x.kind() == SentKind::halted_within ? RuleKind::ax_trace : RuleKind::ax_running;
        r.ref = x.ref();
        r.a = x.n();
        offer(out, claim, std::move(r), budget);
        break;
      }
      case SentKind::no_proof_before: {
        Rule r;
        r.kind = RuleKind::ax_enum;
        r.sent = x.target();
        r.a = x.n();
        offer(out, claim, std::move(r), budget);
        break;
      }
      case SentKind::halts: {
        for (std::size_t i = 0; i < n; ++i) {
          const Sentence& c = *proof_.lines[i].claim;
          if (c.kind() == SentKind::halted_within && sentence_equal(*Sentence::halts(c.ref()), x)) {
            Rule r;
            r.kind = RuleKind::r_halts;
            r.a = i;
            offer(out, claim, std::move(r), budget);
          }
        }
        if (x.ref().is_const) {
          const std::size_t fixed = kl::raw_size(sentence_tree(x)) + 2;
          if (budget > fixed) {
            for (const auto& q : minimal_proofs(*negate(x), sig_, depth_, budget - fixed)) {
              Rule r;
              r.kind = RuleKind::r_finds_halt;
              r.proof = q;
              offer(out, claim, std::move(r), budget);
            }
          }
        }
        rosser_rules(out, claim, RuleKind::r_rosser_halt, budget);
        break;
      }
      case SentKind::not_halts:
        cycle_rules(out, claim, budget);
        rosser_rules(out, claim, RuleKind::r_rosser_loop, budget);
        break;
      default: break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Sentence& imp = *proof_.lines[j].claim;
        if (imp.kind() == SentKind::implies && sentence_equal(*imp.lhs(), *proof_.lines[i].claim) &&
            sentence_equal(*imp.rhs(), x)) {
          Rule r;
          r.kind = RuleKind::r_mp;
          r.a = i;
          r.b = j;
          offer(out, claim, std::move(r), budget);
        }
      }
    }
  }

  // Rosser lines cite an earlier no-proof-before line; the embedded proof is
  // the one whose rank that line names.
  void rosser_rules(std::vector<Candidate>& out, const SentPtr& claim, RuleKind kind, std::size_t budget) {
    if (!claim->ref().is_const) return;
    for (std::size_t i = 0; i < proof_.lines.size(); ++i) {
      const Sentence& c = *proof_.lines[i].claim;
      if (c.kind() != SentKind::no_proof_before || !sentence_equal(*c.target(), *claim)) continue;
      Rule r;
      r.kind = kind;
      r.a = i;
      r.proof = unrank_proof(c.n());
      if (proof_size(*r.proof) + kl::raw_size(sentence_tree(*claim)) + 2 > budget) continue;
      offer(out, claim, std::move(r), budget);
    }
  }

  // Premises a Rosser line would need: the rank of each least proof of the
  // opposite sentence bounds the earlier-proof search for the claim.
  std::vector<SentPtr> rosser_premises(std::size_t budget) {
    std::vector<SentPtr> out;
    for (const auto& u : universe_) {
      if ((u->kind() != SentKind::halts && u->kind() != SentKind::not_halts) || !twin_searcher(*u)) continue;
      if (budget < 3) continue;
      for (const auto& q : minimal_proofs(*negate(*u), sig_, depth_, budget)) {
        out.push_back(Sentence::no_proof_before(u, rank_proof(*q)));
      }
    }
    return out;
  }

  std::vector<Candidate> candidates(std::size_t budget) {
    std::vector<Candidate> out;
    std::vector<SentPtr> claims = universe_;
    for (auto& s : rosser_premises(budget)) claims.push_back(std::move(s));
    std::vector<SentPtr> fresh;
    for (const auto& c : claims) {
      if (in_context(*c)) continue;
      bool dup = false;
      for (const auto& f : fresh) dup = dup || sentence_equal(*f, *c);
      if (!dup) fresh.push_back(c);
    }
    for (const auto& c : fresh) rules_for(out, c, budget);
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      return a.size != b.size ? a.size < b.size : a.rank < b.rank;
    });
    return out;
  }

  // `rest` is the node count left for the first line plus the tail when
  // `first` is set, and for the tail of lines otherwise.
  bool descend(std::size_t rest, bool first) {
    if (!first && rest == 1) return finish();
    const std::size_t reserve = first ? 1 : 2;
    if (rest < reserve + 3) return false;
    const std::size_t budget = rest - reserve;
    for (Candidate& c : candidates(budget)) {
      const std::size_t after = rest - c.size - (first ? 0 : 1);
      const bool is_goal = sentence_equal(*c.line.claim, *goal_);
      if (is_goal ? after != 1 : after < goal_line_min_ + 2) continue;
      proof_.lines.push_back(std::move(c.line));
      const bool stop = descend(after, false);
      proof_.lines.pop_back();
      if (stop) return true;
    }
    return false;
  }

  bool finish() {
    if (proof_.lines.empty() || !sentence_equal(*proof_.lines.back().claim, *goal_)) return false;
    if (!check_proof_at(proof_, *goal_, sig_, depth_).ok()) {
      throw Error(ErrorCode::defect, "directed search assembled an invalid proof");
    }
    results_.push_back(std::make_shared<const Proof>(proof_));
    if (!collect_) return true;
    if (results_.size() > kMaxMinimal) {
      throw Error(ErrorCode::budget_exceeded, "too many least proofs to enumerate");
    }
    return false;
  }

  SentPtr goal_;
  const Signature& sig_;
  std::uint64_t depth_;
  bool collect_;
  std::vector<SentPtr> universe_;
  std::size_t goal_line_min_ = 0;
  Proof proof_;
  std::vector<ProofPtr> results_;
};

std::string minimal_key(const Sentence& goal, std::uint64_t depth) {
  return std::to_string(depth) + " " + render(goal);
}

}  // namespace

std::optional<std::pair<std::uint64_t, std::uint64_t>> cycle_of(const Ref& r, const Signature& sig) {
  SignatureCache& cache = sig.cache();
  const std::string key = ref_key(r);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    RunMemo& m = run_memo_locked(cache, key);
    if (m.cycle_known) return m.cycle;
  }
  std::optional<std::pair<std::uint64_t, std::uint64_t>> result;
  if (const kl::Expr* e = resolve(r, sig)) {
    if (auto w = kl::find_cycle(ExprPtr(e), sig.defs(), sig.caps().fuel_cap)) result = std::make_pair(w->i, w->j - w->i);
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  RunMemo& m = run_memo_locked(cache, key);
  m.cycle = result;
  m.cycle_known = true;
  return result;
}

std::vector<ProofPtr> minimal_proofs(const Sentence& goal, const Signature& sig, std::uint64_t depth,
                                     std::size_t max_size) {
  SignatureCache& cache = sig.cache();
  const std::string key = minimal_key(goal, depth);
  MinimalMemo memo;
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.minimal.find(key);
    if (it != cache.minimal.end()) memo = it->second;
  }
  if (!memo.proofs.empty()) {
    return memo.size <= max_size ? memo.proofs : std::vector<ProofPtr>{};
  }
  if (memo.searched >= max_size) return {};
  SentPtr g = sentence_from_datum(*goal.datum());
  std::vector<ProofPtr> found;
  std::size_t size = memo.searched + 1;
  for (; size <= max_size; ++size) {
    Engine engine(g, sig, depth, true);
    engine.explore(size);
    if (!engine.results().empty()) {
      found = std::move(engine.results());
      break;
    }
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  MinimalMemo& slot = cache.minimal[key];
  if (!found.empty()) {
    slot.size = size;
    slot.proofs = found;
    slot.searched = size;
  } else if (slot.searched < max_size) {
    slot.searched = max_size;
  }
  return found;
}

std::optional<Natural> directed_first_proof(const Sentence& goal, const Natural& k, const Signature& sig,
                                            std::uint64_t depth) {
  SentPtr g = sentence_from_datum(*goal.datum());
  Natural base = 0;
  for (std::size_t size = 1;; ++size) {
    if (base >= k) return std::nullopt;
    Engine engine(g, sig, depth, false);
    if (engine.explore(size)) {
      Natural r = rank_proof(*engine.results().front());
      if (r >= k) return std::nullopt;
      return r;
    }
    base += proof_grammar().count(kProofNt, size);
  }
}

}  // namespace exm::fm
