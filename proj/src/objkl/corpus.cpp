// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "objkl/corpus.hpp"

#include <string>

#include "core/error.hpp"
#include "formal/generators.hpp"
#include "formal/mutations.hpp"
#include "selfref/selfref.hpp"

namespace exm::obj {
namespace {

using fm::Ref;
using fm::Sentence;

constexpr std::size_t kCorpusSize = 200;

const char* const kSpin = "(call (lambda (x) (call x x)) (lambda (x) (call x x)))";
const char* const kCountdown =
    "(call (lambda (f n) (call f f n)) (lambda (f n) (if (zerop n) (quote done) (call f f (pred n)))) 4)";

Ref lit(const char* text) { return Ref::literal(kl::parse_expr(text)); }
Ref cst(const char* name) { return Ref::constant(kl::intern(name)); }

std::string ref_label(const Ref& r) { return r.is_const ? r.name->name : "lit"; }

class Builder {
 public:
  std::vector<AgreementItem> items;

  void add(fm::ProofPtr p, fm::SentPtr goal, const Signature& sig, std::string label) {
    items.push_back(AgreementItem{std::move(p), std::move(goal), sig, std::move(label)});
  }

  // The proof and each of its mutants against the proof's own claim.
  void family(const fm::ProofPtr& p, const Signature& sig, const std::string& label) {
    const fm::SentPtr goal = p->lines.back().claim;
    add(p, goal, sig, label);
    for (const fm::Mutant& m : fm::mutants(*p)) add(m.proof, goal, sig, label + "/" + m.mutation);
  }
};

Signature with_caps(const Signature& s, Natural enum_cap, std::uint64_t depth, std::uint64_t fuel) {
  fm::Caps c;
  c.enum_cap = std::move(enum_cap);
  c.depth_cap = depth;
  c.fuel_cap = fuel;
  return s.with_caps(c);
}

fm::ProofPtr one_line(fm::SentPtr claim, fm::Rule rule) {
  auto p = std::make_shared<fm::Proof>();
  p->lines.push_back(fm::Line{std::move(claim), std::move(rule)});
  return p;
}

fm::Rule rule(fm::RuleKind k, Ref r, Natural a, Natural b = 0) {
  fm::Rule out;
  out.kind = k;
  out.ref = std::move(r);
  out.a = std::move(a);
  out.b = std::move(b);
  return out;
}

fm::Rule enum_rule(fm::SentPtr s, Natural k) {
  fm::Rule out;
  out.kind = fm::RuleKind::ax_enum;
  out.sent = std::move(s);
  out.a = std::move(k);
  return out;
}

}  // namespace

Signature corpus_base_signature() {
  return Signature(kl::DefsTable({{kl::intern("two"), kl::parse_expr("(succ (succ 0))")},
                                  {kl::intern("pair"), kl::parse_expr("(cons (quote a) (quote b))")},
                                  {kl::intern("spin"), kl::parse_expr(kSpin)},
                                  {kl::intern("countdown"), kl::parse_expr(kCountdown)}}),
                   {}, fm::Caps{});
}

std::vector<AgreementItem> standard_agreement_corpus() {
  const Signature base = corpus_base_signature();
  const sr::SearcherBundle plain = sr::build_searcher_P(base);
  const Signature& sig = plain.sig;
  Builder b;

  for (const Ref& r : {cst("two"), cst("pair"), cst("countdown"), lit("(succ 0)"),
                       lit("(call (lambda (x) (cons x x)) (quote a))"), lit("(head (cons 0 1))")}) {
    b.family(fm::prove_halted_by_trace(r, sig), sig, "trace/" + ref_label(r));
  }
  for (const auto& [r, n] : std::vector<std::pair<Ref, int>>{
           {cst("p"), 1}, {cst("p"), 3}, {cst("p"), 40}, {cst("spin"), 7}, {lit(kSpin), 5}, {cst("countdown"), 9}}) {
    b.family(fm::prove_not_halted_within(r, n, sig), sig, "running/" + ref_label(r) + "/" + std::to_string(n));
  }
  for (const Ref& r : {cst("spin"), lit(kSpin)}) {
    b.family(fm::prove_not_halts_by_cycle(r, sig), sig, "cycle/" + ref_label(r));
  }
  for (const auto& [text, k] : std::vector<std::pair<const char*, int>>{
           {"(halts (const p))", 3}, {"(not-halts (const two))", 5}, {"(halts (const spin))", 2}}) {
    b.family(fm::prove_no_proof_before(fm::parse_sentence(text), k, sig), sig, "enum/" + std::to_string(k));
  }

  // Perturbed systems.
  const fm::SentPtr g = plain.sentence;
  {
    const sr::SearcherBundle plus = sr::build_searcher_P(base.with_axioms({g}));
    auto axiom = fm::parse_proof("(proof (line (not-halts (const p)) (ax-inj)))");
    b.family(axiom, plus.sig, "injected/g");
    b.family(sr::godel_to_neg(*axiom, plus), plus.sig, "godel-flip");
  }
  for (const char* ax : {"(not-halts (const b))", "(halts (const b))"}) {
    const fm::SentPtr s = fm::parse_sentence(ax);
    const sr::SearcherBundle rb = sr::build_searcher_B(base.with_axioms({s}));
    auto axiom = std::make_shared<fm::Proof>();
    axiom->lines.push_back(fm::Line{s, fm::Rule{}});
    b.family(sr::rosser_flip(*axiom, rb), rb.sig, std::string("rosser-flip/") + (s->kind() == fm::SentKind::halts ? "halts" : "not-halts"));
  }
  {
    const fm::SentPtr imp = sr::second_incompleteness_sentence(plain);
    const sr::SearcherBundle second = sr::build_searcher_P(base.with_axioms({Sentence::con(), imp}));
    auto mp = std::make_shared<fm::Proof>();
    mp->lines.push_back(fm::Line{Sentence::con(), fm::Rule{}});
    mp->lines.push_back(fm::Line{imp, fm::Rule{}});
    fm::Rule r;
    r.kind = fm::RuleKind::r_mp;
    r.a = 0;
    r.b = 1;
    mp->lines.push_back(fm::Line{g, r});
    b.family(mp, second.sig, "second/mp");
    b.family(sr::godel_to_neg(*mp, second), second.sig, "second/flip");
  }

  // Budget edges: each cap exactly met and exceeded by one.
  const Signature fuel20 = with_caps(sig, 100000, 3, 20);
  const Signature enum4 = with_caps(sig, 4, 3, 100000);
  const Signature depth1 = with_caps(sig, 100000, 1, 100000);
  const Signature depth2 = with_caps(sig, 100000, 2, 100000);
  const fm::SentPtr hp = fm::parse_sentence("(halts (const p))");
  const auto running = [&](int n) {
    return one_line(Sentence::not_halted_within(cst("p"), n), rule(fm::RuleKind::ax_running, cst("p"), n));
  };
  b.add(running(20), running(20)->lines.back().claim, fuel20, "budget/fuel-at-cap");
  b.add(running(21), running(21)->lines.back().claim, fuel20, "budget/fuel-over-cap");
  {
    auto t = fm::prove_halted_by_trace(cst("countdown"), sig);
    b.add(t, t->lines.back().claim, fuel20, "budget/trace-over-cap");
  }
  for (int k : {4, 5}) {
    auto p = one_line(Sentence::no_proof_before(hp, k), enum_rule(hp, k));
    b.add(p, p->lines.back().claim, enum4, "budget/enum-" + std::to_string(k) + "-cap-4");
  }
  for (const auto& [s, label] : std::vector<std::pair<const Signature*, const char*>>{{&depth1, "depth-1"},
                                                                                    {&depth2, "depth-2"}}) {
    auto p = one_line(Sentence::no_proof_before(hp, 2), enum_rule(hp, 2));
    b.add(p, p->lines.back().claim, *s, std::string("budget/enum-") + label);
  }

  // Further runs of P, of the loop and of countdowns from other starting
  // values fill the corpus to its fixed size.
  for (int i = 0; b.items.size() < kCorpusSize; ++i) {
    fm::ProofPtr p;
    std::string label;
    switch (i % 3) {
      case 0:
        p = fm::prove_not_halted_within(cst("p"), 100 + 7 * i, sig);
        label = "running/p/" + std::to_string(100 + 7 * i);
        break;
      case 1: {
        const std::string e = "(call (lambda (f n) (call f f n)) (lambda (f n) (if (zerop n) (quote done) "
                              "(call f f (pred n)))) " + std::to_string(i % 17) + ")";
        p = fm::prove_halted_by_trace(Ref::literal(kl::parse_expr(e)), sig);
        label = "trace/countdown-" + std::to_string(i % 17);
        break;
      }
      default:
        p = fm::prove_not_halted_within(lit(kSpin), 10 + i, sig);
        label = "running/lit/" + std::to_string(10 + i);
    }
    b.add(p, p->lines.back().claim, sig, label);
  }
  if (b.items.size() != kCorpusSize) {
    throw Error(ErrorCode::defect, "agreement corpus has " + std::to_string(b.items.size()) + " items");
  }
  return std::move(b.items);
}

}  // namespace exm::obj
