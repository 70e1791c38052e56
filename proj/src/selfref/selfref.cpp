// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "selfref/selfref.hpp"

#include <fstream>

#include "core/error.hpp"
#include "formal/generators.hpp"
#include "objkl/object.hpp"

namespace exm::sr {
namespace {

using kl::ValuePtr;

void collect_targets(const kl::Value& d, kl::Symbol name, std::vector<SentPtr>& out) {
  if (!d.is_pair()) return;
  if (d.head()->is_sym() && d.head()->sym()->name == "quote") {
    if (kl::list_length(d) != 2) return;
    const kl::Value& q = *d.tail()->head();
    if (q.is_pair() && q.head()->is_sym() &&
        (q.head()->sym()->name == "halts" || q.head()->sym()->name == "not-halts")) {
      SentPtr s = fm::sentence_from_datum(q);
      if (s->ref().is_const && s->ref().name == name) out.push_back(s);
    }
    return;
  }
  for (const kl::Value* cur = &d; cur->is_pair(); cur = cur->tail().get()) collect_targets(*cur->head(), name, out);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

ProofPtr checked_target(const Proof& q, const SentPtr& target, const Signature& sig) {
  if (q.lines.empty() || !fm::check_proof(q, *target, sig).ok()) {
    throw Error(ErrorCode::not_a_proof_of_target, "input is not a valid proof of " + fm::render(*target));
  }
  return std::make_shared<Proof>(q);
}

ExprPtr loop_forever() {
  return kl::parse_expr("(call (lambda (x) (call x x)) (lambda (x) (call x x)))");
}

}  // namespace

kl::Symbol p_name() { return kl::intern("p"); }
kl::Symbol b_name() { return kl::intern("b"); }

ValuePtr searcher_source(fm::SearcherKind kind, kl::Symbol name, const kl::DefsTable& base_defs,
                         const std::vector<SentPtr>& axioms, const fm::Caps& caps) {
  const obj::ObjectCheckerSource& src = obj::object_checker_source();
  return obj::fill_template(obj::searcher_skeleton(kind),
                            {{kl::intern("hole-chk"), src.checker_datum},
                             {kl::intern("hole-unr"), src.unranker_datum},
                             {kl::intern("hole-name"), kl::make_sym(name)},
                             {kl::intern("hole-defs"), kl::defs_to_datum(base_defs)->tail()},
                             {kl::intern("hole-axioms"), fm::axioms_to_datum(axioms)},
                             {kl::intern("hole-caps"), fm::caps_to_datum(caps)}});
}

SearcherBundle build_searcher(fm::SearcherKind kind, kl::Symbol name, const Signature& base) {
  if (base.defs().contains(name)) throw Error(ErrorCode::name_clash, "constant " + name->name + " already defined");
  SearcherBundle b;
  b.kind = kind;
  b.const_name = name;
  b.source = kl::expr_from_datum(*searcher_source(kind, name, base.defs(), base.axioms(), base.caps()));
  b.self_app = kl::Expr::call(b.source, {kl::Expr::quote(kl::expr_to_datum(*b.source))});
  b.sentence = fm::Sentence::not_halts(fm::Ref::constant(name));
  b.sig = base.with_defs(base.defs().prepended(name, b.self_app));
  return b;
}

SearcherBundle build_searcher_P(const Signature& base) {
  return build_searcher(fm::SearcherKind::single, p_name(), base);
}

SearcherBundle build_searcher_B(const Signature& base) {
  return build_searcher(fm::SearcherKind::twin, b_name(), base);
}

std::vector<SentPtr> embedded_targets(const SearcherBundle& b) {
  std::vector<SentPtr> out;
  collect_targets(*kl::expr_to_datum(*b.source), b.const_name, out);
  return out;
}

bool verify_bundle(const SearcherBundle& b) {
  const kl::Expr* def = b.sig.defs().find(b.const_name);
  if (!def) return false;
  const std::string src = kl::render(*b.source);
  if (kl::render(*def) != "(call " + src + " (quote " + src + "))") return false;
  std::vector<SentPtr> expected{b.sentence};
  if (b.kind == fm::SearcherKind::twin) expected.push_back(fm::negate(*b.sentence));
  const std::vector<SentPtr> found = embedded_targets(b);
  if (found.size() != expected.size()) return false;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!fm::sentence_equal(*found[i], *expected[i])) return false;
  }
  return true;
}

ProofPtr godel_to_neg(const Proof& q, const SearcherBundle& b) {
  ProofPtr inner = checked_target(q, b.sentence, b.sig);
  fm::Rule rule;
  rule.kind = fm::RuleKind::r_finds_halt;
  rule.proof = inner;
  auto out = std::make_shared<Proof>();
  out->lines.push_back(fm::Line{fm::negate(*b.sentence), std::move(rule)});
  return out;
}

ProofPtr rosser_flip(const Proof& q, const SearcherBundle& b) {
  SentPtr opposite = fm::negate(*b.sentence);
  const bool proves_sentence = !q.lines.empty() && fm::sentence_equal(*q.lines.back().claim, *b.sentence);
  SentPtr proved = proves_sentence ? b.sentence : opposite;
  ProofPtr inner = checked_target(q, proved, b.sig);
  SentPtr claim = fm::negate(*proved);
  const Natural r = fm::rank_proof(q);
  ProofPtr premise;
  try {
    premise = fm::prove_no_proof_before(claim, r, b.sig);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::found_proof) throw;
    throw Error(ErrorCode::found_earlier_opposite, "rank " + e.detail() + " already proves " + fm::render(*claim),
                e.detail());
  }
  auto out = std::make_shared<Proof>(*premise);
  fm::Rule rule;
  rule.kind = proves_sentence ? fm::RuleKind::r_rosser_halt : fm::RuleKind::r_rosser_loop;
  rule.proof = inner;
  rule.a = 0;
  out->lines.push_back(fm::Line{claim, std::move(rule)});
  return out;
}

SentPtr second_incompleteness_sentence(const SearcherBundle& b) {
  return fm::Sentence::implies(fm::Sentence::con(), b.sentence);
}

void export_bundle(const SearcherBundle& b, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string file = b.kind == fm::SearcherKind::single ? "p.kl" : "b.kl";
  write_file(dir / file, kl::render(*b.source) + "\n");
  write_file(dir / "signature", fm::render(b.sig) + "\n");
  write_file(dir / "sentence", fm::render(*b.sentence) + "\n");
}

std::vector<OracleCandidate> shipped_oracles() {
  return {
      {kl::parse_expr("(lambda (a) (quote t))"), "always-accept"},
      {kl::parse_expr("(lambda (a) ())"), "always-reject"},
      {obj::linked_entry("oracle-simulate-fifty"), "simulate-50"},
      {obj::linked_entry("oracle-simulate-thousand"), "simulate-1000"},
      {obj::linked_entry("oracle-even-size"), "even-size"},
      {kl::parse_expr("(lambda (a) (symp a))"), "is-symbol"},
      {kl::parse_expr("(lambda (a) (head 0))"), "faulting"},
      {kl::Expr::lambda({kl::intern("a")}, loop_forever()), "diverging"},
  };
}

ExprPtr diagonal_function(const OracleCandidate& h) {
  return kl::Expr::lambda({kl::intern("a")},
                          kl::Expr::if_(kl::Expr::call(h.source, {kl::Expr::var(kl::intern("a"))}), loop_forever(),
                                        kl::Expr::quote(kl::make_sym("halted"))));
}

ExprPtr build_diagonal(const OracleCandidate& h) {
  ExprPtr d = diagonal_function(h);
  return kl::Expr::call(d, {kl::Expr::quote(kl::expr_to_datum(*d))});
}

FalsificationReport falsify_oracle(const OracleCandidate& h, std::uint64_t fuel) {
  FalsificationReport rep;
  rep.label = h.label;
  ExprPtr d = diagonal_function(h);
  const kl::DefsTable none;
  kl::Outcome verdict = kl::run(kl::Expr::call(h.source, {kl::Expr::quote(kl::expr_to_datum(*d))}), none, fuel);
  if (verdict.kind != kl::OutcomeKind::value) {
    throw Error(ErrorCode::oracle_not_total,
                "oracle " + h.label + (verdict.kind == kl::OutcomeKind::fault ? " faulted" : " ran out of fuel"));
  }
  rep.accepts = !verdict.result->is_nil();
  ExprPtr diag = build_diagonal(h);
  kl::Outcome run = kl::run(diag, none, fuel);
  rep.steps = run.steps;
  if (run.kind == kl::OutcomeKind::value) {
    rep.observed = Observation::halt;
  } else if (auto w = kl::find_cycle(diag, none, fuel)) {
    rep.observed = Observation::cycle;
    rep.cycle = w;
  }
  switch (rep.observed) {
    case Observation::halt: rep.contradiction = rep.accepts ? Contradiction::no : Contradiction::yes; break;
    case Observation::cycle: rep.contradiction = rep.accepts ? Contradiction::yes : Contradiction::no; break;
    case Observation::timeout: rep.contradiction = Contradiction::inconclusive; break;
  }
  return rep;
}

std::string render(const FalsificationReport& r) {
  static const char* observed[] = {"halt", "cycle", "timeout"};
  static const char* contra[] = {"yes", "no", "inconclusive"};
  return "oracle=" + r.label + " verdict=" + (r.accepts ? "accept" : "reject") +
         " observed=" + observed[static_cast<int>(r.observed)] +
         " contradiction=" + contra[static_cast<int>(r.contradiction)];
}

}  // namespace exm::sr
