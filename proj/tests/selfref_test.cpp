// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "core/error.hpp"
#include "formal/checker.hpp"
#include "formal/generators.hpp"
#include "kernel/expr.hpp"
#include "kernel/machine.hpp"
#include "selfref/selfref.hpp"

using namespace exm;
using namespace exm::fm;
using exm::sr::SearcherBundle;

namespace {

ProofPtr axiom(const SentPtr& s) {
  auto p = std::make_shared<Proof>();
  p->lines.push_back(Line{s, Rule{}});
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("both searchers are installed as their own self-application") {
  for (const SearcherBundle& b : {sr::build_searcher_P(Signature()), sr::build_searcher_B(Signature())}) {
    const std::string src = kl::render(*b.source);
    const kl::Expr* def = b.sig.defs().find(b.const_name);
    REQUIRE(def != nullptr);
    CHECK(kl::render(*def) == "(call " + src + " (quote " + src + "))");
    CHECK(render(*b.sentence) == "(not-halts (const " + b.const_name->name + "))");
    CHECK(sr::verify_bundle(b));
  }
  CHECK(sr::build_searcher_P(Signature()).const_name->name == "p");
  CHECK(sr::build_searcher_B(Signature()).const_name->name == "b");
}

TEST_CASE("embedded targets decode to the bundle sentences") {
  const SearcherBundle p = sr::build_searcher_P(Signature());
  const auto pt = sr::embedded_targets(p);
  REQUIRE(pt.size() == 1);
  CHECK(sentence_equal(*pt[0], *p.sentence));
  const SearcherBundle b = sr::build_searcher_B(Signature());
  const auto bt = sr::embedded_targets(b);
  REQUIRE(bt.size() == 2);
  CHECK(sentence_equal(*bt[0], *b.sentence));
  CHECK(sentence_equal(*bt[1], *negate(*b.sentence)));
}

TEST_CASE("a tampered bundle fails verification") {
  SearcherBundle p = sr::build_searcher_P(Signature());
  SearcherBundle other = p;
  other.sentence = parse_sentence("(halts (const p))");
  CHECK_FALSE(sr::verify_bundle(other));
  SearcherBundle swapped = p;
  swapped.sig = p.sig.with_defs(Signature().defs().prepended(p.const_name, kl::parse_expr("(quote p)")));
  CHECK_FALSE(sr::verify_bundle(swapped));
}

TEST_CASE("building over an existing constant is a name clash") {
  const Signature base(kl::DefsTable({{kl::intern("p"), kl::parse_expr("0")}}), {}, Caps{});
  try {
    sr::build_searcher_P(base);
    FAIL("expected a name clash");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::name_clash);
  }
}

TEST_CASE("the searchers do not halt within the search budget in plain F") {
  for (const SearcherBundle& b : {sr::build_searcher_P(Signature()), sr::build_searcher_B(Signature())}) {
    const kl::Outcome o = kl::run(kl::Expr::var(b.const_name), b.sig.defs(), 10000);
    CHECK(o.kind == kl::OutcomeKind::out_of_fuel);
  }
}

TEST_CASE("the Goedel flip turns an injected proof into a proof of the negation") {
  const SearcherBundle plain = sr::build_searcher_P(Signature());
  const SearcherBundle plus = sr::build_searcher_P(Signature().with_axioms({plain.sentence}));
  const ProofPtr q = axiom(plus.sentence);
  REQUIRE(check_proof(*q, *plus.sentence, plus.sig).ok());
  const ProofPtr flipped = sr::godel_to_neg(*q, plus);
  CHECK(flipped->lines.back().rule.kind == RuleKind::r_finds_halt);
  CHECK(check_proof(*flipped, *negate(*plus.sentence), plus.sig).ok());
  CHECK_FALSE(check_proof(*flipped, *negate(*plus.sentence), plain.sig).ok());
}

TEST_CASE("the Goedel flip rejects proofs of other sentences") {
  const SearcherBundle plain = sr::build_searcher_P(Signature());
  const SentPtr other = parse_sentence("(halts (const p))");
  const SearcherBundle minus = sr::build_searcher_P(Signature().with_axioms({other}));
  try {
    sr::godel_to_neg(*axiom(other), minus);
    FAIL("expected a rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_proof_of_target);
  }
}

TEST_CASE("the Rosser flip works in both directions and raises the rank") {
  const SearcherBundle plain = sr::build_searcher_B(Signature());
  for (const SentPtr& s : {plain.sentence, negate(*plain.sentence)}) {
    CAPTURE(render(*s));
    const SearcherBundle b = sr::build_searcher_B(Signature().with_axioms({s}));
    const ProofPtr q = axiom(s);
    const ProofPtr flipped = sr::rosser_flip(*q, b);
    CHECK(check_proof(*flipped, *negate(*s), b.sig).ok());
    CHECK(rank_proof(*flipped) > rank_proof(*q));
    const RuleKind expected = s->kind() == SentKind::not_halts ? RuleKind::r_rosser_halt : RuleKind::r_rosser_loop;
    CHECK(flipped->lines.back().rule.kind == expected);
  }
}

TEST_CASE("the Rosser flip stops at an earlier proof of the opposite") {
  const SentPtr r = parse_sentence("(not-halts (const b))");
  const SentPtr nr = negate(*r);
  const SearcherBundle b = sr::build_searcher_B(Signature().with_axioms({r, nr}));
  // (halts (const b)) has the smaller axiom proof, so flipping the proof of
  // (not-halts (const b)) meets it first.
  REQUIRE(rank_proof(*axiom(nr)) < rank_proof(*axiom(r)));
  try {
    sr::rosser_flip(*axiom(r), b);
    FAIL("expected an earlier opposite proof");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::found_earlier_opposite);
  }
  CHECK(check_proof(*sr::rosser_flip(*axiom(nr), b), *r, b.sig).ok());
}

TEST_CASE("the second incompleteness pipeline reaches both sentences") {
  const SearcherBundle plain = sr::build_searcher_P(Signature());
  const SentPtr imp = sr::second_incompleteness_sentence(plain);
  CHECK(render(*imp) == "(implies (con-f) (not-halts (const p)))");
  const SearcherBundle second = sr::build_searcher_P(Signature().with_axioms({Sentence::con(), imp}));
  const ProofPtr mp = parse_proof(
      "(proof (line (con-f) (ax-inj)) (line (implies (con-f) (not-halts (const p))) (ax-inj)) "
      "(line (not-halts (const p)) (r-mp 0 1)))");
  CHECK(check_proof(*mp, *second.sentence, second.sig).ok());
  const ProofPtr flipped = sr::godel_to_neg(*mp, second);
  CHECK(check_proof(*flipped, *negate(*second.sentence), second.sig).ok());
}

TEST_CASE("the sub-inconsistency family stays valid after injecting the negation") {
  const SearcherBundle plain = sr::build_searcher_P(Signature());
  const SearcherBundle minus = sr::build_searcher_P(Signature().with_axioms({negate(*plain.sentence)}));
  for (const SearcherBundle* b : {&plain, &minus}) {
    for (unsigned n : {1u, 2u, 17u, 100u}) {
      const Ref r = Ref::constant(b->const_name);
      const ProofPtr p = prove_not_halted_within(r, n, b->sig);
      CHECK(check_proof(*p, *Sentence::not_halted_within(r, n), b->sig).ok());
    }
  }
  CHECK_FALSE(first_proof(*minus.sentence, 10000, minus.sig, 0).has_value());
}

TEST_CASE("bundle export writes the documented files deterministically") {
  const auto root = std::filesystem::temp_directory_path() / "exm_selfref_test";
  std::filesystem::remove_all(root);
  const SearcherBundle b = sr::build_searcher_B(Signature());
  sr::export_bundle(b, root / "one");
  sr::export_bundle(sr::build_searcher_B(Signature()), root / "two");
  for (const char* f : {"b.kl", "signature", "sentence"}) {
    CAPTURE(f);
    REQUIRE(std::filesystem::exists(root / "one" / f));
    CHECK(slurp(root / "one" / f) == slurp(root / "two" / f));
  }
  CHECK(slurp(root / "one" / "sentence") == "(not-halts (const b))\n");
  CHECK(render(parse_signature(slurp(root / "one" / "signature"))) == render(b.sig));
  CHECK(kl::render(*kl::parse_expr(slurp(root / "one" / "b.kl"))) == kl::render(*b.source));
  std::filesystem::remove_all(root);
}

TEST_CASE("every total shipped oracle is contradicted on its diagonal input") {
  const auto oracles = sr::shipped_oracles();
  CHECK(oracles.size() >= 5);
  std::size_t total = 0;
  for (const auto& h : oracles) {
    CAPTURE(h.label);
    try {
      const sr::FalsificationReport r = sr::falsify_oracle(h, 100000);
      ++total;
      CHECK(r.contradiction == sr::Contradiction::yes);
      if (r.accepts) {
        CHECK(r.observed == sr::Observation::cycle);
      } else {
        CHECK(r.observed == sr::Observation::halt);
      }
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::oracle_not_total);
    }
  }
  CHECK(total >= 5);
}

TEST_CASE("falsification reports use the documented record layout") {
  const sr::OracleCandidate reject{kl::parse_expr("(lambda (a) ())"), "always-reject"};
  CHECK(sr::render(sr::falsify_oracle(reject, 100000)) ==
        "oracle=always-reject verdict=reject observed=halt contradiction=yes");
  const sr::OracleCandidate accept{kl::parse_expr("(lambda (a) (quote t))"), "always-accept"};
  CHECK(sr::render(sr::falsify_oracle(accept, 100000)) ==
        "oracle=always-accept verdict=accept observed=cycle contradiction=yes");
}

TEST_CASE("an oracle that faults on its diagonal input is not total") {
  const sr::OracleCandidate h{kl::parse_expr("(lambda (a) (head 0))"), "faulting"};
  try {
    sr::falsify_oracle(h, 100000);
    FAIL("expected a non-total oracle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::oracle_not_total);
  }
}
