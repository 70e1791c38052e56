// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"

#include "formal/checker.hpp"
#include "formal/generators.hpp"
#include "formal/mutations.hpp"
#include "objkl/corpus.hpp"
#include "objkl/object.hpp"
#include "selfref/selfref.hpp"

using namespace exm;
using namespace exm::fm;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::filesystem::path kShipped = std::filesystem::path(EXM_SOURCE_DIR) / "objkl";

}  // namespace

TEST_CASE("shipped object sources are byte-identical to the linked programs") {
  const auto& src = obj::object_checker_source();
  CHECK(slurp(kShipped / "checker.kl") == src.checker_text + "\n");
  CHECK(slurp(kShipped / "unrank.kl") == src.unranker_text + "\n");
  CHECK(kl::render(*kl::parse_expr(src.checker_text)) == src.checker_text);
}

TEST_CASE("object encodings decode to the same values") {
  const sr::SearcherBundle b = sr::build_searcher_B(obj::corpus_base_signature());
  const SentPtr s = parse_sentence("(no-proof-before (implies (con-f) (halts (const b))) 12)");
  CHECK(sentence_equal(*obj::decode_sentence(*obj::encode(*s)), *s));
  const ProofPtr p = prove_not_halted_within(Ref::constant(b.const_name), 7, b.sig);
  CHECK(proof_equal(*obj::decode_proof(*obj::encode(*p)), *p));
  CHECK(render(obj::decode_signature(*obj::encode(b.sig))) == render(b.sig));
  CHECK(kl::render(*obj::decode_expr(*obj::encode(*b.source))) == kl::render(*b.source));
}

TEST_CASE("the object unranker agrees with the meta unranker") {
  for (unsigned n : {0u, 1u, 2u, 3u, 5u, 8u, 13u, 21u, 34u, 55u, 89u}) {
    CAPTURE(n);
    const auto p = obj::run_object_unrank(n, 10000000);
    REQUIRE(p.has_value());
    CHECK(proof_equal(**p, *unrank_proof(n)));
  }
  const Natural big = rank_proof(*parse_proof("(proof (line (not-halts (const p)) (ax-inj)))"));
  const auto p = obj::run_object_unrank(big, 100000000);
  REQUIRE(p.has_value());
  CHECK(render(**p) == "(proof (line (not-halts (const p)) (ax-inj)))");
}

TEST_CASE("the object checker matches the meta checker on a generated family") {
  const Signature sig = obj::corpus_base_signature();
  const Ref two = Ref::constant(kl::intern("two"));
  const ProofPtr p = prove_halted_by_trace(two, sig);
  const SentPtr goal = Sentence::halts(two);
  const obj::ObjectOutcome o = obj::run_object_check(*p, *goal, sig, 100000000);
  REQUIRE_FALSE(o.timed_out);
  CHECK(o.verdict == check_proof(*p, *goal, sig));
  for (const Mutant& m : mutants(*p)) {
    CAPTURE(m.mutation);
    const obj::ObjectOutcome mo = obj::run_object_check(*m.proof, *goal, sig, 100000000);
    REQUIRE_FALSE(mo.timed_out);
    CHECK(mo.verdict == check_proof(*m.proof, *goal, sig));
    CHECK_FALSE(mo.verdict.ok());
  }
}

TEST_CASE("running out of object fuel is a timeout, not a verdict") {
  const Signature sig = obj::corpus_base_signature();
  const Ref two = Ref::constant(kl::intern("two"));
  const ProofPtr p = prove_halted_by_trace(two, sig);
  const obj::ObjectOutcome o = obj::run_object_check(*p, *Sentence::halts(two), sig, 50);
  CHECK(o.timed_out);
  CHECK(o.steps == 50);
}

TEST_CASE("the shipped agreement corpus has two hundred labelled items") {
  const auto corpus = obj::standard_agreement_corpus();
  CHECK(corpus.size() == 200);
  std::set<std::string> labels;
  std::set<std::string> families;
  std::size_t valid = 0;
  for (const auto& item : corpus) {
    labels.insert(item.label);
    families.insert(item.label.substr(0, item.label.find('/')));
    valid += check_proof(*item.proof, *item.goal, item.sig).ok();
  }
  for (const char* f : {"trace", "running", "cycle", "enum", "godel-flip", "rosser-flip", "second", "budget"}) {
    CAPTURE(f);
    CHECK(families.count(f) == 1);
  }
  CHECK(valid > 0);
  CHECK(valid < corpus.size());
}

TEST_CASE("agreement records use the documented line layout") {
  std::vector<obj::AgreementItem> items;
  const Signature sig = obj::corpus_base_signature();
  const Ref two = Ref::constant(kl::intern("two"));
  items.push_back({prove_halted_by_trace(two, sig), Sentence::halts(two), sig, "trace/two"});
  items.push_back({prove_halted_by_trace(two, sig), Sentence::not_halts(two), sig, "trace/two/goal"});
  const obj::AgreementReport r = obj::agreement_harness(items, 100000000, 2);
  CHECK(r.decided == 2);
  CHECK(r.agreed == 2);
  const std::string text = obj::render_report(r);
  CHECK(text.rfind("item=0 meta=valid object=valid agree=yes label=trace/two\n", 0) == 0);
  CHECK(text.find("\nitems=2 decided=2 agreed=2 timeouts=0\n") != std::string::npos);
  const obj::AgreementReport starved = obj::agreement_harness(items, 10, 1);
  CHECK(starved.timeouts == 2);
  CHECK(obj::render_report(starved).find("object=timeout agree=n/a") != std::string::npos);
}
