// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "objkl/object.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include "core/error.hpp"
#include "objkl/linker.hpp"

namespace exm::obj {
namespace {

const KlsProgram& program() {
  static const KlsProgram p = parse_kls(kls_text());
  return p;
}

template <typename F>
auto decoding(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::decode) throw;
    throw Error(ErrorCode::decode, e.what());
  }
}

}  // namespace

const ObjectCheckerSource& object_checker_source() {
  static const ObjectCheckerSource src = [] {
    ObjectCheckerSource s;
    s.checker = link(program(), "check");
    s.unranker = link(program(), "unrank-proof");
    s.checker_datum = kl::expr_to_datum(*s.checker);
    s.unranker_datum = kl::expr_to_datum(*s.unranker);
    s.checker_text = kl::render(*s.checker);
    s.unranker_text = kl::render(*s.unranker);
    return s;
  }();
  return src;
}

kl::ExprPtr linked_entry(std::string_view entry) { return link(program(), entry); }

ValuePtr searcher_skeleton(fm::SearcherKind kind) {
  static const ValuePtr single = quoted_constant(program(), "skeleton-single");
  static const ValuePtr twin = quoted_constant(program(), "skeleton-twin");
  return kind == fm::SearcherKind::single ? single : twin;
}

ValuePtr fill_template(const ValuePtr& t, const std::vector<std::pair<kl::Symbol, ValuePtr>>& binds) {
  if (t->is_sym()) {
    for (const auto& [name, value] : binds) {
      if (name == t->sym()) return value;
    }
    return t;
  }
  if (!t->is_pair()) return t;
  return kl::cons(fill_template(t->head(), binds), fill_template(t->tail(), binds));
}

ValuePtr encode(const Sentence& s) { return s.datum(); }
ValuePtr encode(const Proof& p) { return fm::proof_to_datum(p); }
ValuePtr encode(const kl::Expr& e) { return kl::expr_to_datum(e); }
ValuePtr encode(const Signature& s) { return fm::signature_to_datum(s); }

fm::SentPtr decode_sentence(const kl::Value& d) {
  return decoding([&] { return fm::sentence_from_datum(d); });
}
fm::ProofPtr decode_proof(const kl::Value& d) {
  return decoding([&] { return fm::proof_from_datum(d); });
}
kl::ExprPtr decode_expr(const kl::Value& d) {
  return decoding([&] { return kl::expr_from_datum(d); });
}
Signature decode_signature(const kl::Value& d) {
  return decoding([&] { return fm::signature_from_datum(d); });
}

ObjectOutcome run_object_check(const Proof& p, const Sentence& goal, const Signature& sig, std::uint64_t fuel) {
  const ObjectCheckerSource& src = object_checker_source();
  kl::ExprPtr call = kl::Expr::call(
      src.checker, {kl::Expr::quote(src.checker_datum), kl::Expr::quote(src.unranker_datum),
                    kl::Expr::quote(encode(p)), kl::Expr::quote(encode(goal)), kl::Expr::quote(encode(sig))});
  kl::Outcome o = kl::run(call, kl::DefsTable(), fuel);
  ObjectOutcome out;
  out.steps = o.steps;
  switch (o.kind) {
    case kl::OutcomeKind::out_of_fuel: out.timed_out = true; return out;
    case kl::OutcomeKind::fault:
      throw Error(ErrorCode::decode, "object checker faulted: " + o.fault);
    case kl::OutcomeKind::value: break;
  }
  out.verdict = decoding([&] { return fm::verdict_from_datum(*o.result); });
  return out;
}

std::optional<fm::ProofPtr> run_object_unrank(const Natural& n, std::uint64_t fuel) {
  const ObjectCheckerSource& src = object_checker_source();
  kl::Outcome o = kl::run(kl::Expr::call(src.unranker, {kl::Expr::nat(n)}), kl::DefsTable(), fuel);
  if (o.kind == kl::OutcomeKind::out_of_fuel) return std::nullopt;
  if (o.kind == kl::OutcomeKind::fault) throw Error(ErrorCode::decode, "object unranker faulted: " + o.fault);
  return decode_proof(*o.result);
}

AgreementReport agreement_harness(const std::vector<AgreementItem>& corpus, std::uint64_t fuel, unsigned threads) {
  AgreementReport report;
  report.records.resize(corpus.size());
  std::vector<std::exception_ptr> errors(corpus.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      try {
        const AgreementItem& item = corpus[i];
        AgreementRecord& rec = report.records[i];
        rec.item = i;
        rec.label = item.label;
        rec.meta = fm::check_proof(*item.proof, *item.goal, item.sig);
        ObjectOutcome o = run_object_check(*item.proof, *item.goal, item.sig, fuel);
        if (!o.timed_out) {
          rec.object = o.verdict;
          rec.agree = o.verdict == rec.meta;
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& rec : report.records) {
    if (!rec.object) {
      ++report.timeouts;
      continue;
    }
    ++report.decided;
    if (rec.agree) ++report.agreed;
  }
  return report;
}

namespace {

std::string verdict_token(const Verdict& v) {
  if (v.ok()) return "valid";
  return std::string(fm::verdict_kind_name(v.kind)) + ":" + std::to_string(v.line) + ":" + v.reason;
}

}  // namespace

std::string render_report(const AgreementReport& r) {
  std::string out;
  for (const auto& rec : r.records) {
    out += "item=" + std::to_string(rec.item) + " meta=" + verdict_token(rec.meta) +
           " object=" + (rec.object ? verdict_token(*rec.object) : std::string("timeout")) +
           " agree=" + (rec.object ? (rec.agree ? "yes" : "no") : "n/a") + " label=" + rec.label + "\n";
  }
  out += "items=" + std::to_string(r.records.size()) + " decided=" + std::to_string(r.decided) +
         " agreed=" + std::to_string(r.agreed) + " timeouts=" + std::to_string(r.timeouts) + "\n";
  return out;
}

}  // namespace exm::obj
