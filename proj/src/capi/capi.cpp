// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "exmachina.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "arith/compile.hpp"
#include "core/error.hpp"
#include "formal/checker.hpp"
#include "formal/generators.hpp"
#include "objkl/corpus.hpp"
#include "objkl/object.hpp"
#include "selfref/selfref.hpp"

struct exm_sentence {
  exm::fm::SentPtr s;
};
struct exm_proof {
  exm::fm::ProofPtr p;
};
struct exm_signature {
  exm::fm::Signature sig;
};
struct exm_bundle {
  exm::sr::SearcherBundle b;
};
struct exm_counter_program {
  exm::ar::CounterProgram p;
};
struct exm_formula {
  exm::ar::FormulaPtr f;
};

namespace {

using exm::Error;
using exm::ErrorCode;
using exm::Natural;

thread_local std::string g_error;
thread_local std::string g_detail;

struct NullArgument {};

exm_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::syntax: return EXM_E_SYNTAX;
    case ErrorCode::io: return EXM_E_IO;
    case ErrorCode::name_clash: return EXM_E_NAME_CLASH;
    case ErrorCode::unsupported_negation: return EXM_E_UNSUPPORTED_NEGATION;
    case ErrorCode::not_observed_halting: return EXM_E_NOT_OBSERVED_HALTING;
    case ErrorCode::already_halted: return EXM_E_ALREADY_HALTED;
    case ErrorCode::no_cycle_found: return EXM_E_NO_CYCLE_FOUND;
    case ErrorCode::found_proof: return EXM_E_FOUND_PROOF;
    case ErrorCode::budget_exceeded: return EXM_E_BUDGET_EXCEEDED;
    case ErrorCode::not_a_proof_of_target: return EXM_E_NOT_A_PROOF_OF_TARGET;
    case ErrorCode::found_earlier_opposite: return EXM_E_FOUND_EARLIER_OPPOSITE;
    case ErrorCode::oracle_not_total: return EXM_E_ORACLE_NOT_TOTAL;
    case ErrorCode::decode: return EXM_E_DECODE;
    case ErrorCode::width_overflow: return EXM_E_WIDTH_OVERFLOW;
    case ErrorCode::unbounded_quantifier: return EXM_E_UNBOUNDED_QUANTIFIER;
    case ErrorCode::out_of_fuel: return EXM_E_OUT_OF_FUEL;
    case ErrorCode::invalid_argument: return EXM_E_INVALID_ARGUMENT;
    case ErrorCode::defect: return EXM_E_DEFECT;
  }
  return EXM_E_INTERNAL;
}

template <class F>
exm_status guarded(F&& body) {
  try {
    body();
    g_error.clear();
    g_detail.clear();
    return EXM_OK;
  } catch (const NullArgument&) {
    g_error = "a required argument is null";
    g_detail.clear();
    return EXM_E_NULL_ARGUMENT;
  } catch (const Error& e) {
    g_error = e.what();
    g_detail = e.detail();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    g_detail.clear();
    return EXM_E_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    g_detail.clear();
    return EXM_E_INTERNAL;
  }
}

template <class... T>
void need(const T*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw NullArgument{};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Natural natural_arg(const char* text) {
  need(text);
  auto n = exm::parse_decimal(text);
  if (!n) throw Error(ErrorCode::invalid_argument, std::string("not a natural number: ") + text);
  return *n;
}

exm::fm::Ref ref_arg(const char* text) {
  need(text);
  return exm::fm::ref_from_datum(*exm::kl::parse_datum(text));
}

void fill_verdict(const exm::fm::Verdict& v, exm_verdict* out) {
  out->kind = static_cast<exm_verdict_kind>(v.kind);
  out->line = v.line;
  std::memset(out->reason, 0, sizeof(out->reason));
  std::strncpy(out->reason, v.reason.c_str(), sizeof(out->reason) - 1);
}

std::vector<std::uint64_t> input_arg(const std::uint64_t* input, size_t n) {
  if (n > 0) need(input);
  return std::vector<std::uint64_t>(input, input + n);
}

}  // namespace

extern "C" {

const char* exm_version(void) { return EXM_VERSION; }

const char* exm_status_name(exm_status s) {
  static const char* const names[] = {"ok",
                                      "syntax",
                                      "io",
                                      "name-clash",
                                      "unsupported-negation",
                                      "not-observed-halting",
                                      "already-halted",
                                      "no-cycle-found",
                                      "found-proof",
                                      "budget-exceeded",
                                      "not-a-proof-of-target",
                                      "found-earlier-opposite",
                                      "oracle-not-total",
                                      "decode",
                                      "width-overflow",
                                      "unbounded-quantifier",
                                      "out-of-fuel",
                                      "invalid-argument",
                                      "defect",
                                      "null-argument",
                                      "internal"};
  const auto i = static_cast<size_t>(s);
  return i < sizeof(names) / sizeof(names[0]) ? names[i] : "unknown";
}

const char* exm_last_error(void) { return g_error.c_str(); }
const char* exm_last_error_detail(void) { return g_detail.c_str(); }
void exm_string_free(char* s) { std::free(s); }

exm_status exm_set_search_threads(unsigned threads) {
  return guarded([&] {
    if (threads == 0) throw Error(ErrorCode::invalid_argument, "threads must be positive");
    exm::fm::SearchSettings s = exm::fm::search_settings();
    s.threads = threads;
    exm::fm::set_search_settings(s);
  });
}

// ---- Sentences

exm_status exm_sentence_parse(const char* text, exm_sentence** out) {
  return guarded([&] {
    need(text, out);
    *out = new exm_sentence{exm::fm::parse_sentence(text)};
  });
}

exm_status exm_sentence_render(const exm_sentence* s, char** out) {
  return guarded([&] {
    need(s, out);
    *out = dup(exm::fm::render(*s->s));
  });
}

exm_status exm_sentence_negate(const exm_sentence* s, exm_sentence** out) {
  return guarded([&] {
    need(s, out);
    *out = new exm_sentence{exm::fm::negate(*s->s)};
  });
}

int exm_sentence_equal(const exm_sentence* a, const exm_sentence* b) {
  return a && b && exm::fm::sentence_equal(*a->s, *b->s) ? 1 : 0;
}

void exm_sentence_free(exm_sentence* s) { delete s; }

// ---- Proofs

exm_status exm_proof_parse(const char* text, exm_proof** out) {
  return guarded([&] {
    need(text, out);
    *out = new exm_proof{exm::fm::parse_proof(text)};
  });
}

exm_status exm_proof_render(const exm_proof* p, char** out) {
  return guarded([&] {
    need(p, out);
    *out = dup(exm::fm::render(*p->p));
  });
}

size_t exm_proof_line_count(const exm_proof* p) { return p ? p->p->lines.size() : 0; }

exm_status exm_proof_conclusion(const exm_proof* p, exm_sentence** out) {
  return guarded([&] {
    need(p, out);
    if (p->p->lines.empty()) throw Error(ErrorCode::invalid_argument, "the proof has no lines");
    *out = new exm_sentence{p->p->lines.back().claim};
  });
}

exm_status exm_proof_rule(const exm_proof* p, size_t index, char** out) {
  return guarded([&] {
    need(p, out);
    if (index >= p->p->lines.size()) throw Error(ErrorCode::invalid_argument, "line index out of range");
    *out = dup(std::string(exm::fm::rule_name(p->p->lines[index].rule.kind)));
  });
}

exm_status exm_proof_rank(const exm_proof* p, char** out) {
  return guarded([&] {
    need(p, out);
    *out = dup(exm::fm::rank_proof(*p->p).str());
  });
}

exm_status exm_proof_unrank(const char* rank, exm_proof** out) {
  return guarded([&] {
    need(out);
    *out = new exm_proof{exm::fm::unrank_proof(natural_arg(rank))};
  });
}

void exm_proof_free(exm_proof* p) { delete p; }

// ---- Signatures

exm_status exm_signature_new(exm_signature** out) {
  return guarded([&] {
    need(out);
    *out = new exm_signature{exm::fm::Signature()};
  });
}

exm_status exm_signature_parse(const char* text, exm_signature** out) {
  return guarded([&] {
    need(text, out);
    *out = new exm_signature{exm::fm::parse_signature(text)};
  });
}

exm_status exm_signature_render(const exm_signature* s, char** out) {
  return guarded([&] {
    need(s, out);
    *out = dup(exm::fm::render(s->sig));
  });
}

exm_status exm_signature_with_caps(const exm_signature* s, const char* enum_cap, uint64_t depth_cap,
                                   uint64_t fuel_cap, exm_signature** out) {
  return guarded([&] {
    need(s, out);
    exm::fm::Caps c;
    c.enum_cap = natural_arg(enum_cap);
    c.depth_cap = depth_cap;
    c.fuel_cap = fuel_cap;
    *out = new exm_signature{s->sig.with_caps(c)};
  });
}

exm_status exm_signature_caps(const exm_signature* s, char** enum_cap, uint64_t* depth_cap, uint64_t* fuel_cap) {
  return guarded([&] {
    need(s, enum_cap, depth_cap, fuel_cap);
    *enum_cap = dup(s->sig.caps().enum_cap.str());
    *depth_cap = s->sig.caps().depth_cap;
    *fuel_cap = s->sig.caps().fuel_cap;
  });
}

exm_status exm_signature_add_axiom(const exm_signature* s, const exm_sentence* axiom, exm_signature** out) {
  return guarded([&] {
    need(s, axiom, out);
    std::vector<exm::fm::SentPtr> axioms = s->sig.axioms();
    axioms.push_back(axiom->s);
    *out = new exm_signature{s->sig.with_axioms(std::move(axioms))};
  });
}

void exm_signature_free(exm_signature* s) { delete s; }

// ---- Checking and search

exm_status exm_check(const exm_proof* p, const exm_sentence* goal, const exm_signature* sig, exm_verdict* out) {
  return guarded([&] {
    need(p, goal, sig, out);
    fill_verdict(exm::fm::check_proof(*p->p, *goal->s, sig->sig), out);
  });
}

exm_status exm_search(const exm_sentence* goal, const exm_signature* sig, const char* k, int* found, char** rank) {
  return guarded([&] {
    need(goal, sig, found, rank);
    const Natural bound = natural_arg(k);
    if (bound > sig->sig.caps().enum_cap) {
      throw Error(ErrorCode::invalid_argument, "k exceeds the signature's enumeration cap");
    }
    auto r = exm::fm::first_proof(*goal->s, bound, sig->sig, 0);
    *found = r ? 1 : 0;
    *rank = r ? dup(r->str()) : nullptr;
  });
}

// ---- Generators

exm_status exm_prove_halted_by_trace(const char* ref, const exm_signature* sig, exm_proof** out) {
  return guarded([&] {
    need(sig, out);
    *out = new exm_proof{exm::fm::prove_halted_by_trace(ref_arg(ref), sig->sig)};
  });
}

exm_status exm_prove_not_halted_within(const char* ref, const char* n, const exm_signature* sig, exm_proof** out) {
  return guarded([&] {
    need(sig, out);
    *out = new exm_proof{exm::fm::prove_not_halted_within(ref_arg(ref), natural_arg(n), sig->sig)};
  });
}

exm_status exm_prove_not_halts_by_cycle(const char* ref, const exm_signature* sig, exm_proof** out) {
  return guarded([&] {
    need(sig, out);
    *out = new exm_proof{exm::fm::prove_not_halts_by_cycle(ref_arg(ref), sig->sig)};
  });
}

exm_status exm_prove_no_proof_before(const exm_sentence* s, const char* k, const exm_signature* sig,
                                     exm_proof** out) {
  return guarded([&] {
    need(s, sig, out);
    *out = new exm_proof{exm::fm::prove_no_proof_before(s->s, natural_arg(k), sig->sig)};
  });
}

// ---- Bundles

exm_status exm_bundle_build(exm_bundle_kind kind, const exm_signature* base, exm_bundle** out) {
  return guarded([&] {
    need(base, out);
    if (kind != EXM_GODEL && kind != EXM_ROSSER) throw Error(ErrorCode::invalid_argument, "unknown bundle kind");
    *out = new exm_bundle{kind == EXM_GODEL ? exm::sr::build_searcher_P(base->sig)
                                            : exm::sr::build_searcher_B(base->sig)};
  });
}

exm_status exm_bundle_signature(const exm_bundle* b, exm_signature** out) {
  return guarded([&] {
    need(b, out);
    *out = new exm_signature{b->b.sig};
  });
}

exm_status exm_bundle_sentence(const exm_bundle* b, exm_sentence** out) {
  return guarded([&] {
    need(b, out);
    *out = new exm_sentence{b->b.sentence};
  });
}

exm_status exm_bundle_constant(const exm_bundle* b, char** out) {
  return guarded([&] {
    need(b, out);
    *out = dup(b->b.const_name->name);
  });
}

exm_status exm_bundle_source(const exm_bundle* b, char** out) {
  return guarded([&] {
    need(b, out);
    *out = dup(exm::kl::render(*b->b.source));
  });
}

exm_status exm_bundle_verify(const exm_bundle* b, int* ok) {
  return guarded([&] {
    need(b, ok);
    *ok = exm::sr::verify_bundle(b->b) ? 1 : 0;
  });
}

exm_status exm_bundle_export(const exm_bundle* b, const char* dir) {
  return guarded([&] {
    need(b, dir);
    try {
      exm::sr::export_bundle(b->b, dir);
    } catch (const std::filesystem::filesystem_error& e) {
      throw Error(ErrorCode::io, e.what());
    }
  });
}

exm_status exm_godel_to_neg(const exm_proof* q, const exm_bundle* b, exm_proof** out) {
  return guarded([&] {
    need(q, b, out);
    *out = new exm_proof{exm::sr::godel_to_neg(*q->p, b->b)};
  });
}

exm_status exm_rosser_flip(const exm_proof* q, const exm_bundle* b, exm_proof** out) {
  return guarded([&] {
    need(q, b, out);
    *out = new exm_proof{exm::sr::rosser_flip(*q->p, b->b)};
  });
}

exm_status exm_second_incompleteness_sentence(const exm_bundle* b, exm_sentence** out) {
  return guarded([&] {
    need(b, out);
    *out = new exm_sentence{exm::sr::second_incompleteness_sentence(b->b)};
  });
}

void exm_bundle_free(exm_bundle* b) { delete b; }

// ---- Diagonal falsifier

size_t exm_oracle_count(void) { return exm::sr::shipped_oracles().size(); }

exm_status exm_oracle_label(size_t i, char** out) {
  return guarded([&] {
    need(out);
    const auto oracles = exm::sr::shipped_oracles();
    if (i >= oracles.size()) throw Error(ErrorCode::invalid_argument, "oracle index out of range");
    *out = dup(oracles[i].label);
  });
}

exm_status exm_oracle_source(size_t i, char** out) {
  return guarded([&] {
    need(out);
    const auto oracles = exm::sr::shipped_oracles();
    if (i >= oracles.size()) throw Error(ErrorCode::invalid_argument, "oracle index out of range");
    *out = dup(exm::kl::render(*oracles[i].source));
  });
}

exm_status exm_falsify_oracle(const char* source, const char* label, uint64_t fuel, exm_falsification* out,
                              char** line) {
  return guarded([&] {
    need(source, label, out);
    exm::sr::OracleCandidate h{exm::kl::parse_expr(source), label};
    const exm::sr::FalsificationReport r = exm::sr::falsify_oracle(h, fuel);
    out->accepts = r.accepts ? 1 : 0;
    out->observed = static_cast<exm_observation>(r.observed);
    out->contradiction = static_cast<exm_contradiction>(r.contradiction);
    out->steps = r.steps;
    if (line) *line = dup(exm::sr::render(r));
  });
}

// ---- Object level

exm_status exm_object_source(exm_object_part part, char** out) {
  return guarded([&] {
    need(out);
    const auto& src = exm::obj::object_checker_source();
    if (part == EXM_OBJECT_CHECKER) {
      *out = dup(src.checker_text);
    } else if (part == EXM_OBJECT_UNRANKER) {
      *out = dup(src.unranker_text);
    } else {
      throw Error(ErrorCode::invalid_argument, "unknown object source");
    }
  });
}

exm_status exm_object_check(const exm_proof* p, const exm_sentence* goal, const exm_signature* sig, uint64_t fuel,
                            int* timed_out, exm_verdict* out, uint64_t* steps) {
  return guarded([&] {
    need(p, goal, sig, timed_out, out);
    const exm::obj::ObjectOutcome o = exm::obj::run_object_check(*p->p, *goal->s, sig->sig, fuel);
    *timed_out = o.timed_out ? 1 : 0;
    if (!o.timed_out) fill_verdict(o.verdict, out);
    if (steps) *steps = o.steps;
  });
}

exm_status exm_agreement_run(uint64_t fuel, unsigned threads, exm_agreement_summary* out, char** report) {
  return guarded([&] {
    need(out);
    const auto corpus = exm::obj::standard_agreement_corpus();
    const auto r = exm::obj::agreement_harness(corpus, fuel, threads == 0 ? 1 : threads);
    out->items = r.records.size();
    out->decided = r.decided;
    out->agreed = r.agreed;
    out->timeouts = r.timeouts;
    if (report) *report = dup(exm::obj::render_report(r));
  });
}

// ---- Arithmetization

exm_status exm_counter_parse(const char* text, exm_counter_program** out) {
  return guarded([&] {
    need(text, out);
    *out = new exm_counter_program{exm::ar::parse_counter_program(text)};
  });
}

exm_status exm_counter_render(const exm_counter_program* p, char** out) {
  return guarded([&] {
    need(p, out);
    *out = dup(exm::ar::render(p->p));
  });
}

size_t exm_counter_registers(const exm_counter_program* p) { return p ? p->p.registers() : 0; }
size_t exm_counter_size(const exm_counter_program* p) { return p ? p->p.size() : 0; }
void exm_counter_free(exm_counter_program* p) { delete p; }

exm_status exm_counter_run(const exm_counter_program* p, const uint64_t* input, size_t n, uint64_t fuel,
                           exm_counter_result* out) {
  return guarded([&] {
    need(p, out);
    const exm::ar::CMResult r = exm::ar::cm_run(p->p, input_arg(input, n), fuel);
    out->halted = r.halted ? 1 : 0;
    out->steps = r.steps;
    out->pc = r.state.pc;
  });
}

exm_status exm_encode_config(uint64_t pc, const uint64_t* regs, size_t n, unsigned width, char** out) {
  return guarded([&] {
    need(out);
    exm::ar::CMState s{pc, input_arg(regs, n)};
    *out = dup(exm::ar::encode_config(s, width).str());
  });
}

exm_status exm_compile_step(const exm_counter_program* p, unsigned width, exm_formula** out) {
  return guarded([&] {
    need(p, out);
    *out = new exm_formula{exm::ar::compile_step(p->p, width)};
  });
}

exm_status exm_compile_halts_within(const exm_counter_program* p, const uint64_t* input, size_t n, uint64_t t,
                                    unsigned width, exm_formula** out) {
  return guarded([&] {
    need(p, out);
    *out = new exm_formula{exm::ar::compile_halts_within(p->p, input_arg(input, n), t, width)};
  });
}

exm_status exm_compile_halts(const exm_counter_program* p, const uint64_t* input, size_t n, unsigned width,
                             exm_formula** out) {
  return guarded([&] {
    need(p, out);
    *out = new exm_formula{exm::ar::compile_halts(p->p, input_arg(input, n), width)};
  });
}

exm_status exm_formula_parse(const char* text, exm_formula** out) {
  return guarded([&] {
    need(text, out);
    *out = new exm_formula{exm::ar::parse_formula(text)};
  });
}

exm_status exm_formula_render(const exm_formula* f, char** out) {
  return guarded([&] {
    need(f, out);
    *out = dup(exm::ar::render(*f->f));
  });
}

exm_status exm_formula_eval(const exm_formula* f, const char* const* names, const char* const* values, size_t n,
                            const char* cap, int* result) {
  return guarded([&] {
    need(f, result);
    if (n > 0) need(names, values);
    exm::ar::Env env;
    for (size_t i = 0; i < n; ++i) {
      need(names[i]);
      env[names[i]] = natural_arg(values[i]);
    }
    std::optional<Natural> c;
    if (cap) c = natural_arg(cap);
    *result = exm::ar::eval_formula(*f->f, env, c) ? 1 : 0;
  });
}

void exm_formula_free(exm_formula* f) { delete f; }

}  // extern "C"
