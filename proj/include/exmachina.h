/* Copyright 2026 The exmachina Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef EXMACHINA_H_
#define EXMACHINA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EXM_API __declspec(dllexport)
#else
#define EXM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one; on failure the message of
 * the last error on the calling thread is available from exm_last_error. */
typedef enum exm_status {
  EXM_OK = 0,
  EXM_E_SYNTAX,
  EXM_E_IO,
  EXM_E_NAME_CLASH,
  EXM_E_UNSUPPORTED_NEGATION,
  EXM_E_NOT_OBSERVED_HALTING,
  EXM_E_ALREADY_HALTED,
  EXM_E_NO_CYCLE_FOUND,
  EXM_E_FOUND_PROOF,
  EXM_E_BUDGET_EXCEEDED,
  EXM_E_NOT_A_PROOF_OF_TARGET,
  EXM_E_FOUND_EARLIER_OPPOSITE,
  EXM_E_ORACLE_NOT_TOTAL,
  EXM_E_DECODE,
  EXM_E_WIDTH_OVERFLOW,
  EXM_E_UNBOUNDED_QUANTIFIER,
  EXM_E_OUT_OF_FUEL,
  EXM_E_INVALID_ARGUMENT,
  EXM_E_DEFECT,
  EXM_E_NULL_ARGUMENT,
  EXM_E_INTERNAL
} exm_status;

typedef struct exm_sentence exm_sentence;
typedef struct exm_proof exm_proof;
typedef struct exm_signature exm_signature;
typedef struct exm_bundle exm_bundle;
typedef struct exm_counter_program exm_counter_program;
typedef struct exm_formula exm_formula;

EXM_API const char* exm_version(void);
EXM_API const char* exm_status_name(exm_status s);
/* Message of the last failed call on this thread; empty after a success. */
EXM_API const char* exm_last_error(void);
/* Detail payload of the last error, such as the rank of a found proof. */
EXM_API const char* exm_last_error_detail(void);
/* Releases strings returned through char** out-parameters. */
EXM_API void exm_string_free(char* s);

/* Worker threads for proof search. Results never depend on it. */
EXM_API exm_status exm_set_search_threads(unsigned threads);

/* ---- Sentences ---------------------------------------------------------- */

EXM_API exm_status exm_sentence_parse(const char* text, exm_sentence** out);
EXM_API exm_status exm_sentence_render(const exm_sentence* s, char** out);
EXM_API exm_status exm_sentence_negate(const exm_sentence* s, exm_sentence** out);
EXM_API int exm_sentence_equal(const exm_sentence* a, const exm_sentence* b);
EXM_API void exm_sentence_free(exm_sentence* s);

/* ---- Proofs ------------------------------------------------------------- */

EXM_API exm_status exm_proof_parse(const char* text, exm_proof** out);
EXM_API exm_status exm_proof_render(const exm_proof* p, char** out);
EXM_API size_t exm_proof_line_count(const exm_proof* p);
/* Claim of the last line. */
EXM_API exm_status exm_proof_conclusion(const exm_proof* p, exm_sentence** out);
/* Name of the rule justifying line index, such as ax-inj or r-mp. */
EXM_API exm_status exm_proof_rule(const exm_proof* p, size_t index, char** out);
/* Position in the canonical enumeration, as a decimal string. */
EXM_API exm_status exm_proof_rank(const exm_proof* p, char** out);
EXM_API exm_status exm_proof_unrank(const char* rank, exm_proof** out);
EXM_API void exm_proof_free(exm_proof* p);

/* ---- Signatures --------------------------------------------------------- */

/* No definitions, no axioms, default caps. */
EXM_API exm_status exm_signature_new(exm_signature** out);
EXM_API exm_status exm_signature_parse(const char* text, exm_signature** out);
EXM_API exm_status exm_signature_render(const exm_signature* s, char** out);
/* enum_cap is a decimal string. */
EXM_API exm_status exm_signature_with_caps(const exm_signature* s, const char* enum_cap, uint64_t depth_cap,
                                           uint64_t fuel_cap, exm_signature** out);
EXM_API exm_status exm_signature_caps(const exm_signature* s, char** enum_cap, uint64_t* depth_cap,
                                      uint64_t* fuel_cap);
EXM_API exm_status exm_signature_add_axiom(const exm_signature* s, const exm_sentence* axiom,
                                           exm_signature** out);
EXM_API void exm_signature_free(exm_signature* s);

/* ---- Checking and search ------------------------------------------------ */

typedef enum exm_verdict_kind { EXM_VALID = 0, EXM_INVALID = 1, EXM_BUDGET = 2 } exm_verdict_kind;

typedef struct exm_verdict {
  exm_verdict_kind kind;
  /* Index of the failing line; 0 when valid. */
  uint64_t line;
  char reason[48];
} exm_verdict;

EXM_API exm_status exm_check(const exm_proof* p, const exm_sentence* goal, const exm_signature* sig,
                             exm_verdict* out);
/* Looks for the least rank below k proving goal. On success *found is 1 and
 * *rank holds the decimal rank, else *found is 0 and *rank is NULL. */
EXM_API exm_status exm_search(const exm_sentence* goal, const exm_signature* sig, const char* k, int* found,
                              char** rank);

/* ---- Proof generators --------------------------------------------------- */
/* ref is the text of a reference: (const NAME) or (lit EXPR). */

EXM_API exm_status exm_prove_halted_by_trace(const char* ref, const exm_signature* sig, exm_proof** out);
EXM_API exm_status exm_prove_not_halted_within(const char* ref, const char* n, const exm_signature* sig,
                                               exm_proof** out);
EXM_API exm_status exm_prove_not_halts_by_cycle(const char* ref, const exm_signature* sig, exm_proof** out);
EXM_API exm_status exm_prove_no_proof_before(const exm_sentence* s, const char* k, const exm_signature* sig,
                                             exm_proof** out);

/* ---- Self-referential searchers ----------------------------------------- */

typedef enum exm_bundle_kind { EXM_GODEL = 0, EXM_ROSSER = 1 } exm_bundle_kind;

/* Builds P (EXM_GODEL) or B (EXM_ROSSER) over base and installs its
 * constant. */
EXM_API exm_status exm_bundle_build(exm_bundle_kind kind, const exm_signature* base, exm_bundle** out);
EXM_API exm_status exm_bundle_signature(const exm_bundle* b, exm_signature** out);
EXM_API exm_status exm_bundle_sentence(const exm_bundle* b, exm_sentence** out);
EXM_API exm_status exm_bundle_constant(const exm_bundle* b, char** out);
EXM_API exm_status exm_bundle_source(const exm_bundle* b, char** out);
/* *ok is 1 when the installed definition renders as the self-application of
 * the source and the embedded target sentences decode to the expected
 * sentences. */
EXM_API exm_status exm_bundle_verify(const exm_bundle* b, int* ok);
/* Writes p.kl or b.kl, signature and sentence into dir. */
EXM_API exm_status exm_bundle_export(const exm_bundle* b, const char* dir);
EXM_API exm_status exm_godel_to_neg(const exm_proof* q, const exm_bundle* b, exm_proof** out);
EXM_API exm_status exm_rosser_flip(const exm_proof* q, const exm_bundle* b, exm_proof** out);
EXM_API exm_status exm_second_incompleteness_sentence(const exm_bundle* b, exm_sentence** out);
EXM_API void exm_bundle_free(exm_bundle* b);

/* ---- Diagonal falsifier ------------------------------------------------- */

EXM_API size_t exm_oracle_count(void);
EXM_API exm_status exm_oracle_label(size_t i, char** out);
EXM_API exm_status exm_oracle_source(size_t i, char** out);

typedef enum exm_observation { EXM_OBSERVED_HALT = 0, EXM_OBSERVED_CYCLE = 1, EXM_OBSERVED_TIMEOUT = 2 } exm_observation;
typedef enum exm_contradiction { EXM_CONTRADICTION_YES = 0, EXM_CONTRADICTION_NO = 1, EXM_INCONCLUSIVE = 2 } exm_contradiction;

typedef struct exm_falsification {
  int accepts;
  exm_observation observed;
  exm_contradiction contradiction;
  uint64_t steps;
} exm_falsification;

/* source is the text of a closed kernel function. *line receives the
 * report record; it may be NULL. */
EXM_API exm_status exm_falsify_oracle(const char* source, const char* label, uint64_t fuel,
                                      exm_falsification* out, char** line);

/* ---- Object-level checker ----------------------------------------------- */

typedef enum exm_object_part { EXM_OBJECT_CHECKER = 0, EXM_OBJECT_UNRANKER = 1 } exm_object_part;

EXM_API exm_status exm_object_source(exm_object_part part, char** out);
/* Runs the object checker with the given fuel. *timed_out is 1 when the
 * fuel ran out, in which case *out is left unchanged. */
EXM_API exm_status exm_object_check(const exm_proof* p, const exm_sentence* goal, const exm_signature* sig,
                                    uint64_t fuel, int* timed_out, exm_verdict* out, uint64_t* steps);

typedef struct exm_agreement_summary {
  size_t items;
  size_t decided;
  size_t agreed;
  size_t timeouts;
} exm_agreement_summary;

/* Runs both checkers over the shipped 200-item corpus. */
EXM_API exm_status exm_agreement_run(uint64_t fuel, unsigned threads, exm_agreement_summary* out,
                                     char** report);

/* ---- Arithmetization ---------------------------------------------------- */

EXM_API exm_status exm_counter_parse(const char* text, exm_counter_program** out);
EXM_API exm_status exm_counter_render(const exm_counter_program* p, char** out);
EXM_API size_t exm_counter_registers(const exm_counter_program* p);
EXM_API size_t exm_counter_size(const exm_counter_program* p);
EXM_API void exm_counter_free(exm_counter_program* p);

typedef struct exm_counter_result {
  int halted;
  /* Configurations visited, the final halted one included. */
  uint64_t steps;
  uint64_t pc;
} exm_counter_result;

EXM_API exm_status exm_counter_run(const exm_counter_program* p, const uint64_t* input, size_t n, uint64_t fuel,
                                   exm_counter_result* out);
/* Packed configuration as a decimal string. */
EXM_API exm_status exm_encode_config(uint64_t pc, const uint64_t* regs, size_t n, unsigned width, char** out);

EXM_API exm_status exm_compile_step(const exm_counter_program* p, unsigned width, exm_formula** out);
EXM_API exm_status exm_compile_halts_within(const exm_counter_program* p, const uint64_t* input, size_t n,
                                            uint64_t t, unsigned width, exm_formula** out);
EXM_API exm_status exm_compile_halts(const exm_counter_program* p, const uint64_t* input, size_t n,
                                     unsigned width, exm_formula** out);
EXM_API exm_status exm_formula_parse(const char* text, exm_formula** out);
EXM_API exm_status exm_formula_render(const exm_formula* f, char** out);
/* names and values give the free variables, values as decimal strings.
 * cap may be NULL; it bounds unbounded quantifiers. */
EXM_API exm_status exm_formula_eval(const exm_formula* f, const char* const* names, const char* const* values,
                                   size_t n, const char* cap, int* result);
EXM_API void exm_formula_free(exm_formula* f);

#ifdef __cplusplus
}
#endif

#endif /* EXMACHINA_H_ */
