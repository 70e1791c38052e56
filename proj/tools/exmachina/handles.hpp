// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "exmachina.h"

namespace exmcli {

// A failed library call. Carries the status so the caller can pick an exit
// code.
class ApiError : public std::runtime_error {
 public:
  ApiError(exm_status status, const std::string& message, std::string detail)
      : std::runtime_error(message), status_(status), detail_(std::move(detail)) {}
  exm_status status() const noexcept { return status_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  exm_status status_;
  std::string detail_;
};

inline void check(exm_status s) {
  if (s != EXM_OK) throw ApiError(s, exm_last_error(), exm_last_error_detail());
}

struct Deleter {
  void operator()(exm_sentence* p) const { exm_sentence_free(p); }
  void operator()(exm_proof* p) const { exm_proof_free(p); }
  void operator()(exm_signature* p) const { exm_signature_free(p); }
  void operator()(exm_bundle* p) const { exm_bundle_free(p); }
  void operator()(exm_counter_program* p) const { exm_counter_free(p); }
  void operator()(exm_formula* p) const { exm_formula_free(p); }
};

using Sentence = std::unique_ptr<exm_sentence, Deleter>;
using Proof = std::unique_ptr<exm_proof, Deleter>;
using Signature = std::unique_ptr<exm_signature, Deleter>;
using Bundle = std::unique_ptr<exm_bundle, Deleter>;
using Program = std::unique_ptr<exm_counter_program, Deleter>;
using Formula = std::unique_ptr<exm_formula, Deleter>;

// Runs call(&raw) and takes ownership of the handle it produces.
template <class T, class F>
std::unique_ptr<T, Deleter> make(F&& call) {
  T* raw = nullptr;
  check(call(&raw));
  return std::unique_ptr<T, Deleter>(raw);
}

// Runs call(&raw) and copies out the library-owned string.
template <class F>
std::string text(F&& call) {
  char* raw = nullptr;
  check(call(&raw));
  std::string out = raw ? raw : "";
  exm_string_free(raw);
  return out;
}

}  // namespace exmcli
