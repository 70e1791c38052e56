// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "formal/cache.hpp"
#include "formal/checker.hpp"
#include "selfref/selfref.hpp"

namespace exm::fm {

ValuePtr expected_searcher_def(SearcherKind kind, Symbol name, const Signature& sig) {
  const std::string key = std::string(kind == SearcherKind::single ? "single " : "twin ") + name->name;
  SignatureCache& cache = sig.cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.searcher_defs.find(key);
    if (it != cache.searcher_defs.end()) return it->second;
  }
  ValuePtr p = sr::searcher_source(kind, name, sig.defs().after(name), sig.axioms(), sig.caps());
  ValuePtr def = kl::list({kl::make_sym("call"), p, kl::list({kl::make_sym("quote"), p})});
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.searcher_defs.emplace(key, def);
  return def;
}

}  // namespace exm::fm
