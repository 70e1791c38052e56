// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "objkl/object.hpp"

namespace exm::obj {

// Small definitions shared by the corpora: two, pair, spin (a loop) and
// countdown (halts after a few dozen steps).
fm::Signature corpus_base_signature();

// The shipped agreement corpus of exactly 200 items: valid proofs from every
// generator and every mutation class of each, proofs from the perturbed
// systems (injected axioms, flips, modus ponens) and budget edge cases.
std::vector<AgreementItem> standard_agreement_corpus();

}  // namespace exm::obj
