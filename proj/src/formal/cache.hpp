// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "core/natural.hpp"
#include "kernel/value.hpp"

namespace exm::fm {

struct Proof;

// Progress of the rank scan for one (goal, depth) pair: every rank below
// `scanned` has been checked; `found` is the least valid rank if one was seen.
struct ScanMemo {
  Natural scanned = 0;
  std::optional<Natural> found;
};

// Behaviour of one referenced expression under the signature's fuel cap.
struct RunMemo {
  enum Kind { halts, faults, runs } kind = runs;
  std::uint64_t steps = 0;
  // First repeated state and period, when a repeat occurs within the cap.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> cycle;
  bool cycle_known = false;
  bool run_known = false;
};

// Valid proofs of least size for one (goal, depth) pair, in rank order, as
// far as sizes up to `searched` have been examined.
struct MinimalMemo {
  std::size_t searched = 0;
  std::size_t size = 0;
  std::vector<std::shared_ptr<const Proof>> proofs;
};

struct SignatureCache {
  std::mutex mu;
  std::map<std::string, ScanMemo> scans;
  std::map<std::string, kl::ValuePtr> searcher_defs;
  std::map<std::string, RunMemo> runs;
  std::map<std::string, MinimalMemo> minimal;
};

}  // namespace exm::fm
