// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <shared_mutex>
#include <string>
#include <vector>

#include "core/natural.hpp"

namespace exm::kl {

// A node of an abstract syntax tree over a Grammar: which nonterminal, which
// of its productions, and one subtree per child of that production.
struct RawTree {
  int nt = 0;
  int prod = 0;
  std::vector<RawTree> kids;
};

std::size_t raw_size(const RawTree& t);

// Ranked bijection between naturals and the finite trees of a nonterminal.
// Trees are ordered by node count; within one size by production index, then
// by the sizes and ranks of the children, leftmost child most significant.
// Count tables grow on demand and are shared between threads.
class Grammar {
 public:
  struct Production {
    std::string name;
    std::vector<int> children;
  };

  int add_nonterminal(std::string name);
  int add_production(int nt, std::string name, std::vector<int> children);

  std::size_t nonterminal_count() const noexcept { return nts_.size(); }
  const std::string& nonterminal_name(int nt) const { return nts_[nt].name; }
  const std::vector<Production>& productions(int nt) const { return nts_[nt].prods; }

  Natural count(int nt, std::size_t size) const;
  Natural rank(const RawTree& t) const;
  RawTree unrank(int nt, const Natural& n) const;

 private:
  struct ProdTable {
    int nt;
    std::vector<int> children;
    // ways[j][r]: fillings of children j.. with total size r.
    std::vector<std::vector<Natural>> ways;
    std::vector<std::vector<std::uint64_t>> ways64;
  };
  struct Nonterminal {
    std::string name;
    std::vector<Production> prods;
    std::vector<int> table_ids;
  };

  void ensure(std::size_t size) const;
  void extend_locked(std::size_t size) const;
  std::size_t locate_size(int nt, Natural& n) const;
  RawTree build(int nt, std::size_t size, Natural n) const;
  RawTree build64(int nt, std::size_t size, std::uint64_t n) const;
  Natural rank_in_size(const RawTree& t, std::size_t size) const;

  std::vector<Nonterminal> nts_;
  mutable std::shared_mutex mu_;
  mutable std::vector<ProdTable> tables_;
  // counts_[nt][s] for s in [0, computed_]; size 0 is always empty.
  mutable std::vector<std::vector<Natural>> counts_;
  mutable std::vector<std::vector<std::uint64_t>> counts64_;
  mutable std::size_t computed_ = 0;
};

}  // namespace exm::kl
