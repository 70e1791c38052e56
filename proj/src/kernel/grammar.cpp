// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernel/grammar.hpp"

#include <limits>
#include <mutex>

#include "core/error.hpp"

namespace exm::kl {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
// Naturals below this bound take the 64-bit path; saturated table entries
// are then still larger than any index being compared against them.
const Natural kFastLimit = Natural(1) << 63;

std::uint64_t sat64(const Natural& n) { return n > Natural(kSaturated - 1) ? kSaturated : to_u64(n); }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a == kSaturated || b == kSaturated) return kSaturated;
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p >= kSaturated ? kSaturated : static_cast<std::uint64_t>(p);
}

}  // namespace

std::size_t raw_size(const RawTree& t) {
  std::size_t n = 1;
  for (const auto& k : t.kids) n += raw_size(k);
  return n;
}

int Grammar::add_nonterminal(std::string name) {
  nts_.push_back(Nonterminal{std::move(name), {}, {}});
  counts_.emplace_back(1, Natural(0));
  counts64_.emplace_back(1, 0);
  return static_cast<int>(nts_.size() - 1);
}

int Grammar::add_production(int nt, std::string name, std::vector<int> children) {
  if (computed_ != 0) throw Error(ErrorCode::defect, "grammar extended after use");
  nts_[nt].prods.push_back(Production{std::move(name), children});
  ProdTable table;
  table.nt = nt;
  table.children = std::move(children);
  table.ways.assign(table.children.size() + 1, {});
  table.ways64.assign(table.children.size() + 1, {});
  tables_.push_back(std::move(table));
  nts_[nt].table_ids.push_back(static_cast<int>(tables_.size() - 1));
  return static_cast<int>(nts_[nt].prods.size() - 1);
}

void Grammar::ensure(std::size_t size) const {
  {
    std::shared_lock<std::shared_mutex> lock(mu_);
    if (computed_ >= size) return;
  }
  std::unique_lock<std::shared_mutex> lock(mu_);
  extend_locked(size);
}

void Grammar::extend_locked(std::size_t size) const {
  while (computed_ < size) {
    const std::size_t s = computed_ + 1;
    const std::size_t r = s - 1;
    for (ProdTable& t : tables_) {
      const std::size_t m = t.children.size();
      // ways[j] holds entries for r' < r; append the entry for r.
      t.ways[m].push_back(r == 0 ? 1 : 0);
      t.ways64[m].push_back(r == 0 ? 1 : 0);
      for (std::size_t j = m; j-- > 0;) {
        Natural sum = 0;
        for (std::size_t a = 1; a <= r; ++a) {
          const Natural& c = counts_[t.children[j]][a];
          if (c == 0) continue;
          const Natural& w = t.ways[j + 1][r - a];
          if (w == 0) continue;
          sum += c * w;
        }
        t.ways64[j].push_back(sat64(sum));
        t.ways[j].push_back(std::move(sum));
      }
    }
    for (std::size_t nt = 0; nt < nts_.size(); ++nt) {
      Natural total = 0;
      for (int id : nts_[nt].table_ids) total += tables_[id].ways[0][r];
      counts64_[nt].push_back(sat64(total));
      counts_[nt].push_back(std::move(total));
    }
    computed_ = s;
  }
}

Natural Grammar::count(int nt, std::size_t size) const {
  ensure(size);
  std::shared_lock<std::shared_mutex> lock(mu_);
  return counts_[nt][size];
}

std::size_t Grammar::locate_size(int nt, Natural& n) const {
  for (std::size_t s = 1;; ++s) {
    ensure(s);
    std::shared_lock<std::shared_mutex> lock(mu_);
    const Natural& c = counts_[nt][s];
    if (n < c) return s;
    n -= c;
    if (s > 100000) throw Error(ErrorCode::defect, "grammar has no trees of growing size");
  }
}

RawTree Grammar::unrank(int nt, const Natural& index) const {
  Natural n = index;
  const std::size_t s = locate_size(nt, n);
  std::shared_lock<std::shared_mutex> lock(mu_);
  if (n < kFastLimit) return build64(nt, s, to_u64(n));
  return build(nt, s, std::move(n));
}

RawTree Grammar::build(int nt, std::size_t size, Natural n) const {
  const std::size_t r0 = size - 1;
  const auto& ids = nts_[nt].table_ids;
  for (std::size_t p = 0; p < ids.size(); ++p) {
    const ProdTable& t = tables_[ids[p]];
    const Natural& total = t.ways[0][r0];
    if (n >= total) {
      n -= total;
      continue;
    }
    RawTree out{nt, static_cast<int>(p), {}};
    std::size_t r = r0;
    for (std::size_t j = 0; j < t.children.size(); ++j) {
      for (std::size_t a = 1; a <= r; ++a) {
        const Natural& w = t.ways[j + 1][r - a];
        const Natural block = counts_[t.children[j]][a] * w;
        if (n >= block) {
          n -= block;
          continue;
        }
        Natural child = n / w;
        n = n % w;
        out.kids.push_back(build(t.children[j], a, std::move(child)));
        r -= a;
        break;
      }
    }
    return out;
  }
  throw Error(ErrorCode::defect, "unrank index outside size class");
}

RawTree Grammar::build64(int nt, std::size_t size, std::uint64_t n) const {
  const std::size_t r0 = size - 1;
  const auto& ids = nts_[nt].table_ids;
  for (std::size_t p = 0; p < ids.size(); ++p) {
    const ProdTable& t = tables_[ids[p]];
    const std::uint64_t total = t.ways64[0][r0];
    if (n >= total) {
      n -= total;
      continue;
    }
    RawTree out{nt, static_cast<int>(p), {}};
    std::size_t r = r0;
    for (std::size_t j = 0; j < t.children.size(); ++j) {
      for (std::size_t a = 1; a <= r; ++a) {
        const std::uint64_t w = t.ways64[j + 1][r - a];
        const std::uint64_t block = sat_mul(counts64_[t.children[j]][a], w);
        if (n >= block) {
          n -= block;
          continue;
        }
        const std::uint64_t child = n / w;
        n = n % w;
        out.kids.push_back(build64(t.children[j], a, child));
        r -= a;
        break;
      }
    }
    return out;
  }
  throw Error(ErrorCode::defect, "unrank index outside size class");
}

Natural Grammar::rank(const RawTree& t) const {
  const std::size_t s = raw_size(t);
  ensure(s);
  std::shared_lock<std::shared_mutex> lock(mu_);
  Natural base = 0;
  for (std::size_t k = 1; k < s; ++k) base += counts_[t.nt][k];
  return base + rank_in_size(t, s);
}

Natural Grammar::rank_in_size(const RawTree& t, std::size_t size) const {
  const std::size_t r0 = size - 1;
  const auto& ids = nts_[t.nt].table_ids;
  Natural out = 0;
  for (int p = 0; p < t.prod; ++p) out += tables_[ids[p]].ways[0][r0];
  const ProdTable& table = tables_[ids[t.prod]];
  std::size_t r = r0;
  for (std::size_t j = 0; j < table.children.size(); ++j) {
    const std::size_t a = raw_size(t.kids[j]);
    for (std::size_t b = 1; b < a; ++b) out += counts_[table.children[j]][b] * table.ways[j + 1][r - b];
    out += rank_in_size(t.kids[j], a) * table.ways[j + 1][r - a];
    r -= a;
  }
  return out;
}

}  // namespace exm::kl
