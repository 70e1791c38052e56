// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace exmcli {

enum Exit : int { kOk = 0, kNegative = 1, kError = 2, kExhausted = 3 };

inline constexpr std::uint64_t kDefaultFuel = 100000;
inline constexpr std::uint64_t kDefaultK = 10000;
inline constexpr std::uint64_t kDefaultDepth = 3;
inline constexpr std::uint64_t kDefaultObjectFuel = 100000000;

// Flags shared by every subcommand.
struct Options {
  std::string signature;
  std::optional<std::uint64_t> fuel;
  std::optional<std::uint64_t> depth;
  std::uint64_t k = kDefaultK;
  Format format = Format::records;
  unsigned threads = 1;
};

struct ArithOptions {
  std::string path;
  std::string formula;
  std::vector<std::uint64_t> input;
  std::optional<std::uint64_t> t;
  std::optional<std::string> cap;
  std::vector<std::string> vars;
  unsigned width = 16;
  bool step = false;
  std::string out;
};

int cmd_check(const Options& o, const std::string& proof, const std::string& sentence, Report& r);
int cmd_build(const Options& o, const std::string& which, const std::string& out, Report& r);
int cmd_prove(const Options& o, const std::string& generator, const std::string& target, std::uint64_t n,
              const std::string& out, Report& r);
int cmd_search(const Options& o, const std::string& sentence, Report& r);
int cmd_demo(const Options& o, const std::string& which, std::uint64_t n, Report& r);
int cmd_diagonal(const Options& o, const std::vector<std::string>& oracles, Report& r);
int cmd_arith_compile(const Options& o, const ArithOptions& a, Report& r);
int cmd_arith_eval(const Options& o, const ArithOptions& a, Report& r);
int cmd_arith_diff(const Options& o, const std::string& corpus, std::uint64_t t_max, unsigned width, Report& r);
int cmd_report(const Options& o, std::uint64_t object_fuel, Report& r);

}  // namespace exmcli
