// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exmcli {

enum class Format { records, json };

// One key of a record. A field without a value renders as a bare word.
struct Field {
  std::string key;
  std::optional<std::string> value;
};
using Record = std::vector<Field>;

// Parses "k=v k=v" lines produced by the library into a record.
Record parse_record(const std::string& line);

// Output of one invocation. Everything rendered here is a function of the
// inputs; timing lives in the footer only.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void param(std::string key, std::string value) { params_.push_back({std::move(key), std::move(value)}); }
  void record(Record r) { records_.push_back(std::move(r)); }
  void result(std::string key, std::string value) { result_.push_back({std::move(key), std::move(value)}); }

  std::string render(Format f, int exit_code) const;

 private:
  std::string command_;
  Record params_;
  std::vector<Record> records_;
  Record result_;
};

std::string footer(long long wall_ms);

}  // namespace exmcli
