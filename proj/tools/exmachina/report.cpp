// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "report.hpp"

#include <json.hpp>
#include <sstream>

#include "exmachina.h"

namespace exmcli {
namespace {

bool needs_quotes(const std::string& v) {
  if (v.empty()) return true;
  for (char c : v) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '"' || c == '=' || c == '\\') return true;
  }
  return false;
}

std::string quoted(const std::string& v) {
  if (!needs_quotes(v)) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string line(const Record& r) {
  std::string out;
  for (const Field& f : r) {
    if (!out.empty()) out += ' ';
    out += f.key;
    if (f.value) out += "=" + quoted(*f.value);
  }
  return out;
}

nlohmann::ordered_json object(const Record& r) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  for (const Field& f : r) {
    if (f.value) {
      o[f.key] = *f.value;
    } else {
      o[f.key] = true;
    }
  }
  return o;
}

}  // namespace

Record parse_record(const std::string& text) {
  Record r;
  std::istringstream in(text);
  std::string word;
  while (in >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) {
      r.push_back({word, std::nullopt});
    } else {
      r.push_back({word.substr(0, eq), word.substr(eq + 1)});
    }
  }
  return r;
}

std::string Report::render(Format f, int exit_code) const {
  if (f == Format::json) {
    nlohmann::ordered_json doc;
    doc["command"] = command_;
    doc["parameters"] = object(params_);
    doc["records"] = nlohmann::ordered_json::array();
    for (const Record& r : records_) doc["records"].push_back(object(r));
    doc["result"] = object(result_);
    doc["exit"] = exit_code;
    return doc.dump() + "\n";
  }
  Record head{{"command", command_}};
  head.insert(head.end(), params_.begin(), params_.end());
  std::string out = line(head) + "\n";
  for (const Record& r : records_) out += line(r) + "\n";
  Record tail = result_;
  tail.push_back({"exit", std::to_string(exit_code)});
  out += line(tail) + "\n";
  return out;
}

std::string footer(long long wall_ms) {
  return "# wall_ms=" + std::to_string(wall_ms) + " version=" + exm_version() + "\n";
}

}  // namespace exmcli
