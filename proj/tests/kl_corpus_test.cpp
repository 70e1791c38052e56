// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "kernel/expr.hpp"
#include "kernel/machine.hpp"

using namespace exm;
using namespace exm::kl;

namespace {

const std::filesystem::path kDir = std::filesystem::path(EXM_SOURCE_DIR) / "corpus" / "kl";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// The program text without its comment header.
std::string body(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == ';') continue;
    out += line;
  }
  return out;
}

struct Entry {
  std::string file;
  std::string outcome;
  std::string value;
};

std::vector<Entry> manifest() {
  std::istringstream in(slurp(kDir / "MANIFEST"));
  std::vector<Entry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    Entry e;
    words >> e.file >> e.outcome;
    std::getline(words >> std::ws, e.value);
    out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("the corpus lists fifty programs, one per file") {
  const auto entries = manifest();
  CHECK(entries.size() == 50);
  std::size_t files = 0;
  for (const auto& f : std::filesystem::directory_iterator(kDir)) files += f.path().extension() == ".kl";
  CHECK(files == entries.size());
}

TEST_CASE("every corpus program is stored in canonical form") {
  for (const Entry& e : manifest()) {
    CAPTURE(e.file);
    const std::string text = body(slurp(kDir / e.file));
    const ExprPtr parsed = parse_expr(slurp(kDir / e.file));
    CHECK(render(*parsed) == text);
    CHECK(expr_equal(*parse_expr(render(*parsed)), *parsed));
  }
}

TEST_CASE("every corpus program has its recorded outcome") {
  for (const Entry& e : manifest()) {
    CAPTURE(e.file);
    const Outcome o = run(parse_expr(slurp(kDir / e.file)), DefsTable(), 100000);
    if (e.outcome == "value") {
      REQUIRE(o.kind == OutcomeKind::value);
      CHECK(render(*o.result) == e.value);
    } else if (e.outcome == "diverges") {
      CHECK(o.kind == OutcomeKind::out_of_fuel);
    } else {
      REQUIRE(e.outcome == "fault");
      CHECK(o.kind == OutcomeKind::fault);
    }
  }
}
