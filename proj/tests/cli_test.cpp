// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the command-line tool as a subprocess. Output is compared with the
// timing footer removed.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

const std::filesystem::path kGolden = std::filesystem::path(EXM_SOURCE_DIR) / "tests" / "golden" / "cli";
const std::string kSource = EXM_SOURCE_DIR;

struct Run {
  std::string out;
  int exit = -1;
};

Run run(const std::string& args) {
  const std::string cmd = "cd '" + kGolden.string() + "' && '" EXM_CLI "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  std::array<char, 4096> buf{};
  std::string raw;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) raw.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::istringstream in(raw);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# wall_ms=", 0) == 0) continue;
    r.out += line + "\n";
  }
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("check output matches the frozen goldens and exit codes") {
  struct Case {
    const char* golden;
    const char* args;
    int exit;
  };
  for (const Case& c : {Case{"check-valid", "check trace.proof goal.sentence", 0},
                        Case{"check-invalid", "check mutated.proof goal.sentence", 1},
                        Case{"check-missing", "check missing.proof goal.sentence", 2},
                        Case{"check-budget", "--fuel 2 check trace.proof goal.sentence", 3},
                        Case{"search-found", "--k 50000 --signature fplus.signature search fplus.sentence", 0}}) {
    CAPTURE(c.golden);
    const Run r = run(c.args);
    CHECK(r.exit == c.exit);
    CHECK(r.out == slurp(kGolden / (std::string(c.golden) + ".out")));
  }
}

TEST_CASE("argument errors exit with the usage code") {
  CHECK(run("check trace.proof").exit == 2);
  CHECK(run("demo no-such-case").exit == 2);
  CHECK(run("--format xml check trace.proof goal.sentence").exit == 2);
}

TEST_CASE("the footer is the last line of every report") {
  const std::string cmd = "cd '" + kGolden.string() + "' && '" EXM_CLI "' check trace.proof goal.sentence";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::string raw;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) raw.append(buf.data(), n);
  pclose(pipe);
  const std::size_t last = raw.rfind('\n', raw.size() - 2);
  REQUIRE(last != std::string::npos);
  CHECK(raw.substr(last + 1).rfind("# wall_ms=", 0) == 0);
  CHECK(raw.find(" version=", last) != std::string::npos);
}

TEST_CASE("every command is deterministic and independent of the thread count") {
  const std::string corpus = "'" + kSource + "/corpus/counter/";
  const std::vector<std::string> matrix = {
      "check trace.proof goal.sentence",
      "--format json check mutated.proof goal.sentence",
      "--k 50000 --signature fplus.signature search fplus.sentence",
      "--k 3000 search goal.sentence",
      "prove trace '(lit (succ (succ 0)))'",
      "prove running '(lit (call (lambda (x) (call x x)) (lambda (x) (call x x))))' --n 7",
      "prove cycle '(lit (call (lambda (x) (call x x)) (lambda (x) (call x x))))'",
      "--k 2000 prove enum goal.sentence",
      "demo godel-flip",
      "demo rosser-flip-both",
      "demo subinconsistency --n 20",
      "demo second",
      "demo diagonal",
      "diagonal",
      "--format json diagonal",
      "arith eval " + corpus + "halt.cm' --t 1",
      "arith eval " + corpus + "loop.cm' --t 30",
      "arith compile " + corpus + "inc.cm' --input 1 --t 3",
  };
  for (const std::string& args : matrix) {
    CAPTURE(args);
    const Run first = run(args);
    CHECK(first.exit != 2);
    const Run again = run(args);
    CHECK(again.exit == first.exit);
    CHECK(again.out == first.out);
    for (const char* threads : {"2", "4"}) {
      const Run par = run(std::string("--threads ") + threads + " " + args);
      CHECK(par.exit == first.exit);
      CHECK(par.out == first.out);
    }
  }
}
