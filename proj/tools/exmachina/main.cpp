// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>

#include "commands.hpp"
#include "handles.hpp"

namespace {

using exmcli::Options;
using exmcli::Report;

void emit(const std::string& s) { std::fwrite(s.data(), 1, s.size(), stdout); }

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Proof checker, self-referential searchers and arithmetization toolkit", "exmachina"};
  app.set_version_flag("--version", exm_version());
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string format = "records";
  app.add_option("--signature", o.signature, "Signature file; the empty system when omitted")->check(CLI::ExistingFile);
  app.add_option("--fuel", o.fuel, "Kernel fuel per run (default 100000)")->check(CLI::PositiveNumber);
  app.add_option("--k", o.k, "Proof ranks to enumerate")->capture_default_str();
  app.add_option("--depth", o.depth, "Nesting depth cap for derived rules (default 3)")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"records", "json"}))->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string proof_path;
  std::string sentence_path;
  auto* check = app.add_subcommand("check", "Check a proof of a sentence");
  check->add_option("proof", proof_path, "Proof file")->required();
  check->add_option("sentence", sentence_path, "Sentence file")->required();

  std::string kind;
  std::string out_dir;
  auto* build = app.add_subcommand("build", "Build the Goedel or Rosser searcher bundle");
  build->add_option("kind", kind, "Bundle kind")->required()->check(CLI::IsMember({"godel", "rosser"}));
  build->add_option("--out", out_dir, "Output directory")->required();

  std::string generator;
  std::string target;
  std::uint64_t prove_n = 1;
  std::string proof_out;
  auto* prove = app.add_subcommand("prove", "Generate a proof with one of the decision procedures");
  prove->add_option("generator", generator, "trace, running, cycle or enum")
      ->required()
      ->check(CLI::IsMember({"trace", "running", "cycle", "enum"}));
  prove->add_option("target", target, "Reference text such as (const p), or a sentence file for enum")->required();
  prove->add_option("--n", prove_n, "Step count for running")->capture_default_str();
  prove->add_option("--out", proof_out, "Proof output file");

  auto* search = app.add_subcommand("search", "Search the first k proof ranks for a proof of a sentence");
  search->add_option("sentence", sentence_path, "Sentence file")->required();

  std::string demo_case;
  std::uint64_t demo_n = 100;
  auto* demo = app.add_subcommand("demo", "Run a scripted case analysis");
  demo->add_option("case", demo_case, "Case")
      ->required()
      ->check(CLI::IsMember({"godel-flip", "rosser-flip-both", "subinconsistency", "second", "diagonal"}));
  demo->add_option("--n", demo_n, "Largest step count for subinconsistency")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<std::string> oracle_files;
  auto* diagonal = app.add_subcommand("diagonal", "Refute halting oracles on their diagonal input");
  diagonal->add_option("oracles", oracle_files, "Oracle source files; the shipped corpus when omitted")
      ->check(CLI::ExistingFile);

  exmcli::ArithOptions a;
  std::string corpus = "corpus/counter";
  std::uint64_t t_max = 30;
  auto* arith = app.add_subcommand("arith", "Counter machines as arithmetic formulas");
  arith->require_subcommand(1);
  auto program_flags = [&](CLI::App* c) {
    c->add_option("--input", a.input, "Initial registers, comma separated")->delimiter(',');
    c->add_option("--t", a.t, "Step bound");
    c->add_option("--width", a.width, "Bits per packed digit")->check(CLI::Range(1, 64))->capture_default_str();
    c->add_flag("--step", a.step, "Compile the one-step relation");
  };
  auto* compile = arith->add_subcommand("compile", "Compile a program to a formula");
  compile->add_option("program", a.path, "Counter program")->required();
  compile->add_option("--out", a.out, "Formula output file");
  program_flags(compile);
  auto* eval = arith->add_subcommand("eval", "Evaluate a compiled program or a formula file");
  eval->add_option("program", a.path, "Counter program");
  eval->add_option("--formula", a.formula, "Formula file");
  eval->add_option("--cap", a.cap, "Bound for unbounded quantifiers");
  eval->add_option("--var", a.vars, "Free variable binding NAME=VALUE");
  program_flags(eval);
  auto* diff = arith->add_subcommand("diff", "Compare formula evaluation with simulation over a corpus");
  diff->add_option("corpus", corpus, "Corpus directory with a MANIFEST")->capture_default_str();
  diff->add_option("--t-max", t_max, "Largest step bound")->capture_default_str();
  diff->add_option("--width", a.width, "Bits per packed digit")->check(CLI::Range(1, 64))->capture_default_str();

  std::uint64_t object_fuel = exmcli::kDefaultObjectFuel;
  auto* report = app.add_subcommand("report", "Meta/object checker agreement over the shipped corpus");
  report->add_option("--object-fuel", object_fuel, "Fuel per object-level check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exmcli::kError;
  }
  if (eval->parsed() && a.path.empty() == a.formula.empty()) {
    std::cerr << "error=syntax message=\"arith eval takes a program or --formula, not both\"\n";
    return exmcli::kError;
  }
  o.format = format == "json" ? exmcli::Format::json : exmcli::Format::records;

  std::string name = app.get_subcommands().front()->get_name();
  if (arith->parsed()) name += " " + arith->get_subcommands().front()->get_name();
  Report r(name);
  int code = exmcli::kError;
  try {
    exmcli::check(exm_set_search_threads(o.threads));
    if (check->parsed()) {
      code = exmcli::cmd_check(o, proof_path, sentence_path, r);
    } else if (build->parsed()) {
      code = exmcli::cmd_build(o, kind, out_dir, r);
    } else if (prove->parsed()) {
      code = exmcli::cmd_prove(o, generator, target, prove_n, proof_out, r);
    } else if (search->parsed()) {
      code = exmcli::cmd_search(o, sentence_path, r);
    } else if (demo->parsed()) {
      code = exmcli::cmd_demo(o, demo_case, demo_n, r);
    } else if (diagonal->parsed()) {
      code = exmcli::cmd_diagonal(o, oracle_files, r);
    } else if (compile->parsed()) {
      code = exmcli::cmd_arith_compile(o, a, r);
    } else if (eval->parsed()) {
      code = exmcli::cmd_arith_eval(o, a, r);
    } else if (diff->parsed()) {
      code = exmcli::cmd_arith_diff(o, corpus, t_max, a.width, r);
    } else {
      code = exmcli::cmd_report(o, object_fuel, r);
    }
  } catch (const exmcli::ApiError& e) {
    std::cerr << "error=" << exm_status_name(e.status()) << " message=\"" << e.what() << "\"\n";
    return exmcli::kError;
  } catch (const std::exception& e) {
    std::cerr << "error=internal message=\"" << e.what() << "\"\n";
    return exmcli::kError;
  }
  emit(r.render(o.format, code));
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  emit(exmcli::footer(ms.count()));
  return code;
}
