// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the eleven acceptance criteria and prints one PASS/FAIL line for
// each. Exits non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "arith/compile.hpp"
#include "core/error.hpp"
#include "formal/checker.hpp"
#include "formal/generators.hpp"
#include "formal/mutations.hpp"
#include "kernel/expr.hpp"
#include "kernel/machine.hpp"
#include "objkl/corpus.hpp"
#include "objkl/object.hpp"
#include "selfref/selfref.hpp"

using namespace exm;
using namespace exm::fm;
using exm::sr::SearcherBundle;

namespace {

const std::filesystem::path kSource = EXM_SOURCE_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ProofPtr axiom(const SentPtr& s) {
  auto p = std::make_shared<Proof>();
  p->lines.push_back(Line{s, Rule{}});
  return p;
}

bool valid(const Proof& p, const Sentence& goal, const Signature& sig) { return check_proof(p, goal, sig).ok(); }

// ---------------------------------------------------------------------------

Outcome fixed_points() {
  std::size_t ok = 0;
  for (const SearcherBundle& b : {sr::build_searcher_P(Signature()), sr::build_searcher_B(Signature())}) {
    const std::string src = kl::render(*b.source);
    const kl::Expr* def = b.sig.defs().find(b.const_name);
    const bool templ = def != nullptr && kl::render(*def) == "(call " + src + " (quote " + src + "))";
    const auto targets = sr::embedded_targets(b);
    const bool target = !targets.empty() && sentence_equal(*targets[0], *b.sentence);
    ok += templ && target && sr::verify_bundle(b);
  }
  return {ok == 2, "bundles=" + std::to_string(ok) + "/2"};
}

struct Generated {
  ProofPtr proof;
  SentPtr goal;
};

std::vector<Generated> generator_corpus(const Signature& sig) {
  std::vector<Generated> out;
  std::istringstream manifest(slurp(kSource / "corpus" / "kl" / "MANIFEST"));
  std::string line;
  std::vector<kl::ExprPtr> diverging;
  while (std::getline(manifest, line)) {
    std::istringstream words(line);
    std::string file;
    std::string outcome;
    if (!(words >> file >> outcome) || file[0] == '#') continue;
    const kl::ExprPtr e = kl::parse_expr(slurp(kSource / "corpus" / "kl" / file));
    const Ref r = Ref::literal(e);
    if (outcome == "value") {
      out.push_back({prove_halted_by_trace(r, sig), Sentence::halts(r)});
    } else if (outcome == "diverges") {
      diverging.push_back(e);
    }
  }
  for (const char* v : {"x", "y", "z", "u", "w", "self", "f", "g", "h", "k"}) {
    const std::string half = std::string("(lambda (") + v + ") (call " + v + " " + v + "))";
    diverging.push_back(kl::parse_expr("(call " + half + " " + half + ")"));
  }
  for (const kl::ExprPtr& e : diverging) {
    const Ref r = Ref::literal(e);
    for (unsigned n : {1u, 2u, 3u, 5u, 8u, 13u, 21u, 34u, 55u, 89u, 144u}) {
      out.push_back({prove_not_halted_within(r, n, sig), Sentence::not_halted_within(r, n)});
    }
    try {
      out.push_back({prove_not_halts_by_cycle(r, sig), Sentence::not_halts(r)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_cycle_found) throw;
    }
  }
  for (const char* s : {"(halts (lit (succ 0)))", "(not-halts (lit ()))", "(con-f)", "(halted-within (lit 0) 1)",
                        "(implies (con-f) (con-f))"}) {
    const SentPtr goal = parse_sentence(s);
    for (unsigned k : {5u, 20u, 60u}) {
      try {
        out.push_back({prove_no_proof_before(goal, k, sig), Sentence::no_proof_before(goal, k)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::found_proof) throw;
      }
    }
  }
  return out;
}

Outcome checker_soundness() {
  const Signature sig;
  const std::vector<Generated> corpus = generator_corpus(sig);
  std::size_t invalid = 0;
  std::size_t escaped = 0;
  std::size_t thin = 0;
  std::size_t mutants_checked = 0;
  for (const Generated& g : corpus) {
    invalid += !valid(*g.proof, *g.goal, sig);
    std::vector<std::string> classes;
    for (const Mutant& m : mutants(*g.proof)) {
      ++mutants_checked;
      escaped += valid(*m.proof, *g.goal, sig);
      if (std::find(classes.begin(), classes.end(), m.mutation) == classes.end()) classes.push_back(m.mutation);
    }
    thin += classes.size() < 4;
  }
  return {corpus.size() >= 200 && invalid == 0 && escaped == 0 && thin == 0,
          "proofs=" + std::to_string(corpus.size()) + " invalid=" + std::to_string(invalid) +
              " mutants=" + std::to_string(mutants_checked) + " accepted_mutants=" + std::to_string(escaped) +
              " under_four_classes=" + std::to_string(thin)};
}

Outcome bounded_search() {
  std::size_t exhausted = 0;
  for (const SearcherBundle& b : {sr::build_searcher_P(Signature()), sr::build_searcher_B(Signature())}) {
    for (const SentPtr& s : {b.sentence, negate(*b.sentence)}) {
      exhausted += !first_proof(*s, 10000, b.sig, b.sig.caps().depth_cap).has_value();
    }
  }
  return {exhausted == 4, "k=10000 exhausted=" + std::to_string(exhausted) + "/4"};
}

Outcome subinconsistency() {
  const SearcherBundle plain = sr::build_searcher_P(Signature());
  const SearcherBundle minus = sr::build_searcher_P(Signature().with_axioms({negate(*plain.sentence)}));
  std::size_t ok = 0;
  for (const SearcherBundle* b : {&plain, &minus}) {
    const Ref r = Ref::constant(b->const_name);
    for (unsigned n = 1; n <= 100; ++n) {
      ok += valid(*prove_not_halted_within(r, n, b->sig), *Sentence::not_halted_within(r, n), b->sig);
    }
  }
  const bool exhausted = !first_proof(*minus.sentence, 10000, minus.sig, minus.sig.caps().depth_cap).has_value();
  return {ok == 200 && exhausted,
          "valid=" + std::to_string(ok) + "/200 search_in_minus=" + (exhausted ? "exhausted" : "found")};
}

Outcome godel_flip() {
  const SearcherBundle plain = sr::build_searcher_P(Signature());
  const SearcherBundle plus = sr::build_searcher_P(Signature().with_axioms({plain.sentence}));
  const ProofPtr q = axiom(plus.sentence);
  const bool q_ok = valid(*q, *plus.sentence, plus.sig);
  const bool flip_ok = valid(*sr::godel_to_neg(*q, plus), *negate(*plus.sentence), plus.sig);
  return {q_ok && flip_ok, std::string("proves_sentence=") + (q_ok ? "yes" : "no") +
                               " proves_negation=" + (flip_ok ? "yes" : "no")};
}

Outcome rosser_symmetry() {
  const SearcherBundle plain = sr::build_searcher_B(Signature());
  std::size_t ok = 0;
  std::string detail;
  for (const SentPtr& s : {plain.sentence, negate(*plain.sentence)}) {
    const SearcherBundle b = sr::build_searcher_B(Signature().with_axioms({s}));
    const ProofPtr q = axiom(s);
    const ProofPtr flipped = sr::rosser_flip(*q, b);
    const bool v = valid(*flipped, *negate(*s), b.sig);
    const bool grew = rank_proof(*flipped) > rank_proof(*q);
    ok += v && grew;
    detail += std::string(detail.empty() ? "" : " ") + (s->kind() == SentKind::not_halts ? "from_loop=" : "from_halt=") +
              (v && grew ? "ok" : "bad");
  }
  return {ok == 2, detail};
}

Outcome second_incompleteness() {
  const SearcherBundle plain = sr::build_searcher_P(Signature());
  const SentPtr imp = sr::second_incompleteness_sentence(plain);
  const SearcherBundle b = sr::build_searcher_P(Signature().with_axioms({Sentence::con(), imp}));
  auto mp = std::make_shared<Proof>();
  mp->lines.push_back(Line{Sentence::con(), Rule{}});
  mp->lines.push_back(Line{imp, Rule{}});
  Rule r;
  r.kind = RuleKind::r_mp;
  r.a = 0;
  r.b = 1;
  mp->lines.push_back(Line{b.sentence, r});
  const bool g = valid(*mp, *b.sentence, b.sig);
  const bool ng = valid(*sr::godel_to_neg(*mp, b), *negate(*b.sentence), b.sig);
  return {g && ng, std::string("proves_sentence=") + (g ? "yes" : "no") + " proves_negation=" + (ng ? "yes" : "no")};
}

Outcome diagonal() {
  std::size_t total = 0;
  std::size_t contradicted = 0;
  std::size_t agreements = 0;
  const auto oracles = sr::shipped_oracles();
  for (const auto& h : oracles) {
    try {
      const sr::FalsificationReport r = sr::falsify_oracle(h, 100000);
      ++total;
      contradicted += r.contradiction == sr::Contradiction::yes;
      agreements += r.contradiction == sr::Contradiction::no;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::oracle_not_total) throw;
    }
  }
  return {oracles.size() >= 5 && total > 0 && contradicted == total && agreements == 0,
          "oracles=" + std::to_string(oracles.size()) + " total=" + std::to_string(total) +
              " contradicted=" + std::to_string(contradicted) + " agreements=" + std::to_string(agreements)};
}

Outcome agreement() {
  const auto corpus = obj::standard_agreement_corpus();
  const obj::AgreementReport r = obj::agreement_harness(corpus, 100000000, 1);
  const bool enough = r.timeouts * 20 <= corpus.size();
  return {corpus.size() == 200 && r.agreed == r.decided && enough,
          "items=" + std::to_string(corpus.size()) + " decided=" + std::to_string(r.decided) +
              " agreed=" + std::to_string(r.agreed) + " timeouts=" + std::to_string(r.timeouts)};
}

Outcome arithmetization() {
  const auto dir = kSource / "corpus" / "counter";
  std::istringstream manifest(slurp(dir / "MANIFEST"));
  std::string line;
  std::size_t programs = 0;
  std::size_t evals = 0;
  std::size_t bad = 0;
  std::size_t step_checks = 0;
  std::size_t step_bad = 0;
  while (std::getline(manifest, line)) {
    std::istringstream words(line);
    std::string name;
    std::uint64_t max = 0;
    if (!(words >> name) || name[0] == '#' || !(words >> max)) continue;
    const ar::CounterProgram p = ar::parse_counter_program(slurp(dir / name));
    ++programs;
    std::vector<std::uint64_t> input(p.registers(), 0);
    for (bool more = true; more;) {
      for (std::uint64_t t = 0; t <= 30; ++t) {
        ++evals;
        bad += ar::eval_formula(*ar::compile_halts_within(p, input, t), ar::Env{}) != ar::cm_run(p, input, t).halted;
      }
      more = false;
      for (auto& v : input) {
        if (v < max) {
          ++v;
          more = true;
          break;
        }
        v = 0;
      }
    }
    // Every packed state at the widths that hold the program: the step
    // formula accepts the true successor and no other value below the state
    // space bound.
    for (unsigned width = 1; width <= 3; ++width) {
      ar::FormulaPtr step;
      try {
        step = ar::compile_step(p, width);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::width_overflow) throw;
        continue;
      }
      const std::size_t regs = p.registers();
      const Natural states = Natural(1) << (width * (regs + 1));
      ar::PreparedFormula holds(step, {"x", "y"});
      ar::PreparedFormula other(
          ar::exists_below("y", ar::num(states), ar::and_({step, ar::not_(ar::eq(ar::var("y"), ar::var("s")))})),
          {"x", "s"});
      for (Natural x = 0; x < states; ++x) {
        ar::CMState s = ar::decode_config(x, width, regs);
        Natural expected = states;
        if (ar::cm_step(p, s)) {
          bool fits = s.pc < (std::uint64_t{1} << width);
          for (std::uint64_t r : s.regs) fits = fits && r < (std::uint64_t{1} << width);
          if (fits) expected = ar::encode_config(s, width);
        }
        ++step_checks;
        const bool accepts = expected == states || holds.eval({x, expected});
        step_bad += !accepts || other.eval({x, expected});
      }
    }
  }
  return {programs >= 10 && bad == 0 && step_checks > 0 && step_bad == 0,
          "programs=" + std::to_string(programs) + " evals=" + std::to_string(evals) +
              " mismatches=" + std::to_string(bad) + " step_states=" + std::to_string(step_checks) +
              " step_mismatches=" + std::to_string(step_bad)};
}

std::string run_cli(const std::string& args, int& exit) {
  const std::string cmd = "cd '" + (kSource / "tests" / "golden" / "cli").string() + "' && '" EXM_CLI "' " + args +
                          " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("cannot start the command-line tool");
  std::array<char, 4096> buf{};
  std::string raw;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) raw.append(buf.data(), n);
  const int status = pclose(pipe);
  exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::istringstream in(raw);
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# wall_ms=", 0) != 0) out += line + "\n";
  }
  return out;
}

Outcome determinism() {
  const std::string corpus = "'" + (kSource / "corpus" / "counter").string() + "/";
  const std::vector<std::string> matrix = {
      "check trace.proof goal.sentence",
      "check mutated.proof goal.sentence",
      "check missing.proof goal.sentence",
      "--fuel 2 check trace.proof goal.sentence",
      "--format json check trace.proof goal.sentence",
      "--k 50000 --signature fplus.signature search fplus.sentence",
      "search fplus.sentence",
      "--k 3000 search goal.sentence",
      "prove trace '(lit (succ (succ 0)))'",
      "prove running '(lit (call (lambda (x) (call x x)) (lambda (x) (call x x))))' --n 7",
      "prove cycle '(lit (call (lambda (x) (call x x)) (lambda (x) (call x x))))'",
      "--k 2000 prove enum goal.sentence",
      "demo godel-flip",
      "demo rosser-flip-both",
      "demo subinconsistency",
      "demo second",
      "demo diagonal",
      "diagonal",
      "--format json diagonal",
      "arith eval " + corpus + "halt.cm' --t 1",
      "arith eval " + corpus + "loop.cm' --t 30",
      "arith compile " + corpus + "inc.cm' --input 1 --t 3",
      "report",
  };
  std::size_t stable = 0;
  for (const std::string& args : matrix) {
    int exit = 0;
    const std::string first = run_cli(args, exit);
    bool same = true;
    int again_exit = 0;
    same = same && run_cli(args, again_exit) == first && again_exit == exit;
    for (const char* threads : {"2", "4"}) {
      int par_exit = 0;
      same = same && run_cli(std::string("--threads ") + threads + " " + args, par_exit) == first && par_exit == exit;
    }
    if (same) {
      ++stable;
    } else {
      std::cerr << "unstable: " << args << "\n";
    }
  }
  return {stable == matrix.size(),
          "invocations=" + std::to_string(matrix.size()) + " stable=" + std::to_string(stable)};
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"fixed-point", 1, fixed_points},
      {"checker-soundness", 60, checker_soundness},
      {"bounded-undecidability", 600, bounded_search},
      {"sub-inconsistency", 120, subinconsistency},
      {"godel-flip", 60, godel_flip},
      {"rosser-symmetry", 300, rosser_symmetry},
      {"second-incompleteness", 60, second_incompleteness},
      {"diagonal-falsifier", 60, diagonal},
      {"meta-object-agreement", 600, agreement},
      {"arithmetization-differential", 600, arithmetization},
      {"determinism", 0, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error=\"") + e.what() + "\""};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.2f", secs);
    std::cout << "criterion=" << (i + 1) << " name=" << c.name << ' ' << (pass ? "PASS" : "FAIL") << ' ' << o.detail
              << " wall_s=" << wall;
    if (!in_time) std::cout << " over_limit_s=" << c.limit_s;
    std::cout << std::endl;
  }
  std::cout << "passed=" << (criteria.size() - failures) << "/" << criteria.size() << std::endl;
  return failures == 0 ? 0 : 1;
}
