// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "handles.hpp"

namespace exmcli {
namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError(EXM_E_IO, "cannot read " + path, "");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << body)) throw ApiError(EXM_E_IO, "cannot write " + path, "");
}

std::string str(std::uint64_t n) { return std::to_string(n); }

const char* verdict_name(exm_verdict_kind k) {
  switch (k) {
    case EXM_VALID: return "valid";
    case EXM_INVALID: return "invalid";
    case EXM_BUDGET: return "budget";
  }
  return "unknown";
}

// Base signature: the --signature file or the empty system, with explicit
// budget flags overriding the caps it carries.
Signature base_signature(const Options& o) {
  Signature sig = o.signature.empty()
                      ? make<exm_signature>([](exm_signature** out) { return exm_signature_new(out); })
                      : make<exm_signature>([&](exm_signature** out) {
                          return exm_signature_parse(read_file(o.signature).c_str(), out);
                        });
  if (!o.fuel && !o.depth) return sig;
  char* enum_cap = nullptr;
  std::uint64_t depth = 0;
  std::uint64_t fuel = 0;
  check(exm_signature_caps(sig.get(), &enum_cap, &depth, &fuel));
  const std::string e = enum_cap;
  exm_string_free(enum_cap);
  return make<exm_signature>([&](exm_signature** out) {
    return exm_signature_with_caps(sig.get(), e.c_str(), o.depth.value_or(depth), o.fuel.value_or(fuel), out);
  });
}

void caps_params(const exm_signature* sig, Report& r) {
  char* enum_cap = nullptr;
  std::uint64_t depth = 0;
  std::uint64_t fuel = 0;
  check(exm_signature_caps(sig, &enum_cap, &depth, &fuel));
  r.param("enum_cap", enum_cap);
  exm_string_free(enum_cap);
  r.param("depth", str(depth));
  r.param("fuel", str(fuel));
}

Sentence parse_sentence(const std::string& text) {
  return make<exm_sentence>([&](exm_sentence** out) { return exm_sentence_parse(text.c_str(), out); });
}

Proof parse_proof(const std::string& text) {
  return make<exm_proof>([&](exm_proof** out) { return exm_proof_parse(text.c_str(), out); });
}

std::string render(const exm_sentence* s) {
  return text([&](char** out) { return exm_sentence_render(s, out); });
}

Sentence negate(const exm_sentence* s) {
  return make<exm_sentence>([&](exm_sentence** out) { return exm_sentence_negate(s, out); });
}

Signature with_axioms(const exm_signature* base, const std::vector<const exm_sentence*>& axioms) {
  Signature sig;
  for (const exm_sentence* a : axioms) {
    const exm_signature* from = sig ? sig.get() : base;
    sig = make<exm_signature>([&](exm_signature** out) { return exm_signature_add_axiom(from, a, out); });
  }
  return sig;
}

Bundle build(exm_bundle_kind kind, const exm_signature* base) {
  return make<exm_bundle>([&](exm_bundle** out) { return exm_bundle_build(kind, base, out); });
}

Signature bundle_signature(const exm_bundle* b) {
  return make<exm_signature>([&](exm_signature** out) { return exm_bundle_signature(b, out); });
}

Sentence bundle_sentence(const exm_bundle* b) {
  return make<exm_sentence>([&](exm_sentence** out) { return exm_bundle_sentence(b, out); });
}

// Proof lines citing each sentence as an injected axiom, in order.
std::string axiom_lines(const std::vector<const exm_sentence*>& axioms) {
  std::string out;
  for (const exm_sentence* a : axioms) out += " (line " + render(a) + " (ax-inj))";
  return out;
}

Proof axiom_proof(const exm_sentence* s) { return parse_proof("(proof" + axiom_lines({s}) + ")"); }

exm_verdict verdict(const exm_proof* p, const exm_sentence* goal, const exm_signature* sig) {
  exm_verdict v{};
  check(exm_check(p, goal, sig, &v));
  return v;
}

std::string rank(const exm_proof* p) {
  return text([&](char** out) { return exm_proof_rank(p, out); });
}

// Compares decimal strings without leading zeros.
bool rank_less(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

std::string last_rule(const exm_proof* p) {
  const std::size_t n = exm_proof_line_count(p);
  if (n == 0) return "none";
  return text([&](char** out) { return exm_proof_rule(p, n - 1, out); });
}

// Ranks of derived proofs run to thousands of digits; records carry the
// digit count and a short prefix.
void add_rank(Record& rec, const std::string& r) {
  if (r.size() <= 24) {
    rec.push_back({"rank", r});
  } else {
    rec.push_back({"rank_digits", str(r.size())});
    rec.push_back({"rank_prefix", r.substr(0, 12)});
  }
}

// Checks p against goal and records the step. Returns true when valid.
bool proof_step(Report& r, const std::string& step, const exm_proof* p, const exm_sentence* goal,
                const exm_signature* sig, std::string* rank_out = nullptr) {
  const exm_verdict v = verdict(p, goal, sig);
  Record rec{{"step", step}, {"rule", last_rule(p)}, {"claim", render(goal)},
             {"lines", str(exm_proof_line_count(p))}};
  const std::string rk = rank(p);
  add_rank(rec, rk);
  rec.push_back({"verdict", verdict_name(v.kind)});
  if (v.kind != EXM_VALID) {
    rec.push_back({"line", str(v.line)});
    rec.push_back({"reason", v.reason});
  }
  r.record(std::move(rec));
  if (rank_out) *rank_out = rk;
  return v.kind == EXM_VALID;
}

// Proof search outcome: the rank found, or nothing when exhausted.
std::optional<std::string> search(const exm_sentence* goal, const exm_signature* sig, std::uint64_t k) {
  int found = 0;
  char* rk = nullptr;
  check(exm_search(goal, sig, str(k).c_str(), &found, &rk));
  if (!found) return std::nullopt;
  std::string out = rk;
  exm_string_free(rk);
  return out;
}

int passed(Report& r, bool ok) {
  r.result("result", ok ? "pass" : "fail");
  return ok ? kOk : kNegative;
}

int demo_godel_flip(const Options& o, Report& r) {
  const Signature base = base_signature(o);
  caps_params(base.get(), r);
  const Bundle plain = build(EXM_GODEL, base.get());
  const Sentence g = bundle_sentence(plain.get());
  const Signature plus_base = with_axioms(base.get(), {g.get()});
  const Bundle plus = build(EXM_GODEL, plus_base.get());
  const Signature sig = bundle_signature(plus.get());

  const Proof q = axiom_proof(g.get());
  std::string q_rank;
  bool ok = proof_step(r, "assume", q.get(), g.get(), sig.get(), &q_rank);
  const Proof flipped = make<exm_proof>([&](exm_proof** out) { return exm_godel_to_neg(q.get(), plus.get(), out); });
  const Sentence neg = negate(g.get());
  ok = proof_step(r, "flip", flipped.get(), neg.get(), sig.get()) && ok;
  r.record({{"system", "F+G"}, {"proves", render(g.get())}, {"proves_negation", render(neg.get())},
            {"inconsistent", ok ? "yes" : "no"}});
  return passed(r, ok);
}

int demo_rosser_flip_both(const Options& o, Report& r) {
  const Signature base = base_signature(o);
  caps_params(base.get(), r);
  const Bundle plain = build(EXM_ROSSER, base.get());
  const Sentence rs = bundle_sentence(plain.get());
  const Sentence neg = negate(rs.get());
  bool ok = true;
  for (const exm_sentence* axiom : {rs.get(), neg.get()}) {
    const Signature injected = with_axioms(base.get(), {axiom});
    const Bundle b = build(EXM_ROSSER, injected.get());
    const Signature sig = bundle_signature(b.get());
    const Proof q = axiom_proof(axiom);
    std::string in_rank;
    std::string out_rank;
    ok = proof_step(r, "assume", q.get(), axiom, sig.get(), &in_rank) && ok;
    const Proof flipped = make<exm_proof>([&](exm_proof** out) { return exm_rosser_flip(q.get(), b.get(), out); });
    const Sentence target = negate(axiom);
    ok = proof_step(r, "flip", flipped.get(), target.get(), sig.get(), &out_rank) && ok;
    const bool grew = rank_less(in_rank, out_rank);
    ok = ok && grew;
    r.record({{"axiom", render(axiom)}, {"flipped_to", render(target.get())}, {"rank_increased", grew ? "yes" : "no"}});
  }
  return passed(r, ok);
}

int demo_subinconsistency(const Options& o, std::uint64_t n, Report& r) {
  const Signature base = base_signature(o);
  caps_params(base.get(), r);
  r.param("n", str(n));
  r.param("k", str(o.k));
  const Bundle plain = build(EXM_GODEL, base.get());
  const Sentence g = bundle_sentence(plain.get());
  const Sentence neg = negate(g.get());
  const Signature minus_base = with_axioms(base.get(), {neg.get()});
  const Bundle minus = build(EXM_GODEL, minus_base.get());
  const std::string ref = "(const " + text([&](char** out) { return exm_bundle_constant(plain.get(), out); }) + ")";

  bool ok = true;
  const std::pair<const char*, const exm_bundle*> systems[] = {{"F", plain.get()}, {"F-", minus.get()}};
  for (const auto& [name, bundle] : systems) {
    const Signature sig = bundle_signature(bundle);
    std::uint64_t valid = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
      const Proof p = make<exm_proof>([&](exm_proof** out) {
        return exm_prove_not_halted_within(ref.c_str(), str(i).c_str(), sig.get(), out);
      });
      const Sentence goal = parse_sentence("(not-halted-within " + ref + " " + str(i) + ")");
      const exm_verdict v = verdict(p.get(), goal.get(), sig.get());
      Record rec{{"system", name}, {"n", str(i)}, {"rule", last_rule(p.get())}, {"verdict", verdict_name(v.kind)}};
      r.record(std::move(rec));
      if (v.kind == EXM_VALID) ++valid;
    }
    const auto found = search(g.get(), sig.get(), o.k);
    Record rec{{"system", name}, {"valid", str(valid)}, {"of", str(n)}, {"search", render(g.get())}};
    if (found) {
      rec.push_back({"found", std::nullopt});
      rec.push_back({"rank", *found});
    } else {
      rec.push_back({"exhausted", std::nullopt});
      rec.push_back({"k", str(o.k)});
    }
    r.record(std::move(rec));
    ok = ok && valid == n && !found;
  }
  return passed(r, ok);
}

int demo_second(const Options& o, Report& r) {
  const Signature base = base_signature(o);
  caps_params(base.get(), r);
  const Bundle plain = build(EXM_GODEL, base.get());
  const Sentence g = bundle_sentence(plain.get());
  const Sentence con = parse_sentence("(con-f)");
  const Sentence imp = make<exm_sentence>(
      [&](exm_sentence** out) { return exm_second_incompleteness_sentence(plain.get(), out); });
  const Signature injected = with_axioms(base.get(), {con.get(), imp.get()});
  const Bundle second = build(EXM_GODEL, injected.get());
  const Signature sig = bundle_signature(second.get());

  bool ok = proof_step(r, "assume", axiom_proof(con.get()).get(), con.get(), sig.get());
  ok = proof_step(r, "assume", axiom_proof(imp.get()).get(), imp.get(), sig.get()) && ok;
  const Proof mp =
      parse_proof("(proof" + axiom_lines({con.get(), imp.get()}) + " (line " + render(g.get()) + " (r-mp 0 1)))");
  ok = proof_step(r, "modus-ponens", mp.get(), g.get(), sig.get()) && ok;
  const Proof flipped = make<exm_proof>([&](exm_proof** out) { return exm_godel_to_neg(mp.get(), second.get(), out); });
  const Sentence neg = negate(g.get());
  ok = proof_step(r, "flip", flipped.get(), neg.get(), sig.get()) && ok;
  r.record({{"system", "F+Con"}, {"proves", render(g.get())}, {"proves_negation", render(neg.get())},
            {"inconsistent", ok ? "yes" : "no"}});
  return passed(r, ok);
}

std::uint64_t parse_count(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used == s.size() && !s.empty() && s[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw ApiError(EXM_E_SYNTAX, "bad " + what + ": " + s, "");
}

}  // namespace

int cmd_check(const Options& o, const std::string& proof, const std::string& sentence, Report& r) {
  r.param("proof", proof);
  r.param("sentence", sentence);
  r.param("signature", o.signature.empty() ? "default" : o.signature);
  const Proof p = parse_proof(read_file(proof));
  const Sentence goal = parse_sentence(read_file(sentence));
  const Signature sig = base_signature(o);
  caps_params(sig.get(), r);
  const exm_verdict v = verdict(p.get(), goal.get(), sig.get());
  Record rec{{"verdict", verdict_name(v.kind)}, {"line", str(v.line)}};
  if (v.kind != EXM_VALID) rec.push_back({"reason", v.reason});
  r.record(std::move(rec));
  r.result("result", verdict_name(v.kind));
  switch (v.kind) {
    case EXM_VALID: return kOk;
    case EXM_INVALID: return kNegative;
    case EXM_BUDGET: return kExhausted;
  }
  return kError;
}

int cmd_build(const Options& o, const std::string& which, const std::string& out, Report& r) {
  r.param("bundle", which);
  r.param("out", out);
  const Signature base = base_signature(o);
  caps_params(base.get(), r);
  const Bundle b = build(which == "godel" ? EXM_GODEL : EXM_ROSSER, base.get());
  int ok = 0;
  check(exm_bundle_verify(b.get(), &ok));
  if (!ok) throw ApiError(EXM_E_DEFECT, "the built bundle fails its fixed-point check", "");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ApiError(EXM_E_IO, "cannot create " + out + ": " + ec.message(), "");
  check(exm_bundle_export(b.get(), out.c_str()));
  const std::string constant = text([&](char** s) { return exm_bundle_constant(b.get(), s); });
  const Sentence s = bundle_sentence(b.get());
  r.record({{"constant", constant}, {"sentence", render(s.get())}, {"fixed_point", "verified"}});
  for (const std::string& file : {constant + ".kl", std::string("signature"), std::string("sentence")}) {
    r.record({{"wrote", (fs::path(out) / file).generic_string()}});
  }
  r.result("result", "built");
  return kOk;
}

int cmd_prove(const Options& o, const std::string& generator, const std::string& target, std::uint64_t n,
              const std::string& out, Report& r) {
  r.param("generator", generator);
  r.param("target", target);
  r.param("signature", o.signature.empty() ? "default" : o.signature);
  const Signature sig = base_signature(o);
  caps_params(sig.get(), r);
  Proof p;
  if (generator == "trace") {
    p = make<exm_proof>([&](exm_proof** x) { return exm_prove_halted_by_trace(target.c_str(), sig.get(), x); });
  } else if (generator == "running") {
    r.param("n", str(n));
    p = make<exm_proof>(
        [&](exm_proof** x) { return exm_prove_not_halted_within(target.c_str(), str(n).c_str(), sig.get(), x); });
  } else if (generator == "cycle") {
    p = make<exm_proof>([&](exm_proof** x) { return exm_prove_not_halts_by_cycle(target.c_str(), sig.get(), x); });
  } else {
    r.param("k", str(o.k));
    const Sentence s = parse_sentence(read_file(target));
    p = make<exm_proof>(
        [&](exm_proof** x) { return exm_prove_no_proof_before(s.get(), str(o.k).c_str(), sig.get(), x); });
  }
  const Sentence claim = make<exm_sentence>([&](exm_sentence** x) { return exm_proof_conclusion(p.get(), x); });
  const std::string body = text([&](char** x) { return exm_proof_render(p.get(), x); });
  Record rec{{"claim", render(claim.get())}, {"rule", last_rule(p.get())}, {"lines", str(exm_proof_line_count(p.get()))}};
  if (out.empty()) {
    rec.push_back({"proof", body});
  } else {
    write_file(out, body + "\n");
    rec.push_back({"wrote", out});
  }
  r.record(std::move(rec));
  r.result("result", "proved");
  return kOk;
}

int cmd_search(const Options& o, const std::string& sentence, Report& r) {
  r.param("sentence", sentence);
  r.param("signature", o.signature.empty() ? "default" : o.signature);
  r.param("k", str(o.k));
  const Sentence goal = parse_sentence(read_file(sentence));
  const Signature sig = base_signature(o);
  caps_params(sig.get(), r);
  std::optional<std::string> found;
  try {
    found = search(goal.get(), sig.get(), o.k);
  } catch (const ApiError& e) {
    if (e.status() != EXM_E_BUDGET_EXCEEDED) throw;
    r.record({{"budget", std::nullopt}, {"reason", e.what()}});
    r.result("result", "budget");
    return kExhausted;
  }
  if (found) {
    r.record({{"found", std::nullopt}, {"rank", *found}});
    r.result("result", "found");
    return kOk;
  }
  r.record({{"exhausted", std::nullopt}, {"k", str(o.k)}});
  r.result("result", "exhausted");
  return kExhausted;
}

int cmd_demo(const Options& o, const std::string& which, std::uint64_t n, Report& r) {
  r.param("case", which);
  if (which == "godel-flip") return demo_godel_flip(o, r);
  if (which == "rosser-flip-both") return demo_rosser_flip_both(o, r);
  if (which == "subinconsistency") return demo_subinconsistency(o, n, r);
  if (which == "second") return demo_second(o, r);
  return cmd_diagonal(o, {}, r);
}

int cmd_diagonal(const Options& o, const std::vector<std::string>& oracles, Report& r) {
  const std::uint64_t fuel = o.fuel.value_or(kDefaultFuel);
  r.param("fuel", str(fuel));
  std::vector<std::pair<std::string, std::string>> candidates;
  if (oracles.empty()) {
    for (std::size_t i = 0; i < exm_oracle_count(); ++i) {
      candidates.emplace_back(text([&](char** out) { return exm_oracle_label(i, out); }),
                              text([&](char** out) { return exm_oracle_source(i, out); }));
    }
  } else {
    for (const std::string& path : oracles) candidates.emplace_back(fs::path(path).stem().string(), read_file(path));
  }
  std::uint64_t contradicted = 0;
  std::uint64_t not_total = 0;
  std::uint64_t agreements = 0;
  std::uint64_t inconclusive = 0;
  for (const auto& [label, source] : candidates) {
    exm_falsification f{};
    char* line = nullptr;
    const exm_status s = exm_falsify_oracle(source.c_str(), label.c_str(), fuel, &f, &line);
    if (s == EXM_E_ORACLE_NOT_TOTAL) {
      ++not_total;
      r.record({{"oracle", label}, {"total", "no"}, {"reason", exm_last_error()}});
      continue;
    }
    check(s);
    Record rec = parse_record(line);
    exm_string_free(line);
    rec.push_back({"steps", str(f.steps)});
    r.record(std::move(rec));
    if (f.contradiction == EXM_CONTRADICTION_YES) {
      ++contradicted;
    } else if (f.contradiction == EXM_CONTRADICTION_NO) {
      ++agreements;
    } else {
      ++inconclusive;
    }
  }
  r.result("oracles", str(candidates.size()));
  r.result("contradicted", str(contradicted));
  r.result("not_total", str(not_total));
  r.result("inconclusive", str(inconclusive));
  r.result("agreements", str(agreements));
  return agreements == 0 && inconclusive == 0 ? kOk : kNegative;
}

namespace {

Program load_program(const std::string& path) {
  const std::string body = read_file(path);
  return make<exm_counter_program>([&](exm_counter_program** out) { return exm_counter_parse(body.c_str(), out); });
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + str(v[i]);
  return out.empty() ? "none" : out;
}

Formula compile(const ArithOptions& a, const exm_counter_program* p) {
  return make<exm_formula>([&](exm_formula** out) {
    if (a.step) return exm_compile_step(p, a.width, out);
    if (a.t) return exm_compile_halts_within(p, a.input.data(), a.input.size(), *a.t, a.width, out);
    return exm_compile_halts(p, a.input.data(), a.input.size(), a.width, out);
  });
}

void program_params(const ArithOptions& a, Report& r) {
  r.param("program", a.path);
  r.param("input", join(a.input));
  r.param("width", str(a.width));
  if (a.step) {
    r.param("mode", "step");
  } else if (a.t) {
    r.param("mode", "halts-within");
    r.param("t", str(*a.t));
  } else {
    r.param("mode", "halts");
  }
}

}  // namespace

int cmd_arith_compile(const Options&, const ArithOptions& a, Report& r) {
  program_params(a, r);
  const Program p = load_program(a.path);
  const Formula f = compile(a, p.get());
  const std::string body = text([&](char** out) { return exm_formula_render(f.get(), out); });
  Record rec{{"registers", str(exm_counter_registers(p.get()))}, {"size", str(body.size())}};
  if (a.out.empty()) {
    rec.push_back({"formula", body});
  } else {
    write_file(a.out, body + "\n");
    rec.push_back({"wrote", a.out});
  }
  r.record(std::move(rec));
  r.result("result", "compiled");
  return kOk;
}

int cmd_arith_eval(const Options&, const ArithOptions& a, Report& r) {
  Formula f;
  if (!a.formula.empty()) {
    r.param("formula", a.formula);
    const std::string body = read_file(a.formula);
    f = make<exm_formula>([&](exm_formula** out) { return exm_formula_parse(body.c_str(), out); });
  } else {
    program_params(a, r);
    const Program p = load_program(a.path);
    f = compile(a, p.get());
  }
  std::vector<std::string> names;
  std::vector<std::string> values;
  for (const std::string& v : a.vars) {
    const auto eq = v.find('=');
    if (eq == std::string::npos) throw ApiError(EXM_E_SYNTAX, "expected NAME=VALUE: " + v, "");
    names.push_back(v.substr(0, eq));
    values.push_back(v.substr(eq + 1));
    r.param("var." + names.back(), values.back());
  }
  if (a.cap) r.param("cap", *a.cap);
  std::vector<const char*> np;
  std::vector<const char*> vp;
  for (std::size_t i = 0; i < names.size(); ++i) {
    np.push_back(names[i].c_str());
    vp.push_back(values[i].c_str());
  }
  int result = 0;
  check(exm_formula_eval(f.get(), np.data(), vp.data(), names.size(), a.cap ? a.cap->c_str() : nullptr, &result));
  r.record({{"value", result ? "true" : "false"}});
  r.result("result", result ? "true" : "false");
  return result ? kOk : kNegative;
}

int cmd_arith_diff(const Options&, const std::string& corpus, std::uint64_t t_max, unsigned width, Report& r) {
  r.param("corpus", corpus);
  r.param("t_max", str(t_max));
  r.param("width", str(width));
  std::istringstream manifest(read_file((fs::path(corpus) / "MANIFEST").string()));
  std::string line;
  std::uint64_t programs = 0;
  std::uint64_t total = 0;
  std::uint64_t total_bad = 0;
  while (std::getline(manifest, line)) {
    std::istringstream words(line);
    std::string name;
    std::string max_text;
    if (!(words >> name) || name[0] == '#') continue;
    if (!(words >> max_text)) throw ApiError(EXM_E_SYNTAX, "MANIFEST entry without a range: " + name, "");
    const std::uint64_t max = parse_count(max_text, "input range");
    const Program p = load_program((fs::path(corpus) / name).string());
    const std::size_t regs = exm_counter_registers(p.get());
    std::vector<std::uint64_t> input(regs, 0);
    std::uint64_t evals = 0;
    std::uint64_t bad = 0;
    std::uint64_t inputs = 0;
    for (bool more = true; more;) {
      ++inputs;
      for (std::uint64_t t = 0; t <= t_max; ++t) {
        const Formula f = make<exm_formula>([&](exm_formula** out) {
          return exm_compile_halts_within(p.get(), input.data(), input.size(), t, width, out);
        });
        int value = 0;
        check(exm_formula_eval(f.get(), nullptr, nullptr, 0, nullptr, &value));
        exm_counter_result run{};
        check(exm_counter_run(p.get(), input.data(), input.size(), t, &run));
        ++evals;
        if ((value != 0) != (run.halted != 0)) {
          ++bad;
          r.record({{"mismatch", std::nullopt}, {"program", name}, {"input", join(input)}, {"t", str(t)},
                    {"formula", value ? "true" : "false"}, {"simulation", run.halted ? "halted" : "running"}});
        }
      }
      more = false;
      for (std::size_t i = 0; i < regs; ++i) {
        if (input[i] < max) {
          ++input[i];
          more = true;
          break;
        }
        input[i] = 0;
      }
    }
    r.record({{"program", name}, {"registers", str(regs)}, {"inputs", str(inputs)}, {"evals", str(evals)},
              {"mismatches", str(bad)}});
    ++programs;
    total += evals;
    total_bad += bad;
  }
  r.result("programs", str(programs));
  r.result("evals", str(total));
  r.result("mismatches", str(total_bad));
  return total_bad == 0 ? kOk : kNegative;
}

int cmd_report(const Options& o, std::uint64_t object_fuel, Report& r) {
  r.param("object_fuel", str(object_fuel));
  exm_agreement_summary s{};
  const std::string body = text([&](char** out) { return exm_agreement_run(object_fuel, o.threads, &s, out); });
  std::istringstream lines(body);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("item=", 0) == 0) r.record(parse_record(line));
  }
  r.result("items", str(s.items));
  r.result("decided", str(s.decided));
  r.result("agreed", str(s.agreed));
  r.result("timeouts", str(s.timeouts));
  const bool ok = s.agreed == s.decided && s.timeouts * 20 <= s.items;
  r.result("result", ok ? "pass" : "fail");
  return ok ? kOk : kNegative;
}

}  // namespace exmcli
