// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#include "formal/syntax.hpp"

#include <array>

#include "core/error.hpp"
#include "formal/cache.hpp"

namespace exm::fm {
namespace {

using kl::cons;
using kl::list;
using kl::make_nat;
using kl::make_sym;
using kl::Value;

constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "ax-inj", "ax-trace", "ax-running", "ax-cycle", "ax-enum",
    "r-halts", "r-mp", "r-finds-halt", "r-rosser-halt", "r-rosser-loop",
};

constexpr std::array<std::string_view, 7> kSentNames = {
    "halts", "not-halts", "halted-within", "not-halted-within", "no-proof-before", "implies", "con-f",
};

Error bad(const std::string& what) { return Error(ErrorCode::syntax, what); }

// Items of a proper list headed by the given symbol, without the head.
std::vector<ValuePtr> tagged(const Value& d, std::string_view tag, long arity) {
  if (!d.is_pair() || !d.head()->is_sym() || d.head()->sym()->name != tag) {
    throw bad("expected (" + std::string(tag) + " ...)");
  }
  std::vector<ValuePtr> items = kl::list_items(*d.tail());
  if (kl::list_length(*d.tail()) < 0 || (arity >= 0 && static_cast<long>(items.size()) != arity)) {
    throw bad("malformed (" + std::string(tag) + " ...)");
  }
  return items;
}

std::string_view head_tag(const Value& d) {
  if (!d.is_pair() || !d.head()->is_sym()) throw bad("expected a tagged list");
  return d.head()->sym()->name;
}

const Natural& natural_of(const Value& d) {
  if (!d.is_nat()) throw bad("expected a natural");
  return d.nat();
}

Symbol name_of(const Value& d) {
  if (!d.is_sym()) throw bad("expected a name");
  return d.sym();
}

std::uint64_t cap_of(const Value& d) {
  const Natural& n = natural_of(d);
  if (n == 0 || !fits_u64(n)) throw bad("caps must be positive 64-bit naturals");
  return to_u64(n);
}

kl::RawTree leaf(int nt, int prod) { return kl::RawTree{nt, prod, {}}; }
kl::RawTree node(int nt, int prod, std::vector<kl::RawTree> kids) { return kl::RawTree{nt, prod, std::move(kids)}; }

kl::RawTree ref_tree(const Ref& r) {
  if (r.is_const) return node(kRefNt, 1, {kl::nat_tree(kl::symbol_index(r.name))});
  return node(kRefNt, 0, {kl::expr_tree(*r.expr)});
}

Ref ref_from_tree(const kl::RawTree& t) {
  if (t.prod == 1) return Ref::constant(kl::symbol_at(kl::nat_from_tree(t.kids[0])));
  return Ref::literal(kl::expr_from_tree(t.kids[0]));
}

kl::RawTree rule_tree(const Rule& r) {
  const int p = static_cast<int>(r.kind);
  switch (r.kind) {
    case RuleKind::ax_inj: return leaf(kRuleNt, p);
    case RuleKind::ax_trace:
    case RuleKind::ax_running: return node(kRuleNt, p, {ref_tree(r.ref), kl::nat_tree(r.a)});
    case RuleKind::ax_cycle: return node(kRuleNt, p, {ref_tree(r.ref), kl::nat_tree(r.a), kl::nat_tree(r.b)});
    case RuleKind::ax_enum: return node(kRuleNt, p, {sentence_tree(*r.sent), kl::nat_tree(r.a)});
    case RuleKind::r_halts: return node(kRuleNt, p, {kl::nat_tree(r.a)});
    case RuleKind::r_mp: return node(kRuleNt, p, {kl::nat_tree(r.a), kl::nat_tree(r.b)});
    case RuleKind::r_finds_halt: return node(kRuleNt, p, {proof_tree(*r.proof)});
    case RuleKind::r_rosser_halt:
    case RuleKind::r_rosser_loop: return node(kRuleNt, p, {proof_tree(*r.proof), kl::nat_tree(r.a)});
  }
  throw Error(ErrorCode::defect, "unknown rule");
}

Rule rule_from_tree(const kl::RawTree& t) {
  Rule r;
  r.kind = static_cast<RuleKind>(t.prod);
  switch (r.kind) {
    case RuleKind::ax_inj: break;
    case RuleKind::ax_trace:
    case RuleKind::ax_running:
      r.ref = ref_from_tree(t.kids[0]);
      r.a = kl::nat_from_tree(t.kids[1]);
      break;
    case RuleKind::ax_cycle:
      r.ref = ref_from_tree(t.kids[0]);
      r.a = kl::nat_from_tree(t.kids[1]);
      r.b = kl::nat_from_tree(t.kids[2]);
      break;
    case RuleKind::ax_enum:
      r.sent = sentence_from_tree(t.kids[0]);
      r.a = kl::nat_from_tree(t.kids[1]);
      break;
    case RuleKind::r_halts: r.a = kl::nat_from_tree(t.kids[0]); break;
    case RuleKind::r_mp:
      r.a = kl::nat_from_tree(t.kids[0]);
      r.b = kl::nat_from_tree(t.kids[1]);
      break;
    case RuleKind::r_finds_halt: r.proof = proof_from_tree(t.kids[0]); break;
    case RuleKind::r_rosser_halt:
    case RuleKind::r_rosser_loop:
      r.proof = proof_from_tree(t.kids[0]);
      r.a = kl::nat_from_tree(t.kids[1]);
      break;
  }
  return r;
}

ValuePtr rule_to_datum(const Rule& r) {
  ValuePtr tag = make_sym(rule_name(r.kind));
  switch (r.kind) {
    case RuleKind::ax_inj: return list({tag});
    case RuleKind::ax_trace:
    case RuleKind::ax_running: return list({tag, ref_to_datum(r.ref), make_nat(r.a)});
    case RuleKind::ax_cycle: return list({tag, ref_to_datum(r.ref), make_nat(r.a), make_nat(r.b)});
    case RuleKind::ax_enum: return list({tag, r.sent->datum(), make_nat(r.a)});
    case RuleKind::r_halts: return list({tag, make_nat(r.a)});
    case RuleKind::r_mp: return list({tag, make_nat(r.a), make_nat(r.b)});
    case RuleKind::r_finds_halt: return list({tag, proof_to_datum(*r.proof)});
    case RuleKind::r_rosser_halt:
    case RuleKind::r_rosser_loop: return list({tag, proof_to_datum(*r.proof), make_nat(r.a)});
  }
  throw Error(ErrorCode::defect, "unknown rule");
}

Rule rule_from_datum(const Value& d) {
  const std::string_view tag = head_tag(d);
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    if (kRuleNames[i] != tag) continue;
    Rule r;
    r.kind = static_cast<RuleKind>(i);
    switch (r.kind) {
      case RuleKind::ax_inj: tagged(d, tag, 0); break;
      case RuleKind::ax_trace:
      case RuleKind::ax_running: {
        auto it = tagged(d, tag, 2);
        r.ref = ref_from_datum(*it[0]);
        r.a = natural_of(*it[1]);
        break;
      }
      case RuleKind::ax_cycle: {
        auto it = tagged(d, tag, 3);
        r.ref = ref_from_datum(*it[0]);
        r.a = natural_of(*it[1]);
        r.b = natural_of(*it[2]);
        break;
      }
      case RuleKind::ax_enum: {
        auto it = tagged(d, tag, 2);
        r.sent = sentence_from_datum(*it[0]);
        r.a = natural_of(*it[1]);
        break;
      }
      case RuleKind::r_halts: r.a = natural_of(*tagged(d, tag, 1)[0]); break;
      case RuleKind::r_mp: {
        auto it = tagged(d, tag, 2);
        r.a = natural_of(*it[0]);
        r.b = natural_of(*it[1]);
        break;
      }
      case RuleKind::r_finds_halt: r.proof = proof_from_datum(*tagged(d, tag, 1)[0]); break;
      case RuleKind::r_rosser_halt:
      case RuleKind::r_rosser_loop: {
        auto it = tagged(d, tag, 2);
        r.proof = proof_from_datum(*it[0]);
        r.a = natural_of(*it[1]);
        break;
      }
    }
    return r;
  }
  throw bad("unknown rule " + std::string(tag));
}

}  // namespace

SentPtr Sentence::finish(Sentence s) {
  ValuePtr tag = make_sym(kSentNames[static_cast<std::size_t>(s.kind_)]);
  switch (s.kind_) {
    case SentKind::halts:
    case SentKind::not_halts: s.datum_ = list({tag, ref_to_datum(s.ref_)}); break;
    case SentKind::halted_within:
    case SentKind::not_halted_within: s.datum_ = list({tag, ref_to_datum(s.ref_), make_nat(s.n_)}); break;
    case SentKind::no_proof_before: s.datum_ = list({tag, s.lhs_->datum(), make_nat(s.n_)}); break;
    case SentKind::implies: s.datum_ = list({tag, s.lhs_->datum(), s.rhs_->datum()}); break;
    case SentKind::con: s.datum_ = list({tag}); break;
  }
  return std::make_shared<const Sentence>(std::move(s));
}

SentPtr Sentence::halts(Ref r) {
  Sentence s;
  s.kind_ = SentKind::halts;
  s.ref_ = std::move(r);
  return finish(std::move(s));
}

SentPtr Sentence::not_halts(Ref r) {
  Sentence s;
  s.kind_ = SentKind::not_halts;
  s.ref_ = std::move(r);
  return finish(std::move(s));
}

SentPtr Sentence::halted_within(Ref r, Natural n) {
  Sentence s;
  s.kind_ = SentKind::halted_within;
  s.ref_ = std::move(r);
  s.n_ = std::move(n);
  return finish(std::move(s));
}

SentPtr Sentence::not_halted_within(Ref r, Natural n) {
  Sentence s;
  s.kind_ = SentKind::not_halted_within;
  s.ref_ = std::move(r);
  s.n_ = std::move(n);
  return finish(std::move(s));
}

SentPtr Sentence::no_proof_before(SentPtr target, Natural k) {
  Sentence s;
  s.kind_ = SentKind::no_proof_before;
  s.lhs_ = std::move(target);
  s.n_ = std::move(k);
  return finish(std::move(s));
}

SentPtr Sentence::implies(SentPtr lhs, SentPtr rhs) {
  Sentence s;
  s.kind_ = SentKind::implies;
  s.lhs_ = std::move(lhs);
  s.rhs_ = std::move(rhs);
  return finish(std::move(s));
}

SentPtr Sentence::con() {
  static const SentPtr instance = finish(Sentence());
  return instance;
}

bool sentence_equal(const Sentence& a, const Sentence& b) {
  return &a == &b || kl::value_equal(*a.datum(), *b.datum());
}

SentPtr negate(const Sentence& s) {
  switch (s.kind()) {
    case SentKind::halts: return Sentence::not_halts(s.ref());
    case SentKind::not_halts: return Sentence::halts(s.ref());
    case SentKind::halted_within: return Sentence::not_halted_within(s.ref(), s.n());
    case SentKind::not_halted_within: return Sentence::halted_within(s.ref(), s.n());
    default: break;
  }
  throw Error(ErrorCode::unsupported_negation, "negation is defined on halting atoms only");
}

std::string_view rule_name(RuleKind k) noexcept { return kRuleNames[static_cast<std::size_t>(k)]; }

Signature::Signature() : cache_(std::make_shared<SignatureCache>()) {}

Signature::Signature(DefsTable defs, std::vector<SentPtr> axioms, Caps caps)
    : defs_(std::move(defs)), axioms_(std::move(axioms)), caps_(caps), cache_(std::make_shared<SignatureCache>()) {
  if (caps_.enum_cap == 0 || caps_.depth_cap == 0 || caps_.fuel_cap == 0) {
    throw Error(ErrorCode::invalid_argument, "signature caps must be positive");
  }
}

bool Signature::has_axiom(const Sentence& s) const {
  for (const auto& a : axioms_) {
    if (sentence_equal(*a, s)) return true;
  }
  return false;
}

std::string_view verdict_kind_name(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::valid: return "valid";
    case VerdictKind::invalid: return "invalid";
    case VerdictKind::budget: return "budget";
  }
  return "valid";
}

std::string render_verdict(const Verdict& v) {
  std::string out = "verdict=" + std::string(verdict_kind_name(v.kind));
  if (v.kind != VerdictKind::valid) out += " line=" + std::to_string(v.line) + " reason=" + v.reason;
  return out;
}

ValuePtr verdict_to_datum(const Verdict& v) {
  ValuePtr tag = make_sym(verdict_kind_name(v.kind));
  if (v.kind == VerdictKind::valid) return list({tag});
  return list({tag, make_nat(v.line), make_sym(v.reason)});
}

Verdict verdict_from_datum(const Value& d) {
  const std::string_view tag = head_tag(d);
  if (tag == "valid") {
    tagged(d, tag, 0);
    return Verdict::valid();
  }
  if (tag != "invalid" && tag != "budget") throw Error(ErrorCode::decode, "unknown verdict " + std::string(tag));
  auto it = tagged(d, tag, 2);
  const Natural& line = natural_of(*it[0]);
  if (!fits_u64(line)) throw Error(ErrorCode::decode, "verdict line out of range");
  Verdict v;
  v.kind = tag == "invalid" ? VerdictKind::invalid : VerdictKind::budget;
  v.line = to_u64(line);
  v.reason = name_of(*it[1])->name;
  return v;
}

ValuePtr ref_to_datum(const Ref& r) {
  if (r.is_const) return list({make_sym("const"), make_sym(r.name)});
  return list({make_sym("lit"), kl::expr_to_datum(*r.expr)});
}

Ref ref_from_datum(const Value& d) {
  const std::string_view tag = head_tag(d);
  if (tag == "const") return Ref::constant(name_of(*tagged(d, tag, 1)[0]));
  return Ref::literal(kl::expr_from_datum(*tagged(d, "lit", 1)[0]));
}

SentPtr sentence_from_datum(const Value& d) {
  const std::string_view tag = head_tag(d);
  if (tag == "halts") return Sentence::halts(ref_from_datum(*tagged(d, tag, 1)[0]));
  if (tag == "not-halts") return Sentence::not_halts(ref_from_datum(*tagged(d, tag, 1)[0]));
  if (tag == "halted-within" || tag == "not-halted-within") {
    auto it = tagged(d, tag, 2);
    Ref r = ref_from_datum(*it[0]);
    if (tag == "halted-within") return Sentence::halted_within(std::move(r), natural_of(*it[1]));
    return Sentence::not_halted_within(std::move(r), natural_of(*it[1]));
  }
  if (tag == "no-proof-before") {
    auto it = tagged(d, tag, 2);
    return Sentence::no_proof_before(sentence_from_datum(*it[0]), natural_of(*it[1]));
  }
  if (tag == "implies") {
    auto it = tagged(d, tag, 2);
    return Sentence::implies(sentence_from_datum(*it[0]), sentence_from_datum(*it[1]));
  }
  tagged(d, "con-f", 0);
  return Sentence::con();
}

ValuePtr proof_to_datum(const Proof& p) {
  std::vector<ValuePtr> items{make_sym("proof")};
  for (const Line& l : p.lines) items.push_back(list({make_sym("line"), l.claim->datum(), rule_to_datum(l.rule)}));
  return kl::list_from(items);
}

ProofPtr proof_from_datum(const Value& d) {
  auto items = tagged(d, "proof", -1);
  if (items.empty()) throw bad("a proof has at least one line");
  auto p = std::make_shared<Proof>();
  for (const auto& item : items) {
    auto parts = tagged(*item, "line", 2);
    p->lines.push_back(Line{sentence_from_datum(*parts[0]), rule_from_datum(*parts[1])});
  }
  return p;
}

ValuePtr caps_to_datum(const Caps& c) {
  return list({make_sym("caps"), make_nat(c.enum_cap), make_nat(c.depth_cap), make_nat(c.fuel_cap)});
}

ValuePtr axioms_to_datum(const std::vector<SentPtr>& axioms) {
  std::vector<ValuePtr> items{make_sym("axioms")};
  for (const auto& a : axioms) items.push_back(a->datum());
  return kl::list_from(items);
}

ValuePtr signature_to_datum(const Signature& s) {
  return list({make_sym("signature"), kl::defs_to_datum(s.defs()), axioms_to_datum(s.axioms()), caps_to_datum(s.caps())});
}

Signature signature_from_datum(const Value& d) {
  auto parts = tagged(d, "signature", 3);
  DefsTable defs = kl::defs_from_datum(*parts[0]);
  std::vector<SentPtr> axioms;
  for (const auto& a : tagged(*parts[1], "axioms", -1)) axioms.push_back(sentence_from_datum(*a));
  auto caps = tagged(*parts[2], "caps", 3);
  const Natural& enum_cap = natural_of(*caps[0]);
  if (enum_cap == 0) throw bad("caps must be positive");
  return Signature(std::move(defs), std::move(axioms), Caps{enum_cap, cap_of(*caps[1]), cap_of(*caps[2])});
}

std::string render(const Sentence& s) { return kl::render(*s.datum()); }
std::string render(const Proof& p) { return kl::render(*proof_to_datum(p)); }
std::string render(const Signature& s) { return kl::render(*signature_to_datum(s)); }

SentPtr parse_sentence(std::string_view text) { return sentence_from_datum(*kl::parse_datum(text)); }
ProofPtr parse_proof(std::string_view text) { return proof_from_datum(*kl::parse_datum(text)); }
Signature parse_signature(std::string_view text) { return signature_from_datum(*kl::parse_datum(text)); }

bool proof_equal(const Proof& a, const Proof& b) {
  return &a == &b || kl::value_equal(*proof_to_datum(a), *proof_to_datum(b));
}

const kl::Grammar& proof_grammar() {
  static const kl::Grammar* g = [] {
    auto* out = new kl::Grammar();
    kl::add_kernel_grammar(*out);
    const int nat = kl::kNatNt;
    const int expr = kl::kExprNt;
    const int sent = out->add_nonterminal("sent");
    const int ref = out->add_nonterminal("ref");
    const int rule = out->add_nonterminal("rule");
    const int line = out->add_nonterminal("line");
    const int lines = out->add_nonterminal("lines");
    const int proof = out->add_nonterminal("proof");
    out->add_production(sent, "halts", {ref});
    out->add_production(sent, "not-halts", {ref});
    out->add_production(sent, "halted-within", {ref, nat});
    out->add_production(sent, "not-halted-within", {ref, nat});
    out->add_production(sent, "no-proof-before", {sent, nat});
    out->add_production(sent, "implies", {sent, sent});
    out->add_production(sent, "con-f", {});
    out->add_production(ref, "lit", {expr});
    out->add_production(ref, "const", {nat});
    out->add_production(rule, "ax-inj", {});
    out->add_production(rule, "ax-trace", {ref, nat});
    out->add_production(rule, "ax-running", {ref, nat});
    out->add_production(rule, "ax-cycle", {ref, nat, nat});
    out->add_production(rule, "ax-enum", {sent, nat});
    out->add_production(rule, "r-halts", {nat});
    out->add_production(rule, "r-mp", {nat, nat});
    out->add_production(rule, "r-finds-halt", {proof});
    out->add_production(rule, "r-rosser-halt", {proof, nat});
    out->add_production(rule, "r-rosser-loop", {proof, nat});
    out->add_production(line, "line", {sent, rule});
    out->add_production(lines, "end", {});
    out->add_production(lines, "more", {line, lines});
    out->add_production(proof, "proof", {line, lines});
    return out;
  }();
  return *g;
}

kl::RawTree sentence_tree(const Sentence& s) {
  const int p = static_cast<int>(s.kind());
  switch (s.kind()) {
    case SentKind::halts:
    case SentKind::not_halts: return node(kSentNt, p, {ref_tree(s.ref())});
    case SentKind::halted_within:
    case SentKind::not_halted_within: return node(kSentNt, p, {ref_tree(s.ref()), kl::nat_tree(s.n())});
    case SentKind::no_proof_before: return node(kSentNt, p, {sentence_tree(*s.target()), kl::nat_tree(s.n())});
    case SentKind::implies: return node(kSentNt, p, {sentence_tree(*s.lhs()), sentence_tree(*s.rhs())});
    case SentKind::con: return leaf(kSentNt, p);
  }
  throw Error(ErrorCode::defect, "unknown sentence");
}

SentPtr sentence_from_tree(const kl::RawTree& t) {
  switch (static_cast<SentKind>(t.prod)) {
    case SentKind::halts: return Sentence::halts(ref_from_tree(t.kids[0]));
    case SentKind::not_halts: return Sentence::not_halts(ref_from_tree(t.kids[0]));
    case SentKind::halted_within:
      return Sentence::halted_within(ref_from_tree(t.kids[0]), kl::nat_from_tree(t.kids[1]));
    case SentKind::not_halted_within:
      return Sentence::not_halted_within(ref_from_tree(t.kids[0]), kl::nat_from_tree(t.kids[1]));
    case SentKind::no_proof_before:
      return Sentence::no_proof_before(sentence_from_tree(t.kids[0]), kl::nat_from_tree(t.kids[1]));
    case SentKind::implies: return Sentence::implies(sentence_from_tree(t.kids[0]), sentence_from_tree(t.kids[1]));
    case SentKind::con: return Sentence::con();
  }
  throw Error(ErrorCode::defect, "unknown sentence");
}

kl::RawTree line_tree(const Line& l) { return node(kLineNt, 0, {sentence_tree(*l.claim), rule_tree(l.rule)}); }

kl::RawTree proof_tree(const Proof& p) {
  kl::RawTree rest = leaf(kLinesNt, 0);
  for (std::size_t i = p.lines.size(); i-- > 1;) rest = node(kLinesNt, 1, {line_tree(p.lines[i]), std::move(rest)});
  return node(kProofNt, 0, {line_tree(p.lines.at(0)), std::move(rest)});
}

ProofPtr proof_from_tree(const kl::RawTree& t) {
  auto p = std::make_shared<Proof>();
  auto add = [&](const kl::RawTree& line) {
    p->lines.push_back(Line{sentence_from_tree(line.kids[0]), rule_from_tree(line.kids[1])});
  };
  add(t.kids[0]);
  for (const kl::RawTree* cur = &t.kids[1]; cur->prod == 1; cur = &cur->kids[1]) add(cur->kids[0]);
  return p;
}

Natural rank_proof(const Proof& p) { return proof_grammar().rank(proof_tree(p)); }

ProofPtr unrank_proof(const Natural& n) { return proof_from_tree(proof_grammar().unrank(kProofNt, n)); }

std::size_t proof_size(const Proof& p) { return kl::raw_size(proof_tree(p)); }

}  // namespace exm::fm
