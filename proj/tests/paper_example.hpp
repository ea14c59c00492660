// The running numeric example used across the test suites: an interpretation
// of <{0,1},{+,*},{<}> with schematic axiom families, and a state defining
// x := 0 + 1 and y := (0 + 1) + 1.
#pragma once

#include "relkit/theoria.hpp"

namespace paper_example {

using relkit::entail::SchemaSentence;
using relkit::entail::SchemaTerm;
using relkit::eqcore::EqSignature;
using relkit::eqcore::GroundTerm;
using relkit::eqcore::Sym;
using relkit::theoria::Definition;
using relkit::theoria::InterpretationTheory;
using relkit::theoria::StateTheory;

inline EqSignature number_sig() {
  EqSignature sig;
  sig.add_constant(Sym("0"));
  sig.add_constant(Sym("1"));
  sig.add_function(Sym("+"), 2);
  sig.add_function(Sym("*"), 2);
  sig.add_predicate(Sym("<"), 2);
  return sig;
}

inline EqSignature var_sig() {
  EqSignature sig;
  sig.add_constant(Sym("x"));
  sig.add_constant(Sym("y"));
  return sig;
}

inline SchemaTerm mt(const char* name) { return SchemaTerm::meta(name); }
inline SchemaTerm splus(SchemaTerm a, SchemaTerm b) {
  return SchemaTerm::app(Sym("+"), {std::move(a), std::move(b)});
}
inline SchemaTerm smul(SchemaTerm a, SchemaTerm b) {
  return SchemaTerm::app(Sym("*"), {std::move(a), std::move(b)});
}
inline SchemaTerm szero() { return SchemaTerm::leaf(Sym("0")); }
inline SchemaTerm sone() { return SchemaTerm::leaf(Sym("1")); }

// the five schematic axiom families: units, commutativity, distributivity,
// zero below everything else, growth of +
inline std::vector<SchemaSentence> number_schemas() {
  std::vector<SchemaSentence> out;
  out.push_back(SchemaSentence::equation({"t"}, splus(szero(), mt("t")), mt("t")));
  out.push_back(SchemaSentence::equation({"t"}, smul(sone(), mt("t")), mt("t")));
  out.push_back(SchemaSentence::equation({"t", "u"}, splus(mt("t"), mt("u")),
                                         splus(mt("u"), mt("t"))));
  out.push_back(SchemaSentence::equation({"t", "u"}, smul(mt("t"), mt("u")),
                                         smul(mt("u"), mt("t"))));
  out.push_back(SchemaSentence::equation(
      {"t", "u", "v"}, splus(mt("t"), smul(mt("u"), mt("v"))),
      smul(splus(mt("t"), mt("u")), splus(mt("t"), mt("v")))));
  out.push_back(SchemaSentence::equation(
      {"t", "u", "v"}, smul(mt("t"), splus(mt("u"), mt("v"))),
      splus(smul(mt("t"), mt("u")), smul(mt("t"), mt("v")))));
  SchemaSentence below = SchemaSentence::pred_app(
      {"t"}, Sym("<"), {szero(), mt("t")});
  below.add_guard("t", GroundTerm(Sym("0")));
  out.push_back(below);
  SchemaSentence grow = SchemaSentence::pred_app(
      {"t", "u"}, Sym("<"), {mt("t"), splus(mt("t"), mt("u"))});
  grow.add_guard("u", GroundTerm(Sym("0")));
  out.push_back(grow);
  return out;
}

inline InterpretationTheory number_interp() {
  return relkit::theoria::mk_interpretation(number_sig(), {}, number_schemas());
}

inline GroundTerm zero() { return GroundTerm(Sym("0")); }
inline GroundTerm one() { return GroundTerm(Sym("1")); }
inline GroundTerm plus(GroundTerm a, GroundTerm b) {
  return GroundTerm(Sym("+"), {std::move(a), std::move(b)});
}

inline StateTheory xy_state() {
  std::vector<Definition> defs;
  defs.push_back(Definition::constant(Sym("x"), plus(zero(), one())));
  defs.push_back(
      Definition::constant(Sym("y"), plus(plus(zero(), one()), one())));
  return relkit::theoria::mk_state(var_sig(), number_sig(), std::move(defs));
}

}  // namespace paper_example
