// relkit -- interpretations of rigid symbols, states as definitions of
// flexible symbols, and satisfaction of state formulae via their pushout.
#pragma once

#include "relkit/entail.hpp"

namespace relkit::theoria {

using entail::EntailBudget;
using entail::SchemaSentence;
using entail::TheoryPres;
using entail::Verdict;
using eqcore::EqSentence;
using eqcore::EqSignature;
using eqcore::GroundTerm;
using eqcore::SigMorphism;
using eqcore::SumSignature;
using eqcore::Sym;

// Equational theory presentation over a rigid-only signature.
struct InterpretationTheory {
  EqSignature rigid_sig;
  TheoryPres theory;  // theory.sig == rigid_sig, all symbols untagged

  auto operator<=>(const InterpretationTheory&) const = default;
};

InterpretationTheory mk_interpretation(
    const EqSignature& sig, std::vector<EqSentence> axioms,
    std::vector<SchemaSentence> schemas = {});

// One definition: a flexible symbol fixed by rigid ground terms.
class Definition {
 public:
  enum class Kind { constant, function, predicate };

  Definition() = default;

  // c := rhs
  static Definition constant(Sym flexible_constant, GroundTerm rhs);
  // f(args...) := rhs
  static Definition function(Sym flexible_function,
                             std::vector<GroundTerm> args, GroundTerm rhs);
  // p(args...)
  static Definition predicate(Sym flexible_predicate,
                              std::vector<GroundTerm> args);

  Kind kind() const { return kind_; }
  const Sym& lhs_symbol() const { return lhs_; }
  const std::vector<GroundTerm>& args() const { return args_; }
  const GroundTerm& rhs() const { return rhs_; }

  auto operator<=>(const Definition&) const = default;

 private:
  Kind kind_ = Kind::constant;
  Sym lhs_;
  std::vector<GroundTerm> args_;  // rigid terms
  GroundTerm rhs_;                // rigid term (constant/function kinds)
};

std::string to_string(const Definition& d);

// A state: definitions of flexible symbols over the rigid signature.
struct StateTheory {
  EqSignature flexible_sig;
  EqSignature rigid_sig;
  std::vector<Definition> defs;

  auto operator<=>(const StateTheory&) const = default;
};

StateTheory mk_state(const EqSignature& flexible_sig,
                     const EqSignature& rigid_sig,
                     std::vector<Definition> defs);

// The sum-signature sentence a definition denotes (lhs flexible, rest rigid).
EqSentence definition_sentence(const Definition& d);

// Amalgamation of an interpretation and a state over the shared rigid
// signature: the interpretation's axioms tagged rigid plus the state's
// definitions as sum-signature sentences.
struct PushoutTheory {
  SumSignature sum;
  TheoryPres theory;  // theory.sig == sum.combined

  auto operator<=>(const PushoutTheory&) const = default;
};

PushoutTheory pushout(const InterpretationTheory& i, const StateTheory& s);

// <I, s> satisfies alpha iff the pushout theory entails rho(alpha).
Verdict sat_state(const InterpretationTheory& i, const StateTheory& s,
                  const EqSentence& alpha, const EntailBudget& b);

// Componentwise renaming of a state along flexible/rigid morphisms.
StateTheory translate_state(const SigMorphism& m_flex,
                            const SigMorphism& m_rigid, const StateTheory& s);

// Renaming of an interpretation along a rigid morphism (axioms, schemas,
// and guards are renamed; metavariables are kept).
InterpretationTheory translate_interpretation(const SigMorphism& m_rigid,
                                              const InterpretationTheory& i);

// Tags every symbol of a plain sentence/schema with the given component.
EqSentence tag_sentence(eqcore::Tag tag, const EqSentence& s);
SchemaSentence tag_schema(eqcore::Tag tag, const SchemaSentence& s);

}  // namespace relkit::theoria
