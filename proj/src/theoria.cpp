#include "relkit/theoria.hpp"

#include <algorithm>

namespace relkit::theoria {

using eqcore::Tag;
using entail::SchemaTerm;

namespace {

void require_untagged(const EqSignature& sig, const char* what) {
  auto bad = [&](const Sym& s) { return s.tag != Tag::plain; };
  for (const auto& c : sig.constants())
    if (bad(c))
      throw Error(ErrorCode::signature_mismatch,
                  std::string(what) + " signature must be untagged");
  for (const auto& [f, a] : sig.functions())
    if (bad(f))
      throw Error(ErrorCode::signature_mismatch,
                  std::string(what) + " signature must be untagged");
  for (const auto& [p, a] : sig.predicates())
    if (bad(p))
      throw Error(ErrorCode::signature_mismatch,
                  std::string(what) + " signature must be untagged");
}

}  // namespace

InterpretationTheory mk_interpretation(
    const EqSignature& sig, std::vector<EqSentence> axioms,
    std::vector<SchemaSentence> schemas) {
  require_untagged(sig, "interpretation");
  InterpretationTheory i;
  i.rigid_sig = sig;
  i.theory.sig = sig;
  i.theory.ground_axioms = std::move(axioms);
  i.theory.schemas = std::move(schemas);
  try {
    entail::check_theory(i.theory);
  } catch (const Error& e) {
    throw Error(ErrorCode::flexible_symbol_in_interpretation, e.what());
  }
  return i;
}

Definition Definition::constant(Sym flexible_constant, GroundTerm rhs) {
  Definition d;
  d.kind_ = Kind::constant;
  d.lhs_ = std::move(flexible_constant);
  d.rhs_ = std::move(rhs);
  return d;
}

Definition Definition::function(Sym flexible_function,
                                std::vector<GroundTerm> args, GroundTerm rhs) {
  Definition d;
  d.kind_ = Kind::function;
  d.lhs_ = std::move(flexible_function);
  d.args_ = std::move(args);
  d.rhs_ = std::move(rhs);
  return d;
}

Definition Definition::predicate(Sym flexible_predicate,
                                 std::vector<GroundTerm> args) {
  Definition d;
  d.kind_ = Kind::predicate;
  d.lhs_ = std::move(flexible_predicate);
  d.args_ = std::move(args);
  return d;
}

std::string to_string(const Definition& d) {
  std::string out = d.lhs_symbol().name;
  if (d.kind() != Definition::Kind::constant || !d.args().empty()) {
    if (!d.args().empty() || d.kind() == Definition::Kind::function ||
        d.kind() == Definition::Kind::predicate) {
      out += "(";
      for (size_t i = 0; i < d.args().size(); ++i) {
        if (i) out += ", ";
        out += eqcore::to_string(d.args()[i]);
      }
      out += ")";
    }
  }
  if (d.kind() != Definition::Kind::predicate)
    out += " := " + eqcore::to_string(d.rhs());
  return out;
}

StateTheory mk_state(const EqSignature& flexible_sig,
                     const EqSignature& rigid_sig,
                     std::vector<Definition> defs) {
  require_untagged(flexible_sig, "flexible");
  require_untagged(rigid_sig, "rigid");
  for (const auto& d : defs) {
    const Sym& lhs = d.lhs_symbol();
    if (!flexible_sig.has(lhs))
      throw Error(ErrorCode::unknown_flexible_symbol,
                  "'" + lhs.name + "' is not a flexible symbol");
    switch (d.kind()) {
      case Definition::Kind::constant:
        if (!flexible_sig.is_constant(lhs))
          throw Error(ErrorCode::unknown_flexible_symbol,
                      "'" + lhs.name + "' is not a flexible constant");
        break;
      case Definition::Kind::function:
        if (!flexible_sig.is_function(lhs) ||
            flexible_sig.arity(lhs) != static_cast<int>(d.args().size()))
          throw Error(ErrorCode::arity_mismatch,
                      "definition of '" + lhs.name + "' has wrong arity");
        break;
      case Definition::Kind::predicate:
        if (!flexible_sig.is_predicate(lhs) ||
            flexible_sig.arity(lhs) != static_cast<int>(d.args().size()))
          throw Error(ErrorCode::arity_mismatch,
                      "definition of '" + lhs.name + "' has wrong arity");
        break;
    }
    try {
      for (const auto& a : d.args()) eqcore::check_term(rigid_sig, a);
      if (d.kind() != Definition::Kind::predicate)
        eqcore::check_term(rigid_sig, d.rhs());
    } catch (const Error& e) {
      throw Error(ErrorCode::non_rigid_right_hand_side,
                  std::string("definition of '") + lhs.name +
                      "' uses a non-rigid term: " + e.what());
    }
  }
  return StateTheory{flexible_sig, rigid_sig, std::move(defs)};
}

namespace {

GroundTerm tag_term(Tag tag, const GroundTerm& t) {
  if (t.is_leaf()) return GroundTerm(Sym(tag, t.symbol().name));
  std::vector<GroundTerm> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(tag_term(tag, a));
  return GroundTerm(Sym(tag, t.symbol().name), std::move(args));
}

SchemaTerm tag_schema_term(Tag tag, const SchemaTerm& t) {
  if (t.is_meta()) return t;
  if (t.args().empty()) return SchemaTerm::leaf(Sym(tag, t.symbol().name));
  std::vector<SchemaTerm> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(tag_schema_term(tag, a));
  return SchemaTerm::app(Sym(tag, t.symbol().name), std::move(args));
}

}  // namespace

EqSentence tag_sentence(Tag tag, const EqSentence& s) {
  if (s.is_equation())
    return EqSentence::equation(tag_term(tag, s.lhs()), tag_term(tag, s.rhs()));
  std::vector<GroundTerm> args;
  args.reserve(s.args().size());
  for (const auto& a : s.args()) args.push_back(tag_term(tag, a));
  return EqSentence::pred_app(Sym(tag, s.pred().name), std::move(args));
}

SchemaSentence tag_schema(Tag tag, const SchemaSentence& s) {
  SchemaSentence out;
  if (s.is_equation())
    out = SchemaSentence::equation(s.metavars(), tag_schema_term(tag, s.lhs()),
                                   tag_schema_term(tag, s.rhs()));
  else {
    std::vector<SchemaTerm> args;
    args.reserve(s.args().size());
    for (const auto& a : s.args()) args.push_back(tag_schema_term(tag, a));
    out = SchemaSentence::pred_app(s.metavars(), Sym(tag, s.pred().name),
                                   std::move(args));
  }
  for (const auto& [mv, terms] : s.guards())
    for (const auto& g : terms) out.add_guard(mv, tag_term(tag, g));
  out.set_range_tag(tag);
  return out;
}

EqSentence definition_sentence(const Definition& d) {
  Sym lhs(Tag::flexible, d.lhs_symbol().name);
  switch (d.kind()) {
    case Definition::Kind::constant:
      return EqSentence::equation(GroundTerm(lhs),
                                  tag_term(Tag::rigid, d.rhs()));
    case Definition::Kind::function: {
      std::vector<GroundTerm> args;
      args.reserve(d.args().size());
      for (const auto& a : d.args()) args.push_back(tag_term(Tag::rigid, a));
      return EqSentence::equation(GroundTerm(lhs, std::move(args)),
                                  tag_term(Tag::rigid, d.rhs()));
    }
    case Definition::Kind::predicate: {
      std::vector<GroundTerm> args;
      args.reserve(d.args().size());
      for (const auto& a : d.args()) args.push_back(tag_term(Tag::rigid, a));
      return EqSentence::pred_app(lhs, std::move(args));
    }
  }
  throw Error(ErrorCode::unknown_symbol, "corrupt definition");
}

PushoutTheory pushout(const InterpretationTheory& i, const StateTheory& s) {
  if (i.rigid_sig != s.rigid_sig)
    throw Error(ErrorCode::signature_mismatch,
                "interpretation and state disagree on the rigid signature");
  PushoutTheory p;
  p.sum = eqcore::sum_signature(i.rigid_sig, s.flexible_sig);
  p.theory.sig = p.sum.combined;
  for (const auto& ax : i.theory.ground_axioms)
    p.theory.ground_axioms.push_back(tag_sentence(Tag::rigid, ax));
  for (const auto& d : s.defs)
    p.theory.ground_axioms.push_back(definition_sentence(d));
  for (const auto& sc : i.theory.schemas)
    p.theory.schemas.push_back(tag_schema(Tag::rigid, sc));
  return p;
}

Verdict sat_state(const InterpretationTheory& i, const StateTheory& s,
                  const EqSentence& alpha, const EntailBudget& b) {
  PushoutTheory p = pushout(i, s);
  return entail::entails(p.theory, alpha, b);
}

StateTheory translate_state(const SigMorphism& m_flex,
                            const SigMorphism& m_rigid, const StateTheory& s) {
  if (m_flex.source() != s.flexible_sig || m_rigid.source() != s.rigid_sig)
    throw Error(ErrorCode::signature_mismatch,
                "morphism sources do not match the state's signatures");
  std::vector<Definition> defs;
  defs.reserve(s.defs.size());
  for (const auto& d : s.defs) {
    std::vector<GroundTerm> args;
    args.reserve(d.args().size());
    for (const auto& a : d.args()) args.push_back(translate_term(m_rigid, a));
    switch (d.kind()) {
      case Definition::Kind::constant:
        defs.push_back(Definition::constant(m_flex.map_constant(d.lhs_symbol()),
                                            translate_term(m_rigid, d.rhs())));
        break;
      case Definition::Kind::function:
        defs.push_back(Definition::function(m_flex.map_function(d.lhs_symbol()),
                                            std::move(args),
                                            translate_term(m_rigid, d.rhs())));
        break;
      case Definition::Kind::predicate:
        defs.push_back(Definition::predicate(
            m_flex.map_predicate(d.lhs_symbol()), std::move(args)));
        break;
    }
  }
  return mk_state(m_flex.target(), m_rigid.target(), std::move(defs));
}

namespace {

SchemaTerm translate_schema_term(const SigMorphism& m, const SchemaTerm& t) {
  if (t.is_meta()) return t;
  if (t.args().empty()) return SchemaTerm::leaf(m.map_constant(t.symbol()));
  std::vector<SchemaTerm> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(translate_schema_term(m, a));
  return SchemaTerm::app(m.map_function(t.symbol()), std::move(args));
}

}  // namespace

InterpretationTheory translate_interpretation(const SigMorphism& m_rigid,
                                              const InterpretationTheory& i) {
  if (m_rigid.source() != i.rigid_sig)
    throw Error(ErrorCode::signature_mismatch,
                "morphism source does not match the interpretation");
  std::vector<EqSentence> axioms;
  axioms.reserve(i.theory.ground_axioms.size());
  for (const auto& ax : i.theory.ground_axioms)
    axioms.push_back(translate_sentence(m_rigid, ax));
  std::vector<SchemaSentence> schemas;
  schemas.reserve(i.theory.schemas.size());
  for (const auto& sc : i.theory.schemas) {
    SchemaSentence out;
    if (sc.is_equation())
      out = SchemaSentence::equation(sc.metavars(),
                                     translate_schema_term(m_rigid, sc.lhs()),
                                     translate_schema_term(m_rigid, sc.rhs()));
    else {
      std::vector<SchemaTerm> args;
      args.reserve(sc.args().size());
      for (const auto& a : sc.args())
        args.push_back(translate_schema_term(m_rigid, a));
      out = SchemaSentence::pred_app(
          sc.metavars(), m_rigid.map_predicate(sc.pred()), std::move(args));
    }
    for (const auto& [mv, terms] : sc.guards())
      for (const auto& g : terms)
        out.add_guard(mv, translate_term(m_rigid, g));
    out.set_range_tag(sc.range_tag());
    schemas.push_back(std::move(out));
  }
  return mk_interpretation(m_rigid.target(), std::move(axioms),
                           std::move(schemas));
}

}  // namespace relkit::theoria
