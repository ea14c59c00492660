#include "relkit/eqcore.hpp"

#include <algorithm>
#include <sstream>

namespace relkit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::unknown_symbol: return "UnknownSymbol";
    case ErrorCode::arity_mismatch: return "ArityMismatch";
    case ErrorCode::duplicate_symbol: return "DuplicateSymbol";
    case ErrorCode::symbol_not_in_source: return "SymbolNotInSource";
    case ErrorCode::signature_mismatch: return "SignatureMismatch";
    case ErrorCode::budget_zero_with_schemas: return "BudgetZeroWithSchemas";
    case ErrorCode::ill_formed_goal: return "IllFormedGoal";
    case ErrorCode::flexible_symbol_in_interpretation:
      return "FlexibleSymbolInInterpretation";
    case ErrorCode::non_rigid_right_hand_side: return "NonRigidRightHandSide";
    case ErrorCode::unknown_flexible_symbol: return "UnknownFlexibleSymbol";
    case ErrorCode::unknown_relation_symbol: return "UnknownRelationSymbol";
    case ErrorCode::unbound_point_variable: return "UnboundPointVariable";
    case ErrorCode::unmapped_symbol: return "UnmappedSymbol";
    case ErrorCode::invalid_path: return "InvalidPath";
    case ErrorCode::frame_condition_violated: return "FrameConditionViolated";
    case ErrorCode::empty_quant_domain: return "EmptyQuantDomain";
    case ErrorCode::not_a_state_formula: return "NotAStateFormula";
    case ErrorCode::unknown_state_id: return "UnknownStateId";
  }
  return "Error";
}

}  // namespace relkit

namespace relkit::eqcore {

std::string to_string(const Sym& s) {
  switch (s.tag) {
    case Tag::plain: return s.name;
    case Tag::rigid: return "in_l(" + s.name + ")";
    case Tag::flexible: return "in_r(" + s.name + ")";
  }
  return s.name;
}

Sym rigid(std::string name) { return Sym(Tag::rigid, std::move(name)); }
Sym flexible(std::string name) { return Sym(Tag::flexible, std::move(name)); }

void EqSignature::check_fresh(const Sym& s) const {
  if (has(s))
    throw Error(ErrorCode::duplicate_symbol,
                "symbol '" + to_string(s) + "' declared twice");
}

void EqSignature::add_constant(const Sym& s) {
  check_fresh(s);
  constants_.insert(s);
}

void EqSignature::add_function(const Sym& s, int arity) {
  if (arity < 1)
    throw Error(ErrorCode::arity_mismatch,
                "function '" + to_string(s) + "' needs arity >= 1");
  check_fresh(s);
  functions_.emplace(s, arity);
}

void EqSignature::add_predicate(const Sym& s, int arity) {
  if (arity < 0)
    throw Error(ErrorCode::arity_mismatch,
                "predicate '" + to_string(s) + "' needs arity >= 0");
  check_fresh(s);
  predicates_.emplace(s, arity);
}

bool EqSignature::has(const Sym& s) const {
  return constants_.count(s) || functions_.count(s) || predicates_.count(s);
}

std::optional<SymbolKind> EqSignature::kind(const Sym& s) const {
  if (constants_.count(s)) return SymbolKind::constant;
  if (functions_.count(s)) return SymbolKind::function;
  if (predicates_.count(s)) return SymbolKind::predicate;
  return std::nullopt;
}

int EqSignature::arity(const Sym& s) const {
  if (constants_.count(s)) return 0;
  if (auto it = functions_.find(s); it != functions_.end()) return it->second;
  if (auto it = predicates_.find(s); it != predicates_.end()) return it->second;
  throw Error(ErrorCode::unknown_symbol,
              "symbol '" + to_string(s) + "' not declared");
}

namespace {

void require_plain(const EqSignature& sig, const char* side) {
  auto check = [&](const Sym& s) {
    if (s.tag != Tag::plain)
      throw Error(ErrorCode::signature_mismatch,
                  std::string(side) + " component of a sum must be untagged");
  };
  for (const auto& c : sig.constants()) check(c);
  for (const auto& [f, a] : sig.functions()) check(f);
  for (const auto& [p, a] : sig.predicates()) check(p);
}

}  // namespace

SumSignature sum_signature(const EqSignature& left_rigid,
                           const EqSignature& right_flexible) {
  require_plain(left_rigid, "left");
  require_plain(right_flexible, "right");
  SumSignature sum;
  sum.rigid = left_rigid;
  sum.flexible = right_flexible;
  for (const auto& c : left_rigid.constants())
    sum.combined.add_constant(rigid(c.name));
  for (const auto& [f, a] : left_rigid.functions())
    sum.combined.add_function(rigid(f.name), a);
  for (const auto& [p, a] : left_rigid.predicates())
    sum.combined.add_predicate(rigid(p.name), a);
  for (const auto& c : right_flexible.constants())
    sum.combined.add_constant(flexible(c.name));
  for (const auto& [f, a] : right_flexible.functions())
    sum.combined.add_function(flexible(f.name), a);
  for (const auto& [p, a] : right_flexible.predicates())
    sum.combined.add_predicate(flexible(p.name), a);
  return sum;
}

int GroundTerm::depth() const {
  int d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth());
  return d + 1;
}

std::string to_string(const GroundTerm& t) {
  std::string out = to_string(t.symbol());
  if (!t.is_leaf()) {
    out += "(";
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ", ";
      out += to_string(t.args()[i]);
    }
    out += ")";
  }
  return out;
}

GroundTerm mk_term(const EqSignature& sig, const Sym& symbol,
                   std::vector<GroundTerm> args) {
  auto k = sig.kind(symbol);
  if (!k || *k == SymbolKind::predicate)
    throw Error(ErrorCode::unknown_symbol,
                "'" + to_string(symbol) + "' is not a constant or function");
  int want = sig.arity(symbol);
  if (static_cast<int>(args.size()) != want)
    throw Error(ErrorCode::arity_mismatch,
                "'" + to_string(symbol) + "' expects " + std::to_string(want) +
                    " arguments, got " + std::to_string(args.size()));
  for (const auto& a : args) check_term(sig, a);
  if (args.empty()) return GroundTerm(symbol);
  return GroundTerm(symbol, std::move(args));
}

void check_term(const EqSignature& sig, const GroundTerm& t) {
  auto k = sig.kind(t.symbol());
  if (!k || *k == SymbolKind::predicate)
    throw Error(ErrorCode::unknown_symbol,
                "'" + to_string(t.symbol()) + "' is not a constant or function");
  int want = sig.arity(t.symbol());
  if (static_cast<int>(t.args().size()) != want)
    throw Error(ErrorCode::arity_mismatch,
                "'" + to_string(t.symbol()) + "' expects " +
                    std::to_string(want) + " arguments, got " +
                    std::to_string(t.args().size()));
  for (const auto& a : t.args()) check_term(sig, a);
}

EqSentence EqSentence::equation(GroundTerm lhs, GroundTerm rhs) {
  EqSentence s;
  s.is_equation_ = true;
  s.lhs_ = std::move(lhs);
  s.rhs_ = std::move(rhs);
  return s;
}

EqSentence EqSentence::pred_app(Sym pred, std::vector<GroundTerm> args) {
  EqSentence s;
  s.is_equation_ = false;
  s.pred_ = std::move(pred);
  s.args_ = std::move(args);
  return s;
}

std::string to_string(const EqSentence& s) {
  if (s.is_equation())
    return to_string(s.lhs()) + " = " + to_string(s.rhs());
  std::string out = to_string(s.pred());
  out += "(";
  for (size_t i = 0; i < s.args().size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.args()[i]);
  }
  out += ")";
  return out;
}

void check_sentence(const EqSignature& sig, const EqSentence& s) {
  if (s.is_equation()) {
    check_term(sig, s.lhs());
    check_term(sig, s.rhs());
    return;
  }
  if (!sig.is_predicate(s.pred()))
    throw Error(ErrorCode::unknown_symbol,
                "'" + to_string(s.pred()) + "' is not a predicate");
  int want = sig.arity(s.pred());
  if (static_cast<int>(s.args().size()) != want)
    throw Error(ErrorCode::arity_mismatch,
                "'" + to_string(s.pred()) + "' expects " +
                    std::to_string(want) + " arguments, got " +
                    std::to_string(s.args().size()));
  for (const auto& a : s.args()) check_term(sig, a);
}

SigMorphism::SigMorphism(EqSignature source, EqSignature target,
                         std::map<Sym, Sym> constant_map,
                         std::map<Sym, Sym> function_map,
                         std::map<Sym, Sym> predicate_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      cmap_(std::move(constant_map)),
      fmap_(std::move(function_map)),
      pmap_(std::move(predicate_map)) {
  for (const auto& c : source_.constants()) {
    auto it = cmap_.find(c);
    if (it == cmap_.end())
      throw Error(ErrorCode::symbol_not_in_source,
                  "constant '" + to_string(c) + "' has no image");
    if (!target_.is_constant(it->second))
      throw Error(ErrorCode::unknown_symbol,
                  "image '" + to_string(it->second) + "' is not a constant of the target");
  }
  for (const auto& [f, a] : source_.functions()) {
    auto it = fmap_.find(f);
    if (it == fmap_.end())
      throw Error(ErrorCode::symbol_not_in_source,
                  "function '" + to_string(f) + "' has no image");
    if (!target_.is_function(it->second) || target_.arity(it->second) != a)
      throw Error(ErrorCode::arity_mismatch,
                  "image of '" + to_string(f) + "' must be a function of arity " +
                      std::to_string(a));
  }
  for (const auto& [p, a] : source_.predicates()) {
    auto it = pmap_.find(p);
    if (it == pmap_.end())
      throw Error(ErrorCode::symbol_not_in_source,
                  "predicate '" + to_string(p) + "' has no image");
    if (!target_.is_predicate(it->second) || target_.arity(it->second) != a)
      throw Error(ErrorCode::arity_mismatch,
                  "image of '" + to_string(p) + "' must be a predicate of arity " +
                      std::to_string(a));
  }
}

SigMorphism SigMorphism::identity(const EqSignature& sig) {
  std::map<Sym, Sym> cm, fm, pm;
  for (const auto& c : sig.constants()) cm.emplace(c, c);
  for (const auto& [f, a] : sig.functions()) fm.emplace(f, f);
  for (const auto& [p, a] : sig.predicates()) pm.emplace(p, p);
  return SigMorphism(sig, sig, std::move(cm), std::move(fm), std::move(pm));
}

namespace {

Sym lookup(const std::map<Sym, Sym>& m, const Sym& s, const char* what) {
  auto it = m.find(s);
  if (it == m.end())
    throw Error(ErrorCode::symbol_not_in_source,
                std::string(what) + " '" + to_string(s) + "' not in the source signature");
  return it->second;
}

}  // namespace

Sym SigMorphism::map_constant(const Sym& s) const {
  return lookup(cmap_, s, "constant");
}
Sym SigMorphism::map_function(const Sym& s) const {
  return lookup(fmap_, s, "function");
}
Sym SigMorphism::map_predicate(const Sym& s) const {
  return lookup(pmap_, s, "predicate");
}

GroundTerm translate_term(const SigMorphism& m, const GroundTerm& t) {
  if (t.is_leaf()) return GroundTerm(m.map_constant(t.symbol()));
  std::vector<GroundTerm> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(translate_term(m, a));
  return GroundTerm(m.map_function(t.symbol()), std::move(args));
}

EqSentence translate_sentence(const SigMorphism& m, const EqSentence& s) {
  if (s.is_equation())
    return EqSentence::equation(translate_term(m, s.lhs()),
                                translate_term(m, s.rhs()));
  std::vector<GroundTerm> args;
  args.reserve(s.args().size());
  for (const auto& a : s.args()) args.push_back(translate_term(m, a));
  return EqSentence::pred_app(m.map_predicate(s.pred()), std::move(args));
}

SigMorphism compose_morphisms(const SigMorphism& m1, const SigMorphism& m2) {
  if (m1.target() != m2.source())
    throw Error(ErrorCode::signature_mismatch,
                "target of the first morphism differs from source of the second");
  std::map<Sym, Sym> cm, fm, pm;
  for (const auto& c : m1.source().constants())
    cm.emplace(c, m2.map_constant(m1.map_constant(c)));
  for (const auto& [f, a] : m1.source().functions())
    fm.emplace(f, m2.map_function(m1.map_function(f)));
  for (const auto& [p, a] : m1.source().predicates())
    pm.emplace(p, m2.map_predicate(m1.map_predicate(p)));
  return SigMorphism(m1.source(), m2.target(), std::move(cm), std::move(fm),
                     std::move(pm));
}

namespace {

SigMorphism injection(const EqSignature& component, Tag tag,
                      const EqSignature& combined) {
  std::map<Sym, Sym> cm, fm, pm;
  for (const auto& c : component.constants()) cm.emplace(c, Sym(tag, c.name));
  for (const auto& [f, a] : component.functions())
    fm.emplace(f, Sym(tag, f.name));
  for (const auto& [p, a] : component.predicates())
    pm.emplace(p, Sym(tag, p.name));
  return SigMorphism(component, combined, std::move(cm), std::move(fm),
                     std::move(pm));
}

}  // namespace

SigMorphism left_injection(const SumSignature& sum) {
  return injection(sum.rigid, Tag::rigid, sum.combined);
}

SigMorphism right_injection(const SumSignature& sum) {
  return injection(sum.flexible, Tag::flexible, sum.combined);
}

SigMorphism sum_morphism(const SigMorphism& rigid_m,
                         const SigMorphism& flexible_m) {
  SumSignature src = sum_signature(rigid_m.source(), flexible_m.source());
  SumSignature dst = sum_signature(rigid_m.target(), flexible_m.target());
  std::map<Sym, Sym> cm, fm, pm;
  for (const auto& c : rigid_m.source().constants())
    cm.emplace(rigid(c.name), rigid(rigid_m.map_constant(c).name));
  for (const auto& [f, a] : rigid_m.source().functions())
    fm.emplace(rigid(f.name), rigid(rigid_m.map_function(f).name));
  for (const auto& [p, a] : rigid_m.source().predicates())
    pm.emplace(rigid(p.name), rigid(rigid_m.map_predicate(p).name));
  for (const auto& c : flexible_m.source().constants())
    cm.emplace(flexible(c.name), flexible(flexible_m.map_constant(c).name));
  for (const auto& [f, a] : flexible_m.source().functions())
    fm.emplace(flexible(f.name), flexible(flexible_m.map_function(f).name));
  for (const auto& [p, a] : flexible_m.source().predicates())
    pm.emplace(flexible(p.name), flexible(flexible_m.map_predicate(p).name));
  return SigMorphism(src.combined, dst.combined, std::move(cm), std::move(fm),
                     std::move(pm));
}

}  // namespace relkit::eqcore
