// relkit -- satisfaction checkers for LTL, CTL, FODL and FOCTL* over
// (interpretation, frame, point) models; state atoms are decided through
// the pushout entailment of theoria.
#pragma once

#include <functional>
#include <optional>
#include <set>

#include "relkit/relalg.hpp"

namespace relkit::logics {

using entail::EntailBudget;
using entail::Truth;
using entail::Verdict;
using eqcore::EqSentence;
using eqcore::EqSignature;
using eqcore::GroundTerm;
using relalg::FiniteFrame;
using theoria::InterpretationTheory;

// Conventional relation names of the temporal frames.
inline constexpr const char* kTransition = "T";
inline constexpr const char* kInitial = "St0";

// Finite representation of an ultimately periodic path.
struct LassoPath {
  std::vector<std::string> prefix;
  std::vector<std::string> cycle;  // non-empty

  auto operator<=>(const LassoPath&) const = default;
};

// Checks that consecutive states (including the wrap-around) are related by
// the frame's transition relation.
void check_lasso(const FiniteFrame& f, const LassoPath& pi);

// Finite range for the existential quantifier, per flexible constant.
struct QuantDomain {
  std::map<std::string, std::vector<GroundTerm>> ranges;

  auto operator<=>(const QuantDomain&) const = default;
};

// --- rho translation -----------------------------------------------------

// Tags an untagged atomic sentence over the sum of the two signatures:
// symbols found in the rigid signature are tagged rigid, symbols of the
// flexible signature flexible; already-tagged symbols are kept.
EqSentence rho_translate_atom(const EqSignature& rigid_sig,
                              const EqSignature& flexible_sig,
                              const EqSentence& atom);

// A propositional atom becomes a zero-arity flexible predicate.
EqSentence rho_translate_prop(const EqSignature& flexible_sig,
                              const std::string& name);

using AtomPrinter = std::function<std::string(const EqSentence&)>;
AtomPrinter default_atom_printer();

// --- LTL -------------------------------------------------------------------

class LtlFormula {
 public:
  enum class Kind { atom, tt, neg, lor, next, until };

  LtlFormula() = default;

  static LtlFormula atom(EqSentence s);
  static LtlFormula tt();
  static LtlFormula neg(LtlFormula a);
  static LtlFormula lor(LtlFormula a, LtlFormula b);
  static LtlFormula next(LtlFormula a);
  static LtlFormula until(LtlFormula a, LtlFormula b);

  // derived operators, expanded on construction
  static LtlFormula ff() { return neg(tt()); }
  static LtlFormula land(LtlFormula a, LtlFormula b);
  static LtlFormula implies(LtlFormula a, LtlFormula b);
  static LtlFormula eventually(LtlFormula a);          // F
  static LtlFormula always(LtlFormula a);              // G
  static LtlFormula release(LtlFormula a, LtlFormula b);        // R
  static LtlFormula weak_until(LtlFormula a, LtlFormula b);     // W
  static LtlFormula strong_release(LtlFormula a, LtlFormula b); // M

  Kind kind() const { return node_->kind; }
  const EqSentence& atom_sentence() const { return node_->atom; }
  const LtlFormula& left() const { return node_->children[0]; }
  const LtlFormula& right() const { return node_->children[1]; }
  const void* id() const { return node_.get(); }

  bool operator==(const LtlFormula& o) const;

  // maximum nesting of temporal operators (X/U)
  int temporal_depth() const;

 private:
  struct Node {
    Kind kind;
    EqSentence atom;
    std::vector<LtlFormula> children;
  };
  std::shared_ptr<const Node> node_;
};

std::string to_string(const LtlFormula& f,
                      const AtomPrinter& atoms = default_atom_printer());

// Checks that the frame satisfies the LTL frame conditions: T total and
// functional, St0 (when declared) contained in the identity.
void check_ltl_frame(const FiniteFrame& f);

// The unique lasso obtained by iterating the transition from `start`.
LassoPath path_from(const FiniteFrame& f, const std::string& start);

Verdict ltl_check(const InterpretationTheory& i, const FiniteFrame& f,
                  const LassoPath& pi, const LtlFormula& phi,
                  const EntailBudget& b);

// --- CTL -------------------------------------------------------------------

class CtlFormula {
 public:
  enum class Kind { atom, tt, neg, lor, ex, eg, eu };

  CtlFormula() = default;

  static CtlFormula atom(EqSentence s);
  static CtlFormula tt();
  static CtlFormula neg(CtlFormula a);
  static CtlFormula lor(CtlFormula a, CtlFormula b);
  static CtlFormula ex(CtlFormula a);
  static CtlFormula eg(CtlFormula a);
  static CtlFormula eu(CtlFormula a, CtlFormula b);

  // derived operators, expanded on construction
  static CtlFormula ff() { return neg(tt()); }
  static CtlFormula land(CtlFormula a, CtlFormula b);
  static CtlFormula implies(CtlFormula a, CtlFormula b);
  static CtlFormula ef(CtlFormula a);
  static CtlFormula ax(CtlFormula a);
  static CtlFormula af(CtlFormula a);
  static CtlFormula ag(CtlFormula a);
  static CtlFormula au(CtlFormula a, CtlFormula b);

  Kind kind() const { return node_->kind; }
  const EqSentence& atom_sentence() const { return node_->atom; }
  const CtlFormula& left() const { return node_->children[0]; }
  const CtlFormula& right() const { return node_->children[1]; }
  const void* id() const { return node_.get(); }

  bool operator==(const CtlFormula& o) const;

 private:
  struct Node {
    Kind kind;
    EqSentence atom;
    std::vector<CtlFormula> children;
  };
  std::shared_ptr<const Node> node_;
};

std::string to_string(const CtlFormula& f,
                      const AtomPrinter& atoms = default_atom_printer());

Verdict ctl_check(const InterpretationTheory& i, const FiniteFrame& f,
                  const std::string& state, const CtlFormula& phi,
                  const EntailBudget& b);

// --- FODL ------------------------------------------------------------------

class FodlFormula;

class Program {
 public:
  enum class Kind { atomic, test, choice, seq, star };

  Program() = default;

  static Program atomic(std::string name);
  static Program test(FodlFormula condition);
  static Program choice(Program a, Program b);
  static Program seq(Program a, Program b);
  static Program star(Program a);

  Kind kind() const;
  const std::string& name() const;
  const FodlFormula& condition() const;
  const Program& left() const;
  const Program& right() const;
  const Program& arg() const;
  const void* id() const;

  bool operator==(const Program& o) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

class FodlFormula {
 public:
  enum class Kind { atom, tt, neg, lor, exists_, diamond };

  FodlFormula() = default;

  static FodlFormula atom(EqSentence s);
  static FodlFormula tt();
  static FodlFormula neg(FodlFormula a);
  static FodlFormula lor(FodlFormula a, FodlFormula b);
  static FodlFormula exists(std::string var, FodlFormula a);
  static FodlFormula diamond(Program p, FodlFormula a);

  // derived operators, expanded on construction
  static FodlFormula ff() { return neg(tt()); }
  static FodlFormula land(FodlFormula a, FodlFormula b);
  static FodlFormula implies(FodlFormula a, FodlFormula b);
  static FodlFormula box(Program p, FodlFormula a);

  Kind kind() const;
  const EqSentence& atom_sentence() const;
  const std::string& var() const;
  const Program& program() const;
  const FodlFormula& left() const;
  const FodlFormula& right() const;
  const void* id() const;

  bool operator==(const FodlFormula& o) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

// Regular-program sugar.
Program if_then_else(FodlFormula cond, Program then_p, Program else_p);
Program while_do(FodlFormula cond, Program body);

std::string to_string(const Program& p,
                      const AtomPrinter& atoms = default_atom_printer());
std::string to_string(const FodlFormula& f,
                      const AtomPrinter& atoms = default_atom_printer());

// `deterministic` lists atomic programs that must be total and functional
// in the frame; violations raise FrameConditionViolated.
Verdict fodl_check(const InterpretationTheory& i, const FiniteFrame& f,
                   const std::string& state, const FodlFormula& phi,
                   const QuantDomain& qd, const EntailBudget& b,
                   const std::set<std::string>& deterministic = {});

// --- FOCTL* ------------------------------------------------------------------

class PathFormula;

class StateFormula {
 public:
  enum class Kind { atom, tt, neg, lor, exists_, epath };

  StateFormula() = default;

  static StateFormula atom(EqSentence s);
  static StateFormula tt();
  static StateFormula neg(StateFormula a);
  static StateFormula lor(StateFormula a, StateFormula b);
  static StateFormula exists(std::string var, StateFormula a);
  static StateFormula epath(PathFormula p);

  static StateFormula ff() { return neg(tt()); }
  static StateFormula land(StateFormula a, StateFormula b);
  static StateFormula implies(StateFormula a, StateFormula b);

  Kind kind() const;
  const EqSentence& atom_sentence() const;
  const std::string& var() const;
  const PathFormula& path() const;
  const StateFormula& left() const;
  const StateFormula& right() const;
  const void* id() const;

  bool operator==(const StateFormula& o) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

class PathFormula {
 public:
  enum class Kind { state, neg, lor, next, until };

  PathFormula() = default;

  static PathFormula state(StateFormula s);
  static PathFormula neg(PathFormula a);
  static PathFormula lor(PathFormula a, PathFormula b);
  static PathFormula next(PathFormula a);
  static PathFormula until(PathFormula a, PathFormula b);

  // temporal sugar, as for LTL
  static PathFormula land(PathFormula a, PathFormula b);
  static PathFormula implies(PathFormula a, PathFormula b);
  static PathFormula eventually(PathFormula a);
  static PathFormula always(PathFormula a);
  static PathFormula release(PathFormula a, PathFormula b);
  static PathFormula weak_until(PathFormula a, PathFormula b);
  static PathFormula strong_release(PathFormula a, PathFormula b);

  Kind kind() const;
  const StateFormula& state_formula() const;
  const PathFormula& left() const;
  const PathFormula& right() const;
  const void* id() const;

  bool operator==(const PathFormula& o) const;

  // number of distinct temporal (X/U) subformulae
  int temporal_count() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

std::string to_string(const StateFormula& f,
                      const AtomPrinter& atoms = default_atom_printer());
std::string to_string(const PathFormula& f,
                      const AtomPrinter& atoms = default_atom_printer());

// Existential path quantification is a bounded lasso search with prefix and
// cycle length at most `bound`.  Without a witness the verdict is false only
// when the bound reaches the ultimately-periodic completeness threshold
// |base| * 2^(#temporal subformulae); otherwise it is unknown.
Verdict foctlstar_check(const InterpretationTheory& i, const FiniteFrame& f,
                        const std::string& state, const StateFormula& phi,
                        const QuantDomain& qd, int bound,
                        const EntailBudget& b);

Verdict foctlstar_check_path(const InterpretationTheory& i,
                             const FiniteFrame& f, const LassoPath& pi,
                             const PathFormula& phi, const QuantDomain& qd,
                             int bound, const EntailBudget& b);

struct PathWitness {
  Verdict verdict;
  std::optional<LassoPath> lasso;  // set for a true top-level E formula
};

// As foctlstar_check, additionally reporting the witness lasso when the
// formula is a top-level E and the verdict is true.
PathWitness foctlstar_check_witness(const InterpretationTheory& i,
                                    const FiniteFrame& f,
                                    const std::string& state,
                                    const StateFormula& phi,
                                    const QuantDomain& qd, int bound,
                                    const EntailBudget& b);

}  // namespace relkit::logics
