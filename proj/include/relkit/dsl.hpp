// relkit -- the .rks specification language: parser, workspace, printer.
#pragma once

#include <optional>
#include <variant>

#include "relkit/logics.hpp"

namespace relkit::dsl {

using entail::EntailBudget;
using entail::SchemaSentence;
using eqcore::EqSentence;
using eqcore::EqSignature;
using eqcore::GroundTerm;
using logics::QuantDomain;
using relalg::FiniteFrame;
using relalg::FrameMap;
using relalg::RelFormula;
using theoria::InterpretationTheory;
using theoria::StateTheory;

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  int line = 1;
  int col = 1;
  std::string message;
  std::string suggestion;
};

std::string to_string(const Diagnostic& d);

enum class LogicKind { ltl, ctl, pdl, ctlstar };

const char* logic_name(LogicKind k);

using LogicFormula = std::variant<logics::LtlFormula, logics::CtlFormula,
                                  logics::FodlFormula, logics::StateFormula>;

// --- declarations, in source order ------------------------------------------

struct SigItem {
  enum class Kind { constants, functions, predicates };
  Kind kind = Kind::constants;
  std::vector<std::pair<std::string, int>> entries;  // (name, arity)

  auto operator<=>(const SigItem&) const = default;
};

struct SignatureDecl {
  std::string name;
  std::vector<SigItem> items;
  EqSignature sig;

  auto operator<=>(const SignatureDecl&) const = default;
};

struct InterpItem {
  bool is_schema = false;
  std::vector<std::string> metavars;
  std::vector<std::pair<std::string, GroundTerm>> guards;
  std::vector<EqSentence> axioms;        // when !is_schema
  std::vector<SchemaSentence> schemas;   // when is_schema

  auto operator<=>(const InterpItem&) const = default;
};

struct InterpretationDecl {
  std::string name;
  std::string sig_name;
  std::vector<InterpItem> items;
  InterpretationTheory interp;

  auto operator<=>(const InterpretationDecl&) const = default;
};

struct StateDecl {
  std::string name;
  std::string flex_sig_name;
  std::string rigid_sig_name;
  StateTheory state;

  auto operator<=>(const StateDecl&) const = default;
};

struct FrameDecl {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
      rels;  // relation name -> pair list, in source order
  FiniteFrame frame;

  bool operator==(const FrameDecl& o) const;
};

struct CondItem {
  enum class Kind { total, functional, initial, formula };
  Kind kind = Kind::formula;
  std::string rel;      // macro argument
  RelFormula formula;   // as written (macros keep their expansion here too)

  bool operator==(const CondItem& o) const;
};

struct ConditionsDecl {
  std::string name;
  std::vector<CondItem> items;

  bool operator==(const ConditionsDecl& o) const = default;
};

struct QuantDomainDecl {
  std::string name;
  std::string flex_sig_name;
  std::string rigid_sig_name;
  std::vector<std::pair<std::string, std::vector<GroundTerm>>> entries;
  QuantDomain qd;

  auto operator<=>(const QuantDomainDecl&) const = default;
};

struct FrameMapDecl {
  std::string name;
  std::string src;
  std::string dst;
  std::vector<std::pair<std::string, std::string>> rel_entries;
  std::vector<std::pair<std::string, std::string>> state_entries;
  FrameMap fm;

  bool operator==(const FrameMapDecl& o) const;
};

struct FormulaDecl {
  std::string name;
  LogicKind logic = LogicKind::ltl;
  std::string flex_sig_name;
  std::string rigid_sig_name;
  LogicFormula formula;

  bool operator==(const FormulaDecl& o) const;
};

struct CheckDecl {
  LogicKind logic = LogicKind::ltl;
  std::string frame;
  std::string interp;
  std::string start;
  std::optional<int> bound;
  std::string quant;  // empty when absent
  LogicFormula formula;

  bool operator==(const CheckDecl& o) const;
};

struct BudgetDecl {
  EntailBudget budget;

  auto operator<=>(const BudgetDecl&) const = default;
};

using Decl = std::variant<SignatureDecl, InterpretationDecl, StateDecl,
                          FrameDecl, ConditionsDecl, QuantDomainDecl,
                          FrameMapDecl, FormulaDecl, CheckDecl, BudgetDecl>;

struct Workspace {
  std::vector<Decl> decls;

  const SignatureDecl* find_signature(const std::string& name) const;
  const InterpretationDecl* find_interpretation(const std::string& name) const;
  const StateDecl* find_state(const std::string& name) const;
  const FrameDecl* find_frame(const std::string& name) const;
  const ConditionsDecl* find_conditions(const std::string& name) const;
  const QuantDomainDecl* find_quantdomain(const std::string& name) const;
  const FrameMapDecl* find_framemap(const std::string& name) const;
  const FormulaDecl* find_formula(const std::string& name) const;
  std::vector<const CheckDecl*> checks() const;

  EntailBudget default_budget() const;  // last budget decl, or defaults

  bool operator==(const Workspace& o) const;
};

struct ParseResult {
  std::optional<Workspace> workspace;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return workspace.has_value(); }
};

ParseResult parse(std::string_view source);

// Canonical source text; parse(print(w)) reproduces w and printing is
// idempotent.
std::string print(const Workspace& w);

// Context-aware printers used by print() and the CLI reports.
std::string print_term(const GroundTerm& t, const EqSignature& rigid,
                       const EqSignature& flexible);
std::string print_sentence(const EqSentence& s, const EqSignature& rigid,
                           const EqSignature& flexible);

// Parses a goal sentence over sum(rigid, flexible); bare names resolve to
// the component that declares them.
EqSentence parse_sentence_text(std::string_view text, const EqSignature& rigid,
                               const EqSignature& flexible);

// Parses a logic formula over the given signature pair.
LogicFormula parse_formula_text(std::string_view text, LogicKind logic,
                                const EqSignature& rigid,
                                const EqSignature& flexible);

std::string formula_to_string(const LogicFormula& f, const EqSignature& rigid,
                              const EqSignature& flexible);

}  // namespace relkit::dsl
