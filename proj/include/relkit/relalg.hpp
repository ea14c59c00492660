// relkit -- finite binary-relation algebra over a frame's base set:
// relational term evaluation, first-order relational formulae, frame
// condition checking, the relational axiom self-test, and bounded morphisms.
#pragma once

#include <cstdint>
#include <memory>

#include "relkit/theoria.hpp"

namespace relkit::relalg {

using entail::EntailBudget;
using entail::Verdict;

// Binary relation over {0..n-1} stored as a row-major bit matrix.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n);

  static Relation empty(int n) { return Relation(n); }
  static Relation full(int n);
  static Relation identity(int n);

  int size() const { return n_; }
  bool get(int i, int j) const;
  void set(int i, int j, bool value = true);

  Relation operator|(const Relation& o) const;  // union
  Relation operator&(const Relation& o) const;  // intersection
  Relation complement() const;                  // w.r.t. full
  Relation compose(const Relation& o) const;    // left-to-right
  Relation converse() const;

  bool operator==(const Relation& o) const;
  bool subset_of(const Relation& o) const;
  int count() const;

  std::vector<std::pair<int, int>> pairs() const;

 private:
  void check_same(const Relation& o) const;

  int n_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Least reflexive-transitive superset, by repeated squaring.
Relation closure(const Relation& r);

// Base set of state identifiers plus named relations.  Each identifier may
// resolve to the state theory it denotes; purely relational work leaves the
// theories empty.  A frame stands in for the full closure algebra over its
// base: every relation over the base is expressible, so satisfaction
// transfers to the full algebra without a separate check.
struct FiniteFrame {
  std::vector<std::string> base;
  std::map<std::string, Relation> rels;
  std::map<std::string, theoria::StateTheory> state_theories;

  int size() const { return static_cast<int>(base.size()); }
  int index_of(const std::string& id) const;
  const std::string& id_of(int index) const;
  const Relation& relation(const std::string& name) const;
  const theoria::StateTheory& theory_of(const std::string& id) const;
};

FiniteFrame make_frame(std::vector<std::string> base);

// Relational terms: 0, 1, 1', named relations, +, &, complement,
// composition, converse, reflexive-transitive closure.
class RelTerm {
 public:
  enum class Kind {
    symbol, empty, univ, ident, join, meet, complement, compose, converse, star
  };

  RelTerm() = default;

  static RelTerm symbol(std::string name);
  static RelTerm empty();
  static RelTerm univ();
  static RelTerm ident();
  static RelTerm join(RelTerm a, RelTerm b);
  static RelTerm meet(RelTerm a, RelTerm b);
  static RelTerm complement(RelTerm a);
  static RelTerm compose(RelTerm a, RelTerm b);
  static RelTerm converse(RelTerm a);
  static RelTerm star(RelTerm a);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const RelTerm& left() const { return node_->args[0]; }
  const RelTerm& right() const { return node_->args[1]; }
  const RelTerm& arg() const { return node_->args[0]; }

  bool operator==(const RelTerm& o) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<RelTerm> args;
  };
  std::shared_ptr<const Node> node_;
};

std::string to_string(const RelTerm& t);

// First-order relational formulae over point variables.
class RelFormula {
 public:
  enum class Kind {
    atom,      // x R y
    term_eq,   // R = S
    neg,
    disj,      // finite or
    conj,      // finite and
    implies,
    iff,
    exists,
    forall
  };

  RelFormula() = default;

  static RelFormula atom(std::string x, RelTerm r, std::string y);
  static RelFormula term_eq(RelTerm a, RelTerm b);
  static RelFormula neg(RelFormula f);
  static RelFormula disj(std::vector<RelFormula> fs);
  static RelFormula conj(std::vector<RelFormula> fs);
  static RelFormula implies(RelFormula a, RelFormula b);
  static RelFormula iff(RelFormula a, RelFormula b);
  static RelFormula exists(std::vector<std::string> vars, RelFormula body);
  static RelFormula forall(std::vector<std::string> vars, RelFormula body);

  Kind kind() const { return node_->kind; }
  const std::string& var_x() const { return node_->x; }
  const std::string& var_y() const { return node_->y; }
  const RelTerm& term() const { return node_->terms[0]; }
  const RelTerm& term2() const { return node_->terms[1]; }
  const std::vector<RelFormula>& children() const { return node_->children; }
  const std::vector<std::string>& bound_vars() const { return node_->vars; }

  bool operator==(const RelFormula& o) const;

 private:
  struct Node {
    Kind kind;
    std::string x, y;
    std::vector<RelTerm> terms;
    std::vector<RelFormula> children;
    std::vector<std::string> vars;
  };
  std::shared_ptr<const Node> node_;
};

std::string to_string(const RelFormula& f);

using Valuation = std::map<std::string, int>;

// The homomorphic evaluation of a relational term in the frame.
Relation eval_relterm(const FiniteFrame& f, const RelTerm& t);

// Classical evaluation; quantifiers range over the base set.
bool eval_formula(const FiniteFrame& f, const Valuation& v,
                  const RelFormula& phi);

// The frame-condition macros used by condition blocks.
RelFormula total_condition(const std::string& rel);
RelFormula functional_condition(const std::string& rel);
RelFormula initial_condition(const std::string& rel);

struct ConditionCheck {
  std::string label;
  RelFormula formula;
  bool passed = false;
  Valuation witness;  // falsifying assignment of the leading universals
};

std::vector<ConditionCheck> verify_frame_conditions(
    const FiniteFrame& f,
    const std::vector<std::pair<std::string, RelFormula>>& gamma);

// Evaluates every relational axiom instantiated with the frame's declared
// relation symbols; any failure indicates an engine bug.
std::vector<ConditionCheck> axioms_selftest(const FiniteFrame& f);

// Relation-symbol renaming plus a total function between base sets.
struct FrameMap {
  std::map<std::string, std::string> rel_map;
  std::map<std::string, std::string> state_map;
};

struct MorphismReport {
  Verdict verdict;
  std::string witness;
};

// Checks the bounded-morphism conditions: state theories preserved along h,
// the forward simulation condition, and the backward simulation condition.
MorphismReport check_bounded_morphism(const FiniteFrame& src,
                                      const FiniteFrame& dst,
                                      const FrameMap& fm,
                                      const EntailBudget& b);

}  // namespace relkit::relalg
