// relkit -- ground equational entailment with schematic axiom families,
// decided by congruence closure over a bounded ground-term universe.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "relkit/eqcore.hpp"

namespace relkit::entail {

using eqcore::EqSentence;
using eqcore::EqSignature;
using eqcore::GroundTerm;
using eqcore::SigMorphism;
using eqcore::Sym;
using eqcore::Tag;

// Three-valued truth with strong Kleene connectives.
enum class Truth : int { no = 0, unknown = 1, yes = 2 };

Truth and3(Truth a, Truth b);
Truth or3(Truth a, Truth b);
Truth not3(Truth a);

enum class UnknownReason { none, budget_exhausted, no_witness };

struct Verdict {
  Truth truth = Truth::unknown;
  UnknownReason reason = UnknownReason::none;

  static Verdict yes() { return {Truth::yes, UnknownReason::none}; }
  static Verdict no() { return {Truth::no, UnknownReason::none}; }
  static Verdict unknown(UnknownReason r = UnknownReason::budget_exhausted) {
    return {Truth::unknown, r};
  }

  bool is_true() const { return truth == Truth::yes; }
  bool is_false() const { return truth == Truth::no; }
  bool is_unknown() const { return truth == Truth::unknown; }

  auto operator<=>(const Verdict&) const = default;
};

std::string to_string(const Verdict& v);

// Pattern term: a metavariable leaf or a signature symbol applied to
// pattern arguments.
class SchemaTerm {
 public:
  SchemaTerm() = default;

  static SchemaTerm meta(std::string name);
  static SchemaTerm leaf(Sym constant);
  static SchemaTerm app(Sym function, std::vector<SchemaTerm> args);

  bool is_meta() const { return is_meta_; }
  const std::string& meta_name() const { return meta_name_; }
  const Sym& symbol() const { return sym_; }
  const std::vector<SchemaTerm>& args() const { return args_; }

  GroundTerm substitute(const std::map<std::string, GroundTerm>& env) const;
  void collect_metas(std::set<std::string>& out) const;

  std::strong_ordering operator<=>(const SchemaTerm& o) const;
  bool operator==(const SchemaTerm& o) const { return (*this <=> o) == 0; }

 private:
  bool is_meta_ = false;
  std::string meta_name_;
  Sym sym_;
  std::vector<SchemaTerm> args_;
};

inline std::strong_ordering SchemaTerm::operator<=>(const SchemaTerm& o) const {
  if (auto c = is_meta_ <=> o.is_meta_; c != 0) return c;
  if (auto c = meta_name_ <=> o.meta_name_; c != 0) return c;
  if (auto c = sym_ <=> o.sym_; c != 0) return c;
  return std::lexicographical_compare_three_way(args_.begin(), args_.end(),
                                                o.args_.begin(), o.args_.end());
}

// One member of a schematically infinite axiom family: metavariables range
// over ground terms, optionally guarded by syntactic disequalities.
class SchemaSentence {
 public:
  SchemaSentence() = default;

  static SchemaSentence equation(std::vector<std::string> metavars,
                                 SchemaTerm lhs, SchemaTerm rhs);
  static SchemaSentence pred_app(std::vector<std::string> metavars, Sym pred,
                                 std::vector<SchemaTerm> args);

  // Adds the guard "metavar may not be instantiated to this exact term".
  void add_guard(const std::string& metavar, GroundTerm forbidden);

  const std::vector<std::string>& metavars() const { return metavars_; }
  bool is_equation() const { return is_equation_; }
  const SchemaTerm& lhs() const { return lhs_; }
  const SchemaTerm& rhs() const { return rhs_; }
  const Sym& pred() const { return pred_; }
  const std::vector<SchemaTerm>& args() const { return args_; }
  const std::map<std::string, std::vector<GroundTerm>>& guards() const {
    return guards_;
  }

  // Metavariables range over terms of this component of the ambient
  // signature; Tag::plain means the whole signature.
  Tag range_tag() const { return range_tag_; }
  void set_range_tag(Tag t) { range_tag_ = t; }

  EqSentence instantiate(const std::map<std::string, GroundTerm>& env) const;
  bool guard_allows(const std::map<std::string, GroundTerm>& env) const;

  auto operator<=>(const SchemaSentence&) const = default;

 private:
  std::vector<std::string> metavars_;
  bool is_equation_ = true;
  SchemaTerm lhs_, rhs_;
  Sym pred_;
  std::vector<SchemaTerm> args_;
  std::map<std::string, std::vector<GroundTerm>> guards_;
  Tag range_tag_ = Tag::plain;
};

std::string to_string(const SchemaSentence& s);

// A signature plus ground axioms plus schema families.
struct TheoryPres {
  EqSignature sig;
  std::vector<EqSentence> ground_axioms;
  std::vector<SchemaSentence> schemas;

  auto operator<=>(const TheoryPres&) const = default;
};

void check_theory(const TheoryPres& t);

struct EntailBudget {
  int max_term_depth = 3;          // leaves have depth 1
  std::int64_t max_instantiations = 10000;  // per schema

  auto operator<=>(const EntailBudget&) const = default;
};

// Ground terms of the signature (restricted to symbols with the given tag,
// or the whole signature for Tag::plain) with depth <= max_depth, in
// (depth, lexicographic) order, at most `limit` of them.
std::vector<GroundTerm> enumerate_terms(const EqSignature& sig, Tag range_tag,
                                        int max_depth, std::int64_t limit);

// Ground axioms plus all schema instances within the budget, deterministic.
std::vector<EqSentence> instantiate_schemas(const TheoryPres& t,
                                            const EntailBudget& b);

// Congruence closure over a ground-term universe.  Terms are interned into
// a dag; the universe is automatically extended with all subterms.
class ClosureState {
 public:
  // Builds the closure of the given sentences over the union of `universe`
  // and every term occurring in the sentences.
  ClosureState(const std::vector<EqSentence>& sentences,
               const std::vector<GroundTerm>& universe);

  bool same_class(const GroundTerm& a, const GroundTerm& b) const;
  bool holds(const Sym& pred, const std::vector<GroundTerm>& args) const;
  bool holds(const EqSentence& s) const;
  bool in_universe(const GroundTerm& t) const;

  // Equivalence classes over the universe, each sorted, classes sorted by
  // their least member.
  std::vector<std::vector<GroundTerm>> classes() const;

  std::size_t universe_size() const { return nodes_.size(); }

 private:
  struct Node {
    int sym;
    std::vector<int> children;
    GroundTerm term;
  };

  struct KeyHash {
    std::size_t operator()(const std::pair<int, std::vector<int>>& k) const {
      std::size_t h = static_cast<std::size_t>(k.first) * 0x9e3779b97f4a7c15ull;
      for (int c : k.second)
        h = (h ^ static_cast<std::size_t>(c)) * 0x100000001b3ull;
      return h;
    }
  };
  using NodeKey = std::pair<int, std::vector<int>>;
  using NodeIndex = std::unordered_map<NodeKey, int, KeyHash>;

  int sym_id(const Sym& s);
  int sym_id(const Sym& s) const;  // -1 when unknown
  int intern(const GroundTerm& t);
  int find(int a) const;
  void close(std::vector<std::pair<int, int>> equations);
  int lookup(const GroundTerm& t) const;  // -1 when absent

  std::vector<Node> nodes_;
  std::map<Sym, int> sym_ids_;
  NodeIndex node_index_;
  mutable std::vector<int> parent_;
  std::vector<std::vector<int>> uses_;  // class rep -> app nodes touching it
  std::set<std::pair<int, std::vector<int>>> facts_;  // canonical pred tuples
  std::vector<std::pair<int, std::vector<int>>> raw_facts_;
};

ClosureState congruence_close(const std::vector<EqSentence>& sentences,
                              const std::vector<GroundTerm>& universe);

// Decides whether the theory entails the goal within the budget.
//   yes      -- goal is in the congruence closure of the instantiated axioms
//   no       -- only for schema-free theories (ground entailment is complete)
//   unknown  -- schemas present and the goal was not derived at this budget
Verdict entails(const TheoryPres& t, const EqSentence& goal,
                const EntailBudget& b);

}  // namespace relkit::entail
