// relkit -- ground equational syntax: signatures, terms, sentences, morphisms.
#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relkit/error.hpp"

namespace relkit::eqcore {

// Symbols of a sum signature carry the component they were injected from;
// symbols of a plain signature carry no tag.
enum class Tag { plain, rigid, flexible };

struct Sym {
  Tag tag = Tag::plain;
  std::string name;

  Sym() = default;
  Sym(std::string n) : tag(Tag::plain), name(std::move(n)) {}
  Sym(Tag t, std::string n) : tag(t), name(std::move(n)) {}

  auto operator<=>(const Sym&) const = default;
};

std::string to_string(const Sym& s);

Sym rigid(std::string name);
Sym flexible(std::string name);

enum class SymbolKind { constant, function, predicate };

// A signature owns three disjoint symbol namespaces.  The same class is used
// for plain signatures (all symbols untagged) and sum signatures (all symbols
// tagged rigid or flexible); sum signatures are built with sum_signature().
class EqSignature {
 public:
  EqSignature() = default;

  void add_constant(const Sym& s);
  void add_function(const Sym& s, int arity);   // arity >= 1
  void add_predicate(const Sym& s, int arity);  // arity >= 0

  bool has(const Sym& s) const;
  bool is_constant(const Sym& s) const { return constants_.count(s) != 0; }
  bool is_function(const Sym& s) const { return functions_.count(s) != 0; }
  bool is_predicate(const Sym& s) const { return predicates_.count(s) != 0; }
  std::optional<SymbolKind> kind(const Sym& s) const;
  int arity(const Sym& s) const;  // constants have arity 0

  const std::set<Sym>& constants() const { return constants_; }
  const std::map<Sym, int>& functions() const { return functions_; }
  const std::map<Sym, int>& predicates() const { return predicates_; }

  bool empty() const {
    return constants_.empty() && functions_.empty() && predicates_.empty();
  }

  auto operator<=>(const EqSignature&) const = default;

 private:
  void check_fresh(const Sym& s) const;

  std::set<Sym> constants_;
  std::map<Sym, int> functions_;
  std::map<Sym, int> predicates_;
};

// Sum of two plain signatures.  left = rigid component, right = flexible
// component; every symbol of the combined signature is tagged with the
// component it came from, so name clashes between the components are fine.
struct SumSignature {
  EqSignature rigid;     // left component, untagged
  EqSignature flexible;  // right component, untagged
  EqSignature combined;  // tagged union

  auto operator<=>(const SumSignature&) const = default;
};

SumSignature sum_signature(const EqSignature& left_rigid,
                           const EqSignature& right_flexible);

// Ground term: a constant or a function applied to arity-many arguments.
class GroundTerm {
 public:
  GroundTerm() = default;
  explicit GroundTerm(Sym constant) : sym_(std::move(constant)) {}
  GroundTerm(Sym function, std::vector<GroundTerm> args)
      : sym_(std::move(function)), args_(std::move(args)) {}

  const Sym& symbol() const { return sym_; }
  const std::vector<GroundTerm>& args() const { return args_; }
  bool is_leaf() const { return args_.empty(); }

  // Leaves have depth 1.
  int depth() const;

  std::strong_ordering operator<=>(const GroundTerm& o) const;
  bool operator==(const GroundTerm& o) const { return (*this <=> o) == 0; }

 private:
  Sym sym_;
  std::vector<GroundTerm> args_;
};

inline std::strong_ordering GroundTerm::operator<=>(const GroundTerm& o) const {
  if (auto c = sym_ <=> o.sym_; c != 0) return c;
  return std::lexicographical_compare_three_way(args_.begin(), args_.end(),
                                                o.args_.begin(), o.args_.end());
}

std::string to_string(const GroundTerm& t);

// Validated constructor: symbol must be declared and applied at its arity.
GroundTerm mk_term(const EqSignature& sig, const Sym& symbol,
                   std::vector<GroundTerm> args);

// Checks that every symbol of t is declared with the right arity.
void check_term(const EqSignature& sig, const GroundTerm& t);

// Atomic sentence: either an equation between ground terms or a predicate
// applied to ground terms.
class EqSentence {
 public:
  EqSentence() = default;

  static EqSentence equation(GroundTerm lhs, GroundTerm rhs);
  static EqSentence pred_app(Sym pred, std::vector<GroundTerm> args);

  bool is_equation() const { return is_equation_; }
  const GroundTerm& lhs() const { return lhs_; }
  const GroundTerm& rhs() const { return rhs_; }
  const Sym& pred() const { return pred_; }
  const std::vector<GroundTerm>& args() const { return args_; }

  auto operator<=>(const EqSentence&) const = default;

 private:
  bool is_equation_ = true;
  GroundTerm lhs_, rhs_;        // equation payload
  Sym pred_;                    // predicate payload
  std::vector<GroundTerm> args_;
};

std::string to_string(const EqSentence& s);

void check_sentence(const EqSignature& sig, const EqSentence& s);

// Total, arity-preserving mapping between two signatures, split by kind.
class SigMorphism {
 public:
  SigMorphism() = default;
  SigMorphism(EqSignature source, EqSignature target,
              std::map<Sym, Sym> constant_map, std::map<Sym, Sym> function_map,
              std::map<Sym, Sym> predicate_map);

  static SigMorphism identity(const EqSignature& sig);

  const EqSignature& source() const { return source_; }
  const EqSignature& target() const { return target_; }

  Sym map_constant(const Sym& s) const;
  Sym map_function(const Sym& s) const;
  Sym map_predicate(const Sym& s) const;

  auto operator<=>(const SigMorphism&) const = default;

 private:
  EqSignature source_, target_;
  std::map<Sym, Sym> cmap_, fmap_, pmap_;
};

// Homomorphic renaming of terms and sentences along a morphism.
GroundTerm translate_term(const SigMorphism& m, const GroundTerm& t);
EqSentence translate_sentence(const SigMorphism& m, const EqSentence& s);

// Pointwise composition; target(m1) must equal source(m2).
SigMorphism compose_morphisms(const SigMorphism& m1, const SigMorphism& m2);

// Lifts a rigid-part morphism and a flexible-part morphism to the sum
// signatures; renames tagged symbols componentwise.
SigMorphism sum_morphism(const SigMorphism& rigid_m,
                         const SigMorphism& flexible_m);

// The component injections, as signature morphisms into the sum.
SigMorphism left_injection(const SumSignature& sum);
SigMorphism right_injection(const SumSignature& sum);

}  // namespace relkit::eqcore
