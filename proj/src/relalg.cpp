#include "relkit/relalg.hpp"

#include <algorithm>
#include <bit>

namespace relkit::relalg {

Relation::Relation(int n)
    : n_(n), words_per_row_((n + 63) / 64), bits_(static_cast<size_t>(n) * words_per_row_, 0) {}

Relation Relation::full(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.set(i, j);
  return r;
}

Relation Relation::identity(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

bool Relation::get(int i, int j) const {
  return (bits_[static_cast<size_t>(i) * words_per_row_ + j / 64] >> (j % 64)) & 1;
}

void Relation::set(int i, int j, bool value) {
  auto& w = bits_[static_cast<size_t>(i) * words_per_row_ + j / 64];
  if (value)
    w |= (std::uint64_t{1} << (j % 64));
  else
    w &= ~(std::uint64_t{1} << (j % 64));
}

void Relation::check_same(const Relation& o) const {
  if (n_ != o.n_)
    throw Error(ErrorCode::signature_mismatch,
                "relations over different base sets");
}

Relation Relation::operator|(const Relation& o) const {
  check_same(o);
  Relation r = *this;
  for (size_t k = 0; k < bits_.size(); ++k) r.bits_[k] |= o.bits_[k];
  return r;
}

Relation Relation::operator&(const Relation& o) const {
  check_same(o);
  Relation r = *this;
  for (size_t k = 0; k < bits_.size(); ++k) r.bits_[k] &= o.bits_[k];
  return r;
}

Relation Relation::complement() const {
  Relation r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(i, j, !get(i, j));
  return r;
}

Relation Relation::compose(const Relation& o) const {
  check_same(o);
  Relation r(n_);
  for (int i = 0; i < n_; ++i) {
    std::uint64_t* out = &r.bits_[static_cast<size_t>(i) * words_per_row_];
    for (int k = 0; k < n_; ++k) {
      if (!get(i, k)) continue;
      const std::uint64_t* row = &o.bits_[static_cast<size_t>(k) * words_per_row_];
      for (int w = 0; w < words_per_row_; ++w) out[w] |= row[w];
    }
  }
  return r;
}

Relation Relation::converse() const {
  Relation r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (get(i, j)) r.set(j, i);
  return r;
}

bool Relation::operator==(const Relation& o) const {
  return n_ == o.n_ && bits_ == o.bits_;
}

bool Relation::subset_of(const Relation& o) const {
  check_same(o);
  for (size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] & ~o.bits_[k]) return false;
  return true;
}

int Relation::count() const {
  int c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (get(i, j)) out.emplace_back(i, j);
  return out;
}

Relation closure(const Relation& r) {
  Relation s = r | Relation::identity(r.size());
  while (true) {
    Relation next = s.compose(s);
    if (next == s) return s;
    s = next;
  }
}

int FiniteFrame::index_of(const std::string& id) const {
  for (size_t i = 0; i < base.size(); ++i)
    if (base[i] == id) return static_cast<int>(i);
  throw Error(ErrorCode::unknown_state_id,
              "state '" + id + "' is not in the frame");
}

const std::string& FiniteFrame::id_of(int index) const {
  if (index < 0 || index >= size())
    throw Error(ErrorCode::unknown_state_id, "state index out of range");
  return base[static_cast<size_t>(index)];
}

const Relation& FiniteFrame::relation(const std::string& name) const {
  auto it = rels.find(name);
  if (it == rels.end())
    throw Error(ErrorCode::unknown_relation_symbol,
                "relation '" + name + "' is not declared in the frame");
  return it->second;
}

const theoria::StateTheory& FiniteFrame::theory_of(const std::string& id) const {
  auto it = state_theories.find(id);
  if (it == state_theories.end())
    throw Error(ErrorCode::unknown_state_id,
                "state '" + id + "' has no associated state theory");
  return it->second;
}

FiniteFrame make_frame(std::vector<std::string> base) {
  if (base.empty())
    throw Error(ErrorCode::invalid_path, "frame base set may not be empty");
  std::set<std::string> seen;
  for (const auto& id : base)
    if (!seen.insert(id).second)
      throw Error(ErrorCode::duplicate_symbol,
                  "state '" + id + "' declared twice");
  FiniteFrame f;
  f.base = std::move(base);
  return f;
}

// --- RelTerm -----------------------------------------------------------

RelTerm RelTerm::symbol(std::string name) {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::symbol, std::move(name), {}});
  return t;
}

RelTerm RelTerm::empty() {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::empty, "", {}});
  return t;
}
RelTerm RelTerm::univ() {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::univ, "", {}});
  return t;
}
RelTerm RelTerm::ident() {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::ident, "", {}});
  return t;
}
RelTerm RelTerm::join(RelTerm a, RelTerm b) {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::join, "", {std::move(a), std::move(b)}});
  return t;
}
RelTerm RelTerm::meet(RelTerm a, RelTerm b) {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::meet, "", {std::move(a), std::move(b)}});
  return t;
}
RelTerm RelTerm::complement(RelTerm a) {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::complement, "", {std::move(a)}});
  return t;
}
RelTerm RelTerm::compose(RelTerm a, RelTerm b) {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::compose, "", {std::move(a), std::move(b)}});
  return t;
}
RelTerm RelTerm::converse(RelTerm a) {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::converse, "", {std::move(a)}});
  return t;
}
RelTerm RelTerm::star(RelTerm a) {
  RelTerm t;
  t.node_ = std::make_shared<Node>(Node{Kind::star, "", {std::move(a)}});
  return t;
}

bool RelTerm::operator==(const RelTerm& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind || node_->name != o.node_->name ||
      node_->args.size() != o.node_->args.size())
    return false;
  for (size_t i = 0; i < node_->args.size(); ++i)
    if (!(node_->args[i] == o.node_->args[i])) return false;
  return true;
}

namespace {

// precedence: join 0 < meet 1 < compose 2 < complement 3 < postfix 4
int term_prec(RelTerm::Kind k) {
  switch (k) {
    case RelTerm::Kind::join: return 0;
    case RelTerm::Kind::meet: return 1;
    case RelTerm::Kind::compose: return 2;
    case RelTerm::Kind::complement: return 3;
    default: return 4;
  }
}

std::string term_str(const RelTerm& t, int ctx) {
  int p = term_prec(t.kind());
  std::string out;
  switch (t.kind()) {
    case RelTerm::Kind::symbol: out = t.name(); break;
    case RelTerm::Kind::empty: out = "0"; break;
    case RelTerm::Kind::univ: out = "1"; break;
    case RelTerm::Kind::ident: out = "1'"; break;
    case RelTerm::Kind::join:
      out = term_str(t.left(), p) + " + " + term_str(t.right(), p + 1);
      break;
    case RelTerm::Kind::meet:
      out = term_str(t.left(), p) + " & " + term_str(t.right(), p + 1);
      break;
    case RelTerm::Kind::compose:
      out = term_str(t.left(), p) + " . " + term_str(t.right(), p + 1);
      break;
    case RelTerm::Kind::complement:
      out = "~" + term_str(t.arg(), p);
      break;
    case RelTerm::Kind::converse:
      out = term_str(t.arg(), 4) + "^";
      break;
    case RelTerm::Kind::star:
      out = term_str(t.arg(), 4) + "*";
      break;
  }
  if (p < ctx) return "(" + out + ")";
  return out;
}

}  // namespace

std::string to_string(const RelTerm& t) { return term_str(t, 0); }

// --- RelFormula --------------------------------------------------------

RelFormula RelFormula::atom(std::string x, RelTerm r, std::string y) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::atom, std::move(x), std::move(y), {std::move(r)}, {}, {}});
  return f;
}
RelFormula RelFormula::term_eq(RelTerm a, RelTerm b) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::term_eq, "", "", {std::move(a), std::move(b)}, {}, {}});
  return f;
}
RelFormula RelFormula::neg(RelFormula g) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::neg, "", "", {}, {std::move(g)}, {}});
  return f;
}
RelFormula RelFormula::disj(std::vector<RelFormula> fs) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::disj, "", "", {}, {std::move(fs)}, {}});
  return f;
}
RelFormula RelFormula::conj(std::vector<RelFormula> fs) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::conj, "", "", {}, {std::move(fs)}, {}});
  return f;
}
RelFormula RelFormula::implies(RelFormula a, RelFormula b) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::implies, "", "", {}, {std::move(a), std::move(b)}, {}});
  return f;
}
RelFormula RelFormula::iff(RelFormula a, RelFormula b) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::iff, "", "", {}, {std::move(a), std::move(b)}, {}});
  return f;
}
RelFormula RelFormula::exists(std::vector<std::string> vars, RelFormula body) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::exists, "", "", {}, {std::move(body)}, std::move(vars)});
  return f;
}
RelFormula RelFormula::forall(std::vector<std::string> vars, RelFormula body) {
  RelFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::forall, "", "", {}, {std::move(body)}, std::move(vars)});
  return f;
}

bool RelFormula::operator==(const RelFormula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind || node_->x != o.node_->x ||
      node_->y != o.node_->y || node_->vars != o.node_->vars ||
      node_->terms.size() != o.node_->terms.size() ||
      node_->children.size() != o.node_->children.size())
    return false;
  for (size_t i = 0; i < node_->terms.size(); ++i)
    if (!(node_->terms[i] == o.node_->terms[i])) return false;
  for (size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == o.node_->children[i])) return false;
  return true;
}

namespace {

// precedence: quantifier/iff 0 < implies 1 < or 2 < and 3 < not/atom 4
std::string formula_str(const RelFormula& f, int ctx) {
  std::string out;
  int p = 4;
  switch (f.kind()) {
    case RelFormula::Kind::atom:
      // the relational term extends to the closing point variable, so it
      // never needs outer parentheses
      out = f.var_x() + " " + term_str(f.term(), 0) + " " + f.var_y();
      break;
    case RelFormula::Kind::term_eq:
      out = to_string(f.term()) + " = " + to_string(f.term2());
      break;
    case RelFormula::Kind::neg:
      out = "not " + formula_str(f.children()[0], 4);
      break;
    case RelFormula::Kind::disj:
      p = 2;
      if (f.children().empty()) {
        out = "false";
        p = 4;
      } else {
        for (size_t i = 0; i < f.children().size(); ++i) {
          if (i) out += " or ";
          out += formula_str(f.children()[i], 3);
        }
      }
      break;
    case RelFormula::Kind::conj:
      p = 3;
      if (f.children().empty()) {
        out = "true";
        p = 4;
      } else {
        for (size_t i = 0; i < f.children().size(); ++i) {
          if (i) out += " and ";
          out += formula_str(f.children()[i], 4);
        }
      }
      break;
    case RelFormula::Kind::implies:
      p = 1;
      out = formula_str(f.children()[0], 2) + " => " +
            formula_str(f.children()[1], 1);
      break;
    case RelFormula::Kind::iff:
      p = 0;
      out = formula_str(f.children()[0], 1) + " <=> " +
            formula_str(f.children()[1], 1);
      break;
    case RelFormula::Kind::exists:
    case RelFormula::Kind::forall: {
      p = 0;
      out = f.kind() == RelFormula::Kind::exists ? "exists " : "forall ";
      for (size_t i = 0; i < f.bound_vars().size(); ++i) {
        if (i) out += ", ";
        out += f.bound_vars()[i];
      }
      out += " : " + formula_str(f.children()[0], 0);
      break;
    }
  }
  if (p < ctx) return "(" + out + ")";
  return out;
}

}  // namespace

std::string to_string(const RelFormula& f) { return formula_str(f, 0); }

Relation eval_relterm(const FiniteFrame& f, const RelTerm& t) {
  int n = f.size();
  switch (t.kind()) {
    case RelTerm::Kind::symbol: return f.relation(t.name());
    case RelTerm::Kind::empty: return Relation::empty(n);
    case RelTerm::Kind::univ: return Relation::full(n);
    case RelTerm::Kind::ident: return Relation::identity(n);
    case RelTerm::Kind::join:
      return eval_relterm(f, t.left()) | eval_relterm(f, t.right());
    case RelTerm::Kind::meet:
      return eval_relterm(f, t.left()) & eval_relterm(f, t.right());
    case RelTerm::Kind::complement:
      return eval_relterm(f, t.arg()).complement();
    case RelTerm::Kind::compose:
      return eval_relterm(f, t.left()).compose(eval_relterm(f, t.right()));
    case RelTerm::Kind::converse: return eval_relterm(f, t.arg()).converse();
    case RelTerm::Kind::star: return closure(eval_relterm(f, t.arg()));
  }
  throw Error(ErrorCode::unknown_relation_symbol, "corrupt relational term");
}

bool eval_formula(const FiniteFrame& f, const Valuation& v,
                  const RelFormula& phi) {
  switch (phi.kind()) {
    case RelFormula::Kind::atom: {
      auto ix = v.find(phi.var_x());
      auto iy = v.find(phi.var_y());
      if (ix == v.end())
        throw Error(ErrorCode::unbound_point_variable,
                    "point variable '" + phi.var_x() + "' is unbound");
      if (iy == v.end())
        throw Error(ErrorCode::unbound_point_variable,
                    "point variable '" + phi.var_y() + "' is unbound");
      return eval_relterm(f, phi.term()).get(ix->second, iy->second);
    }
    case RelFormula::Kind::term_eq:
      return eval_relterm(f, phi.term()) == eval_relterm(f, phi.term2());
    case RelFormula::Kind::neg:
      return !eval_formula(f, v, phi.children()[0]);
    case RelFormula::Kind::disj:
      for (const auto& c : phi.children())
        if (eval_formula(f, v, c)) return true;
      return false;
    case RelFormula::Kind::conj:
      for (const auto& c : phi.children())
        if (!eval_formula(f, v, c)) return false;
      return true;
    case RelFormula::Kind::implies:
      return !eval_formula(f, v, phi.children()[0]) ||
             eval_formula(f, v, phi.children()[1]);
    case RelFormula::Kind::iff:
      return eval_formula(f, v, phi.children()[0]) ==
             eval_formula(f, v, phi.children()[1]);
    case RelFormula::Kind::exists:
    case RelFormula::Kind::forall: {
      bool is_exists = phi.kind() == RelFormula::Kind::exists;
      const auto& vars = phi.bound_vars();
      std::vector<int> assign(vars.size(), 0);
      while (true) {
        Valuation v2 = v;
        for (size_t i = 0; i < vars.size(); ++i) v2[vars[i]] = assign[i];
        bool b = eval_formula(f, v2, phi.children()[0]);
        if (is_exists && b) return true;
        if (!is_exists && !b) return false;
        size_t k = vars.size();
        while (k > 0) {
          if (++assign[k - 1] < f.size()) break;
          assign[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
      return !is_exists;
    }
  }
  throw Error(ErrorCode::unbound_point_variable, "corrupt formula");
}

RelFormula total_condition(const std::string& rel) {
  // every state has a successor: (R . 1) & 1' = 1' on the diagonal
  RelTerm r = RelTerm::symbol(rel);
  return RelFormula::forall(
      {"x", "y"},
      RelFormula::iff(
          RelFormula::atom(
              "x", RelTerm::meet(RelTerm::compose(r, RelTerm::univ()), RelTerm::ident()),
              "y"),
          RelFormula::atom("x", RelTerm::ident(), "y")));
}

RelFormula functional_condition(const std::string& rel) {
  RelTerm r = RelTerm::symbol(rel);
  return RelFormula::forall(
      {"x", "y"},
      RelFormula::implies(
          RelFormula::atom("x", RelTerm::compose(RelTerm::converse(r), r), "y"),
          RelFormula::atom("x", RelTerm::ident(), "y")));
}

RelFormula initial_condition(const std::string& rel) {
  return RelFormula::forall(
      {"x", "y"},
      RelFormula::implies(RelFormula::atom("x", RelTerm::symbol(rel), "y"),
                          RelFormula::atom("x", RelTerm::ident(), "y")));
}

namespace {

// Peels leading universals of a falsified sentence to produce a witness.
void find_witness(const FiniteFrame& f, const RelFormula& phi, Valuation v,
                  Valuation& out) {
  switch (phi.kind()) {
    case RelFormula::Kind::forall: {
      const auto& vars = phi.bound_vars();
      std::vector<int> assign(vars.size(), 0);
      while (true) {
        Valuation v2 = v;
        for (size_t i = 0; i < vars.size(); ++i) v2[vars[i]] = assign[i];
        if (!eval_formula(f, v2, phi.children()[0])) {
          for (size_t i = 0; i < vars.size(); ++i) out[vars[i]] = assign[i];
          find_witness(f, phi.children()[0], v2, out);
          return;
        }
        size_t k = vars.size();
        while (k > 0) {
          if (++assign[k - 1] < f.size()) break;
          assign[k - 1] = 0;
          --k;
        }
        if (k == 0) return;
      }
    }
    case RelFormula::Kind::conj:
      for (const auto& c : phi.children())
        if (!eval_formula(f, v, c)) {
          find_witness(f, c, v, out);
          return;
        }
      return;
    case RelFormula::Kind::implies:
      if (eval_formula(f, v, phi.children()[0]) &&
          !eval_formula(f, v, phi.children()[1]))
        find_witness(f, phi.children()[1], v, out);
      return;
    default:
      return;
  }
}

}  // namespace

std::vector<ConditionCheck> verify_frame_conditions(
    const FiniteFrame& f,
    const std::vector<std::pair<std::string, RelFormula>>& gamma) {
  std::vector<ConditionCheck> out;
  for (const auto& [label, phi] : gamma) {
    ConditionCheck check;
    check.label = label;
    check.formula = phi;
    check.passed = eval_formula(f, {}, phi);
    if (!check.passed) find_witness(f, phi, {}, check.witness);
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<ConditionCheck> axioms_selftest(const FiniteFrame& f) {
  using RT = RelTerm;
  using RF = RelFormula;
  std::vector<std::pair<std::string, RelFormula>> gamma;

  auto atom = [](const char* x, RelTerm t, const char* y) {
    return RF::atom(x, std::move(t), y);
  };

  gamma.emplace_back("Ax.1", RF::forall({"x", "y"},
      RF::neg(atom("x", RT::empty(), "y"))));
  gamma.emplace_back("Ax.3", RF::forall({"x", "y"}, atom("x", RT::univ(), "y")));
  gamma.emplace_back("Ax.6", RF::forall({"x"}, atom("x", RT::ident(), "x")));

  std::vector<std::string> names;
  for (const auto& [name, rel] : f.rels) names.push_back(name);

  for (const auto& rn : names) {
    RT r = RT::symbol(rn);
    gamma.emplace_back("Ax.5 [R:=" + rn + "]",
        RF::forall({"x", "y"},
            RF::iff(atom("x", RT::complement(r), "y"),
                    RF::neg(atom("x", r, "y")))));
    gamma.emplace_back("Ax.6' [R:=" + rn + "]",
        RF::forall({"x", "y", "z"},
            RF::implies(RF::conj({atom("x", r, "y"), atom("y", RT::ident(), "z")}),
                        atom("x", r, "z"))));
    gamma.emplace_back("Ax.8 [R:=" + rn + "]",
        RF::forall({"x", "y"},
            RF::iff(atom("x", RT::converse(r), "y"), atom("y", r, "x"))));
    // Ax.9 with the infinite disjunction truncated at the base size, which
    // the closure fixpoint makes exact
    std::vector<RF> powers;
    RT pow = RT::ident();
    for (int i = 0; i <= f.size(); ++i) {
      powers.push_back(atom("x", pow, "y"));
      pow = RT::compose(r, pow);
    }
    gamma.emplace_back("Ax.9 [R:=" + rn + "]",
        RF::forall({"x", "y"},
            RF::iff(atom("x", RT::star(r), "y"), RF::disj(powers))));
  }
  for (const auto& rn : names)
    for (const auto& sn : names) {
      RT r = RT::symbol(rn), s = RT::symbol(sn);
      std::string inst = " [R:=" + rn + ", S:=" + sn + "]";
      gamma.emplace_back("Ax.2" + inst,
          RF::forall({"x", "y"},
              RF::iff(atom("x", RT::join(r, s), "y"),
                      RF::disj({atom("x", r, "y"), atom("x", s, "y")}))));
      gamma.emplace_back("Ax.4" + inst,
          RF::forall({"x", "y"},
              RF::iff(atom("x", RT::meet(r, s), "y"),
                      RF::conj({atom("x", r, "y"), atom("x", s, "y")}))));
      gamma.emplace_back("Ax.7" + inst,
          RF::forall({"x", "y"},
              RF::iff(atom("x", RT::compose(r, s), "y"),
                      RF::exists({"z"},
                          RF::conj({atom("x", r, "z"), atom("z", s, "y")})))));
      gamma.emplace_back("Ax.10" + inst,
          RF::iff(RF::term_eq(r, s),
                  RF::forall({"x", "y"},
                      RF::iff(atom("x", r, "y"), atom("x", s, "y")))));
    }
  return verify_frame_conditions(f, gamma);
}

MorphismReport check_bounded_morphism(const FiniteFrame& src,
                                      const FiniteFrame& dst,
                                      const FrameMap& fm,
                                      const EntailBudget& b) {
  // every relation and state of the source must be mapped
  for (const auto& [name, rel] : src.rels) {
    auto it = fm.rel_map.find(name);
    if (it == fm.rel_map.end())
      throw Error(ErrorCode::unmapped_symbol,
                  "relation '" + name + "' is not mapped");
    if (!dst.rels.count(it->second))
      throw Error(ErrorCode::unmapped_symbol,
                  "relation '" + it->second + "' is not declared in the target");
  }
  std::vector<int> h(src.size(), -1);
  for (int i = 0; i < src.size(); ++i) {
    auto it = fm.state_map.find(src.base[static_cast<size_t>(i)]);
    if (it == fm.state_map.end())
      throw Error(ErrorCode::unmapped_symbol,
                  "state '" + src.base[static_cast<size_t>(i)] + "' is not mapped");
    h[static_cast<size_t>(i)] = dst.index_of(it->second);
  }

  // state theories must be equi-derivable along h
  auto state_theory_pres = [](const theoria::StateTheory& st) {
    entail::TheoryPres t;
    t.sig = eqcore::sum_signature(st.rigid_sig, st.flexible_sig).combined;
    for (const auto& d : st.defs)
      t.ground_axioms.push_back(theoria::definition_sentence(d));
    return t;
  };
  Verdict all = Verdict::yes();
  for (int i = 0; i < src.size(); ++i) {
    const auto& sid = src.base[static_cast<size_t>(i)];
    const auto& tid = dst.base[static_cast<size_t>(h[static_cast<size_t>(i)])];
    const auto& st_s = src.theory_of(sid);
    const auto& st_t = dst.theory_of(tid);
    if (st_s.flexible_sig != st_t.flexible_sig ||
        st_s.rigid_sig != st_t.rigid_sig)
      throw Error(ErrorCode::signature_mismatch,
                  "states '" + sid + "' and '" + tid +
                      "' are over different signatures");
    entail::TheoryPres ts = state_theory_pres(st_s);
    entail::TheoryPres tt = state_theory_pres(st_t);
    auto check_defs = [&](const theoria::StateTheory& from,
                          const entail::TheoryPres& against) {
      Verdict v = Verdict::yes();
      for (const auto& d : from.defs) {
        Verdict one = entail::entails(against, theoria::definition_sentence(d), b);
        v.truth = entail::and3(v.truth, one.truth);
        if (one.is_unknown()) v.reason = one.reason;
      }
      return v;
    };
    Verdict fwd = check_defs(st_s, tt);
    Verdict bwd = check_defs(st_t, ts);
    Verdict both{entail::and3(fwd.truth, bwd.truth),
                 fwd.is_unknown() ? fwd.reason : bwd.reason};
    if (both.is_false())
      return {Verdict::no(),
              "state theories of '" + sid + "' and '" + tid + "' differ"};
    if (both.is_unknown()) all = Verdict::unknown(both.reason);
  }

  // forward condition
  for (const auto& [name, rel] : src.rels) {
    const Relation& img = dst.relation(fm.rel_map.at(name));
    for (auto [i, j] : rel.pairs())
      if (!img.get(h[static_cast<size_t>(i)], h[static_cast<size_t>(j)]))
        return {Verdict::no(),
                "forward condition fails for " + name + " at (" +
                    src.base[static_cast<size_t>(i)] + ", " +
                    src.base[static_cast<size_t>(j)] + ")"};
  }
  // backward condition
  for (const auto& [name, rel] : src.rels) {
    const Relation& img = dst.relation(fm.rel_map.at(name));
    for (int i = 0; i < src.size(); ++i)
      for (int j2 = 0; j2 < dst.size(); ++j2) {
        if (!img.get(h[static_cast<size_t>(i)], j2)) continue;
        bool found = false;
        for (int j = 0; j < src.size() && !found; ++j)
          found = h[static_cast<size_t>(j)] == j2 && rel.get(i, j);
        if (!found)
          return {Verdict::no(),
                  "backward condition fails for " + name + " at (" +
                      src.base[static_cast<size_t>(i)] + ", " +
                      dst.base[static_cast<size_t>(j2)] + ")"};
      }
  }
  return {all, ""};
}

}  // namespace relkit::relalg
