#include "relkit/logics.hpp"

#include <algorithm>
#include <climits>

namespace relkit::logics {

using eqcore::Sym;
using eqcore::Tag;
using entail::and3;
using entail::not3;
using entail::or3;
using entail::UnknownReason;
using relalg::Relation;

// --- lasso plumbing --------------------------------------------------------

void check_lasso(const FiniteFrame& f, const LassoPath& pi) {
  if (pi.cycle.empty())
    throw Error(ErrorCode::invalid_path, "lasso cycle may not be empty");
  const Relation& t = f.relation(kTransition);
  std::vector<int> seq;
  for (const auto& id : pi.prefix) seq.push_back(f.index_of(id));
  for (const auto& id : pi.cycle) seq.push_back(f.index_of(id));
  for (size_t k = 0; k + 1 < seq.size(); ++k)
    if (!t.get(seq[k], seq[k + 1]))
      throw Error(ErrorCode::invalid_path,
                  "states at positions " + std::to_string(k) + " and " +
                      std::to_string(k + 1) + " are not T-related");
  int last = seq.back();
  int loop = seq[pi.prefix.size()];
  if (!t.get(last, loop))
    throw Error(ErrorCode::invalid_path,
                "cycle does not close: last state is not T-related to the "
                "cycle head");
}

namespace {

struct Positions {
  std::vector<int> states;  // frame indices, prefix then cycle
  int loop = 0;

  int size() const { return static_cast<int>(states.size()); }
  int succ(int p) const { return p + 1 < size() ? p + 1 : loop; }
};

Positions positions_of(const FiniteFrame& f, const LassoPath& pi) {
  Positions pos;
  for (const auto& id : pi.prefix) pos.states.push_back(f.index_of(id));
  for (const auto& id : pi.cycle) pos.states.push_back(f.index_of(id));
  pos.loop = static_cast<int>(pi.prefix.size());
  return pos;
}

// Memoized satisfaction of state atoms at frame states.
struct AtomEvaluator {
  const InterpretationTheory& interp;
  const FiniteFrame& frame;
  const EntailBudget& budget;
  std::map<std::pair<EqSentence, int>, Truth> cache;

  Truth at(const EqSentence& atom, int s) {
    auto key = std::make_pair(atom, s);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Verdict v = theoria::sat_state(interp, frame.theory_of(frame.id_of(s)),
                                   atom, budget);
    cache.emplace(std::move(key), v.truth);
    return v.truth;
  }
};

Verdict verdict_of(Truth t) {
  if (t == Truth::yes) return Verdict::yes();
  if (t == Truth::no) return Verdict::no();
  return Verdict::unknown(UnknownReason::budget_exhausted);
}

void require(const FiniteFrame& f, const relalg::RelFormula& cond,
             const std::string& what) {
  if (!relalg::eval_formula(f, {}, cond))
    throw Error(ErrorCode::frame_condition_violated, what);
}

void require_transition(const FiniteFrame& f) {
  if (!f.rels.count(kTransition))
    throw Error(ErrorCode::frame_condition_violated,
                "frame declares no transition relation T");
}

}  // namespace

// --- rho translation ---------------------------------------------------------

namespace {

GroundTerm rho_term(const EqSignature& rigid_sig,
                    const EqSignature& flexible_sig, const GroundTerm& t) {
  Sym s = t.symbol();
  if (s.tag == Tag::plain) {
    bool in_r_sig = rigid_sig.has(s);
    bool in_f_sig = flexible_sig.has(s);
    if (in_r_sig && in_f_sig)
      throw Error(ErrorCode::unknown_symbol,
                  "'" + s.name + "' is declared both rigid and flexible; tag it");
    if (!in_r_sig && !in_f_sig)
      throw Error(ErrorCode::unknown_symbol, "'" + s.name + "' is not declared");
    s = Sym(in_r_sig ? Tag::rigid : Tag::flexible, s.name);
  }
  if (t.is_leaf()) return GroundTerm(s);
  std::vector<GroundTerm> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args())
    args.push_back(rho_term(rigid_sig, flexible_sig, a));
  return GroundTerm(s, std::move(args));
}

}  // namespace

EqSentence rho_translate_atom(const EqSignature& rigid_sig,
                              const EqSignature& flexible_sig,
                              const EqSentence& atom) {
  if (atom.is_equation())
    return EqSentence::equation(rho_term(rigid_sig, flexible_sig, atom.lhs()),
                                rho_term(rigid_sig, flexible_sig, atom.rhs()));
  Sym p = atom.pred();
  if (p.tag == Tag::plain) {
    bool in_r_sig = rigid_sig.is_predicate(p);
    bool in_f_sig = flexible_sig.is_predicate(p);
    if (in_r_sig && in_f_sig)
      throw Error(ErrorCode::unknown_symbol,
                  "'" + p.name + "' is declared both rigid and flexible; tag it");
    if (!in_r_sig && !in_f_sig)
      throw Error(ErrorCode::not_a_state_formula,
                  "'" + p.name + "' is not a declared predicate");
    p = Sym(in_r_sig ? Tag::rigid : Tag::flexible, p.name);
  }
  std::vector<GroundTerm> args;
  args.reserve(atom.args().size());
  for (const auto& a : atom.args())
    args.push_back(rho_term(rigid_sig, flexible_sig, a));
  return EqSentence::pred_app(p, std::move(args));
}

EqSentence rho_translate_prop(const EqSignature& flexible_sig,
                              const std::string& name) {
  Sym p(Tag::flexible, name);
  if (!flexible_sig.is_predicate(Sym(name)) ||
      flexible_sig.arity(Sym(name)) != 0)
    throw Error(ErrorCode::not_a_state_formula,
                "proposition '" + name +
                    "' is not a zero-arity flexible predicate");
  return EqSentence::pred_app(p, {});
}

AtomPrinter default_atom_printer() {
  return [](const EqSentence& s) {
    if (!s.is_equation() && s.args().empty()) return eqcore::to_string(s.pred());
    return eqcore::to_string(s);
  };
}

// --- LTL ---------------------------------------------------------------------

LtlFormula LtlFormula::atom(EqSentence s) {
  LtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::atom, std::move(s), {}});
  return f;
}
LtlFormula LtlFormula::tt() {
  LtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::tt, {}, {}});
  return f;
}
LtlFormula LtlFormula::neg(LtlFormula a) {
  LtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::neg, {}, {std::move(a)}});
  return f;
}
LtlFormula LtlFormula::lor(LtlFormula a, LtlFormula b) {
  LtlFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::lor, {}, {std::move(a), std::move(b)}});
  return f;
}
LtlFormula LtlFormula::next(LtlFormula a) {
  LtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::next, {}, {std::move(a)}});
  return f;
}
LtlFormula LtlFormula::until(LtlFormula a, LtlFormula b) {
  LtlFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::until, {}, {std::move(a), std::move(b)}});
  return f;
}
LtlFormula LtlFormula::land(LtlFormula a, LtlFormula b) {
  return neg(lor(neg(std::move(a)), neg(std::move(b))));
}
LtlFormula LtlFormula::implies(LtlFormula a, LtlFormula b) {
  return lor(neg(std::move(a)), std::move(b));
}
LtlFormula LtlFormula::eventually(LtlFormula a) {
  return until(tt(), std::move(a));
}
LtlFormula LtlFormula::always(LtlFormula a) {
  return neg(eventually(neg(std::move(a))));
}
LtlFormula LtlFormula::release(LtlFormula a, LtlFormula b) {
  return neg(until(neg(std::move(a)), neg(std::move(b))));
}
LtlFormula LtlFormula::weak_until(LtlFormula a, LtlFormula b) {
  LtlFormula u = until(a, std::move(b));
  return lor(std::move(u), always(std::move(a)));
}
LtlFormula LtlFormula::strong_release(LtlFormula a, LtlFormula b) {
  LtlFormula r = release(a, std::move(b));
  return lor(std::move(r), eventually(std::move(a)));
}

bool LtlFormula::operator==(const LtlFormula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind || node_->atom != o.node_->atom ||
      node_->children.size() != o.node_->children.size())
    return false;
  for (size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == o.node_->children[i])) return false;
  return true;
}

int LtlFormula::temporal_depth() const {
  int d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.temporal_depth());
  if (kind() == Kind::next || kind() == Kind::until) ++d;
  return d;
}

namespace {

class LtlEval {
 public:
  LtlEval(AtomEvaluator& atoms, Positions pos)
      : atoms_(atoms), pos_(std::move(pos)) {}

  Truth at_start(const LtlFormula& f) { return table(f)[0]; }

 private:
  const std::vector<Truth>& table(const LtlFormula& f) {
    auto it = memo_.find(f.id());
    if (it != memo_.end()) return it->second;
    int n = pos_.size();
    std::vector<Truth> t(static_cast<size_t>(n), Truth::no);
    switch (f.kind()) {
      case LtlFormula::Kind::atom:
        for (int p = 0; p < n; ++p)
          t[static_cast<size_t>(p)] = atoms_.at(f.atom_sentence(),
                                                pos_.states[static_cast<size_t>(p)]);
        break;
      case LtlFormula::Kind::tt:
        std::fill(t.begin(), t.end(), Truth::yes);
        break;
      case LtlFormula::Kind::neg: {
        const auto& c = table(f.left());
        for (int p = 0; p < n; ++p)
          t[static_cast<size_t>(p)] = not3(c[static_cast<size_t>(p)]);
        break;
      }
      case LtlFormula::Kind::lor: {
        const auto& a = table(f.left());
        const auto& b = table(f.right());
        for (int p = 0; p < n; ++p)
          t[static_cast<size_t>(p)] =
              or3(a[static_cast<size_t>(p)], b[static_cast<size_t>(p)]);
        break;
      }
      case LtlFormula::Kind::next: {
        const auto& c = table(f.left());
        for (int p = 0; p < n; ++p)
          t[static_cast<size_t>(p)] = c[static_cast<size_t>(pos_.succ(p))];
        break;
      }
      case LtlFormula::Kind::until: {
        // least fixpoint of t = b or (a and t(succ))
        const auto& a = table(f.left());
        const auto& b = table(f.right());
        bool changed = true;
        while (changed) {
          changed = false;
          for (int p = n - 1; p >= 0; --p) {
            Truth v = or3(b[static_cast<size_t>(p)],
                          and3(a[static_cast<size_t>(p)],
                               t[static_cast<size_t>(pos_.succ(p))]));
            if (v != t[static_cast<size_t>(p)]) {
              t[static_cast<size_t>(p)] = v;
              changed = true;
            }
          }
        }
        break;
      }
    }
    return memo_.emplace(f.id(), std::move(t)).first->second;
  }

  AtomEvaluator& atoms_;
  Positions pos_;
  std::map<const void*, std::vector<Truth>> memo_;
};

}  // namespace

void check_ltl_frame(const FiniteFrame& f) {
  require_transition(f);
  require(f, relalg::total_condition(kTransition), "T is not total");
  require(f, relalg::functional_condition(kTransition), "T is not functional");
  if (f.rels.count(kInitial))
    require(f, relalg::initial_condition(kInitial),
            "St0 is not contained in the identity");
}

LassoPath path_from(const FiniteFrame& f, const std::string& start) {
  check_ltl_frame(f);
  const Relation& t = f.relation(kTransition);
  std::vector<int> seq;
  std::map<int, int> first_seen;
  int cur = f.index_of(start);
  while (!first_seen.count(cur)) {
    first_seen[cur] = static_cast<int>(seq.size());
    seq.push_back(cur);
    int next = -1;
    for (int j = 0; j < f.size(); ++j)
      if (t.get(cur, j)) {
        next = j;
        break;
      }
    cur = next;  // totality guarantees next >= 0
  }
  int k = first_seen[cur];
  LassoPath pi;
  for (int p = 0; p < k; ++p) pi.prefix.push_back(f.id_of(seq[static_cast<size_t>(p)]));
  for (size_t p = static_cast<size_t>(k); p < seq.size(); ++p)
    pi.cycle.push_back(f.id_of(seq[p]));
  return pi;
}

Verdict ltl_check(const InterpretationTheory& i, const FiniteFrame& f,
                  const LassoPath& pi, const LtlFormula& phi,
                  const EntailBudget& b) {
  check_ltl_frame(f);
  check_lasso(f, pi);
  AtomEvaluator atoms{i, f, b, {}};
  LtlEval eval(atoms, positions_of(f, pi));
  return verdict_of(eval.at_start(phi));
}

// --- CTL ---------------------------------------------------------------------

CtlFormula CtlFormula::atom(EqSentence s) {
  CtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::atom, std::move(s), {}});
  return f;
}
CtlFormula CtlFormula::tt() {
  CtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::tt, {}, {}});
  return f;
}
CtlFormula CtlFormula::neg(CtlFormula a) {
  CtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::neg, {}, {std::move(a)}});
  return f;
}
CtlFormula CtlFormula::lor(CtlFormula a, CtlFormula b) {
  CtlFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::lor, {}, {std::move(a), std::move(b)}});
  return f;
}
CtlFormula CtlFormula::ex(CtlFormula a) {
  CtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::ex, {}, {std::move(a)}});
  return f;
}
CtlFormula CtlFormula::eg(CtlFormula a) {
  CtlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::eg, {}, {std::move(a)}});
  return f;
}
CtlFormula CtlFormula::eu(CtlFormula a, CtlFormula b) {
  CtlFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::eu, {}, {std::move(a), std::move(b)}});
  return f;
}
CtlFormula CtlFormula::land(CtlFormula a, CtlFormula b) {
  return neg(lor(neg(std::move(a)), neg(std::move(b))));
}
CtlFormula CtlFormula::implies(CtlFormula a, CtlFormula b) {
  return lor(neg(std::move(a)), std::move(b));
}
CtlFormula CtlFormula::ef(CtlFormula a) { return eu(tt(), std::move(a)); }
CtlFormula CtlFormula::ax(CtlFormula a) { return neg(ex(neg(std::move(a)))); }
CtlFormula CtlFormula::af(CtlFormula a) { return neg(eg(neg(std::move(a)))); }
CtlFormula CtlFormula::ag(CtlFormula a) { return neg(ef(neg(std::move(a)))); }
CtlFormula CtlFormula::au(CtlFormula a, CtlFormula b) {
  CtlFormula left = eu(neg(b), neg(lor(std::move(a), b)));
  return neg(lor(std::move(left), eg(neg(std::move(b)))));
}

bool CtlFormula::operator==(const CtlFormula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind || node_->atom != o.node_->atom ||
      node_->children.size() != o.node_->children.size())
    return false;
  for (size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == o.node_->children[i])) return false;
  return true;
}

namespace {

Truth ex3(const Relation& t, const std::vector<Truth>& v, int s) {
  Truth acc = Truth::no;
  for (int j = 0; j < t.size(); ++j)
    if (t.get(s, j)) acc = or3(acc, v[static_cast<size_t>(j)]);
  return acc;
}

class CtlEval {
 public:
  CtlEval(AtomEvaluator& atoms, const FiniteFrame& f)
      : atoms_(atoms), frame_(f), t_(f.relation(kTransition)) {}

  Truth at(const CtlFormula& f, int s) {
    return table(f)[static_cast<size_t>(s)];
  }

 private:
  const std::vector<Truth>& table(const CtlFormula& f) {
    auto it = memo_.find(f.id());
    if (it != memo_.end()) return it->second;
    int n = frame_.size();
    std::vector<Truth> t(static_cast<size_t>(n), Truth::no);
    switch (f.kind()) {
      case CtlFormula::Kind::atom:
        for (int s = 0; s < n; ++s)
          t[static_cast<size_t>(s)] = atoms_.at(f.atom_sentence(), s);
        break;
      case CtlFormula::Kind::tt:
        std::fill(t.begin(), t.end(), Truth::yes);
        break;
      case CtlFormula::Kind::neg: {
        const auto& c = table(f.left());
        for (int s = 0; s < n; ++s)
          t[static_cast<size_t>(s)] = not3(c[static_cast<size_t>(s)]);
        break;
      }
      case CtlFormula::Kind::lor: {
        const auto& a = table(f.left());
        const auto& b = table(f.right());
        for (int s = 0; s < n; ++s)
          t[static_cast<size_t>(s)] =
              or3(a[static_cast<size_t>(s)], b[static_cast<size_t>(s)]);
        break;
      }
      case CtlFormula::Kind::ex: {
        const auto& c = table(f.left());
        for (int s = 0; s < n; ++s) t[static_cast<size_t>(s)] = ex3(t_, c, s);
        break;
      }
      case CtlFormula::Kind::eg: {
        // greatest fixpoint of t = phi and EX t
        const auto& c = table(f.left());
        std::fill(t.begin(), t.end(), Truth::yes);
        bool changed = true;
        while (changed) {
          changed = false;
          for (int s = 0; s < n; ++s) {
            Truth v = and3(c[static_cast<size_t>(s)], ex3(t_, t, s));
            if (v != t[static_cast<size_t>(s)]) {
              t[static_cast<size_t>(s)] = v;
              changed = true;
            }
          }
        }
        break;
      }
      case CtlFormula::Kind::eu: {
        // least fixpoint of t = psi or (phi and EX t)
        const auto& a = table(f.left());
        const auto& b = table(f.right());
        bool changed = true;
        while (changed) {
          changed = false;
          for (int s = 0; s < n; ++s) {
            Truth v = or3(b[static_cast<size_t>(s)],
                          and3(a[static_cast<size_t>(s)], ex3(t_, t, s)));
            if (v != t[static_cast<size_t>(s)]) {
              t[static_cast<size_t>(s)] = v;
              changed = true;
            }
          }
        }
        break;
      }
    }
    return memo_.emplace(f.id(), std::move(t)).first->second;
  }

  AtomEvaluator& atoms_;
  const FiniteFrame& frame_;
  const Relation& t_;
  std::map<const void*, std::vector<Truth>> memo_;
};

}  // namespace

Verdict ctl_check(const InterpretationTheory& i, const FiniteFrame& f,
                  const std::string& state, const CtlFormula& phi,
                  const EntailBudget& b) {
  require_transition(f);
  require(f, relalg::total_condition(kTransition), "T is not total");
  AtomEvaluator atoms{i, f, b, {}};
  CtlEval eval(atoms, f);
  return verdict_of(eval.at(phi, f.index_of(state)));
}

// --- FODL ----------------------------------------------------------------------

struct Program::Node {
  Kind kind;
  std::string name;
  std::vector<Program> progs;
  FodlFormula cond;
};

struct FodlFormula::Node {
  Kind kind;
  EqSentence atom;
  std::string var;
  Program prog;
  std::vector<FodlFormula> children;
};

Program Program::atomic(std::string name) {
  Program p;
  p.node_ = std::make_shared<Node>(Node{Kind::atomic, std::move(name), {}, {}});
  return p;
}
Program Program::test(FodlFormula condition) {
  Program p;
  p.node_ = std::make_shared<Node>(Node{Kind::test, "", {}, std::move(condition)});
  return p;
}
Program Program::choice(Program a, Program b) {
  Program p;
  p.node_ = std::make_shared<Node>(
      Node{Kind::choice, "", {std::move(a), std::move(b)}, {}});
  return p;
}
Program Program::seq(Program a, Program b) {
  Program p;
  p.node_ = std::make_shared<Node>(
      Node{Kind::seq, "", {std::move(a), std::move(b)}, {}});
  return p;
}
Program Program::star(Program a) {
  Program p;
  p.node_ = std::make_shared<Node>(Node{Kind::star, "", {std::move(a)}, {}});
  return p;
}

Program::Kind Program::kind() const { return node_->kind; }
const std::string& Program::name() const { return node_->name; }
const FodlFormula& Program::condition() const { return node_->cond; }
const Program& Program::left() const { return node_->progs[0]; }
const Program& Program::right() const { return node_->progs[1]; }
const Program& Program::arg() const { return node_->progs[0]; }
const void* Program::id() const { return node_.get(); }

bool Program::operator==(const Program& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind || node_->name != o.node_->name ||
      node_->progs.size() != o.node_->progs.size())
    return false;
  for (size_t i = 0; i < node_->progs.size(); ++i)
    if (!(node_->progs[i] == o.node_->progs[i])) return false;
  if (node_->kind == Kind::test && !(node_->cond == o.node_->cond))
    return false;
  return true;
}

FodlFormula FodlFormula::atom(EqSentence s) {
  FodlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::atom, std::move(s), "", {}, {}});
  return f;
}
FodlFormula FodlFormula::tt() {
  FodlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::tt, {}, "", {}, {}});
  return f;
}
FodlFormula FodlFormula::neg(FodlFormula a) {
  FodlFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::neg, {}, "", {}, {std::move(a)}});
  return f;
}
FodlFormula FodlFormula::lor(FodlFormula a, FodlFormula b) {
  FodlFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::lor, {}, "", {}, {std::move(a), std::move(b)}});
  return f;
}
FodlFormula FodlFormula::exists(std::string var, FodlFormula a) {
  FodlFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::exists_, {}, std::move(var), {}, {std::move(a)}});
  return f;
}
FodlFormula FodlFormula::diamond(Program p, FodlFormula a) {
  FodlFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::diamond, {}, "", std::move(p), {std::move(a)}});
  return f;
}
FodlFormula FodlFormula::land(FodlFormula a, FodlFormula b) {
  return neg(lor(neg(std::move(a)), neg(std::move(b))));
}
FodlFormula FodlFormula::implies(FodlFormula a, FodlFormula b) {
  return lor(neg(std::move(a)), std::move(b));
}
FodlFormula FodlFormula::box(Program p, FodlFormula a) {
  return neg(diamond(std::move(p), neg(std::move(a))));
}

FodlFormula::Kind FodlFormula::kind() const { return node_->kind; }
const EqSentence& FodlFormula::atom_sentence() const { return node_->atom; }
const std::string& FodlFormula::var() const { return node_->var; }
const Program& FodlFormula::program() const { return node_->prog; }
const FodlFormula& FodlFormula::left() const { return node_->children[0]; }
const FodlFormula& FodlFormula::right() const { return node_->children[1]; }
const void* FodlFormula::id() const { return node_.get(); }

bool FodlFormula::operator==(const FodlFormula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind || node_->atom != o.node_->atom ||
      node_->var != o.node_->var ||
      node_->children.size() != o.node_->children.size())
    return false;
  if (node_->kind == Kind::diamond && !(node_->prog == o.node_->prog))
    return false;
  for (size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == o.node_->children[i])) return false;
  return true;
}

Program if_then_else(FodlFormula cond, Program then_p, Program else_p) {
  Program a = Program::seq(Program::test(cond), std::move(then_p));
  Program b = Program::seq(Program::test(FodlFormula::neg(std::move(cond))),
                           std::move(else_p));
  return Program::choice(std::move(a), std::move(b));
}

Program while_do(FodlFormula cond, Program body) {
  Program loop =
      Program::star(Program::seq(Program::test(cond), std::move(body)));
  return Program::seq(std::move(loop),
                      Program::test(FodlFormula::neg(std::move(cond))));
}

namespace {

// Returns the indices of frame states that agree with `s` on every flexible
// symbol except `x` and assign `x` a term from the quantification domain.
std::vector<int> x_variants(const FiniteFrame& f, int s, const std::string& x,
                            const std::vector<GroundTerm>& range) {
  auto defs_without = [&](const theoria::StateTheory& st) {
    std::vector<theoria::Definition> defs;
    for (const auto& d : st.defs)
      if (d.lhs_symbol().name != x) defs.push_back(d);
    std::sort(defs.begin(), defs.end());
    return defs;
  };
  const auto& base_theory = f.theory_of(f.id_of(s));
  auto key = defs_without(base_theory);
  std::vector<int> out;
  for (int j = 0; j < f.size(); ++j) {
    const auto& cand = f.theory_of(f.id_of(j));
    if (cand.flexible_sig != base_theory.flexible_sig ||
        cand.rigid_sig != base_theory.rigid_sig)
      continue;
    if (defs_without(cand) != key) continue;
    bool assigns = false;
    for (const auto& d : cand.defs)
      if (d.kind() == theoria::Definition::Kind::constant &&
          d.lhs_symbol().name == x)
        for (const auto& t : range)
          if (d.rhs() == t) {
            assigns = true;
            break;
          }
    if (assigns) out.push_back(j);
  }
  return out;
}

class FodlEval {
 public:
  FodlEval(AtomEvaluator& atoms, const FiniteFrame& f, const QuantDomain& qd)
      : atoms_(atoms), frame_(f), qd_(qd) {}

  Truth at(const FodlFormula& f, int s) {
    return table(f)[static_cast<size_t>(s)];
  }

 private:
  const std::vector<GroundTerm>& range_of(const std::string& x) {
    auto it = qd_.ranges.find(x);
    if (it == qd_.ranges.end() || it->second.empty())
      throw Error(ErrorCode::empty_quant_domain,
                  "no quantification domain for '" + x + "'");
    return it->second;
  }

  // lower: pairs definitely in the program relation; upper: possibly in it
  std::pair<Relation, Relation> prog_rel(const Program& p) {
    auto it = pmemo_.find(p.id());
    if (it != pmemo_.end()) return it->second;
    int n = frame_.size();
    std::pair<Relation, Relation> r{Relation::empty(n), Relation::empty(n)};
    switch (p.kind()) {
      case Program::Kind::atomic:
        r.first = frame_.relation(p.name());
        r.second = r.first;
        break;
      case Program::Kind::test: {
        const auto& c = table(p.condition());
        for (int s = 0; s < n; ++s) {
          if (c[static_cast<size_t>(s)] == Truth::yes) r.first.set(s, s);
          if (c[static_cast<size_t>(s)] != Truth::no) r.second.set(s, s);
        }
        break;
      }
      case Program::Kind::choice: {
        auto a = prog_rel(p.left());
        auto b = prog_rel(p.right());
        r = {a.first | b.first, a.second | b.second};
        break;
      }
      case Program::Kind::seq: {
        auto a = prog_rel(p.left());
        auto b = prog_rel(p.right());
        r = {a.first.compose(b.first), a.second.compose(b.second)};
        break;
      }
      case Program::Kind::star: {
        auto a = prog_rel(p.arg());
        r = {relalg::closure(a.first), relalg::closure(a.second)};
        break;
      }
    }
    pmemo_.emplace(p.id(), r);
    return r;
  }

  const std::vector<Truth>& table(const FodlFormula& f) {
    auto it = memo_.find(f.id());
    if (it != memo_.end()) return it->second;
    int n = frame_.size();
    std::vector<Truth> t(static_cast<size_t>(n), Truth::no);
    switch (f.kind()) {
      case FodlFormula::Kind::atom:
        for (int s = 0; s < n; ++s)
          t[static_cast<size_t>(s)] = atoms_.at(f.atom_sentence(), s);
        break;
      case FodlFormula::Kind::tt:
        std::fill(t.begin(), t.end(), Truth::yes);
        break;
      case FodlFormula::Kind::neg: {
        const auto& c = table(f.left());
        for (int s = 0; s < n; ++s)
          t[static_cast<size_t>(s)] = not3(c[static_cast<size_t>(s)]);
        break;
      }
      case FodlFormula::Kind::lor: {
        const auto& a = table(f.left());
        const auto& b = table(f.right());
        for (int s = 0; s < n; ++s)
          t[static_cast<size_t>(s)] =
              or3(a[static_cast<size_t>(s)], b[static_cast<size_t>(s)]);
        break;
      }
      case FodlFormula::Kind::exists_: {
        const auto& range = range_of(f.var());
        const auto& c = table(f.left());
        for (int s = 0; s < n; ++s) {
          Truth acc = Truth::no;
          for (int j : x_variants(frame_, s, f.var(), range))
            acc = or3(acc, c[static_cast<size_t>(j)]);
          t[static_cast<size_t>(s)] = acc;
        }
        break;
      }
      case FodlFormula::Kind::diamond: {
        auto [lower, upper] = prog_rel(f.program());
        const auto& c = table(f.left());
        for (int s = 0; s < n; ++s) {
          Truth acc = Truth::no;
          for (int j = 0; j < n; ++j) {
            if (!upper.get(s, j)) continue;
            Truth member =
                lower.get(s, j) ? Truth::yes : Truth::unknown;
            acc = or3(acc, and3(member, c[static_cast<size_t>(j)]));
          }
          t[static_cast<size_t>(s)] = acc;
        }
        break;
      }
    }
    return memo_.emplace(f.id(), std::move(t)).first->second;
  }

  AtomEvaluator& atoms_;
  const FiniteFrame& frame_;
  const QuantDomain& qd_;
  std::map<const void*, std::vector<Truth>> memo_;
  std::map<const void*, std::pair<Relation, Relation>> pmemo_;
};

}  // namespace

Verdict fodl_check(const InterpretationTheory& i, const FiniteFrame& f,
                   const std::string& state, const FodlFormula& phi,
                   const QuantDomain& qd, const EntailBudget& b,
                   const std::set<std::string>& deterministic) {
  for (const auto& name : deterministic) {
    if (!f.rels.count(name))
      throw Error(ErrorCode::frame_condition_violated,
                  "atomic program '" + name + "' is not declared in the frame");
    require(f, relalg::total_condition(name),
            "atomic program '" + name + "' is not total");
    require(f, relalg::functional_condition(name),
            "atomic program '" + name + "' is not functional");
  }
  AtomEvaluator atoms{i, f, b, {}};
  FodlEval eval(atoms, f, qd);
  return verdict_of(eval.at(phi, f.index_of(state)));
}

// --- FOCTL* ----------------------------------------------------------------------

struct StateFormula::Node {
  Kind kind;
  EqSentence atom;
  std::string var;
  PathFormula path;
  std::vector<StateFormula> children;
};

struct PathFormula::Node {
  Kind kind;
  StateFormula state;
  std::vector<PathFormula> children;
};

StateFormula StateFormula::atom(EqSentence s) {
  StateFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::atom, std::move(s), "", {}, {}});
  return f;
}
StateFormula StateFormula::tt() {
  StateFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::tt, {}, "", {}, {}});
  return f;
}
StateFormula StateFormula::neg(StateFormula a) {
  StateFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::neg, {}, "", {}, {std::move(a)}});
  return f;
}
StateFormula StateFormula::lor(StateFormula a, StateFormula b) {
  StateFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::lor, {}, "", {}, {std::move(a), std::move(b)}});
  return f;
}
StateFormula StateFormula::exists(std::string var, StateFormula a) {
  StateFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::exists_, {}, std::move(var), {}, {std::move(a)}});
  return f;
}
StateFormula StateFormula::epath(PathFormula p) {
  StateFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::epath, {}, "", std::move(p), {}});
  return f;
}
StateFormula StateFormula::land(StateFormula a, StateFormula b) {
  return neg(lor(neg(std::move(a)), neg(std::move(b))));
}
StateFormula StateFormula::implies(StateFormula a, StateFormula b) {
  return lor(neg(std::move(a)), std::move(b));
}

StateFormula::Kind StateFormula::kind() const { return node_->kind; }
const EqSentence& StateFormula::atom_sentence() const { return node_->atom; }
const std::string& StateFormula::var() const { return node_->var; }
const PathFormula& StateFormula::path() const { return node_->path; }
const StateFormula& StateFormula::left() const { return node_->children[0]; }
const StateFormula& StateFormula::right() const { return node_->children[1]; }
const void* StateFormula::id() const { return node_.get(); }

bool StateFormula::operator==(const StateFormula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind || node_->atom != o.node_->atom ||
      node_->var != o.node_->var ||
      node_->children.size() != o.node_->children.size())
    return false;
  if (node_->kind == Kind::epath && !(node_->path == o.node_->path))
    return false;
  for (size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == o.node_->children[i])) return false;
  return true;
}

PathFormula PathFormula::state(StateFormula s) {
  PathFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::state, std::move(s), {}});
  return f;
}
PathFormula PathFormula::neg(PathFormula a) {
  PathFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::neg, {}, {std::move(a)}});
  return f;
}
PathFormula PathFormula::lor(PathFormula a, PathFormula b) {
  PathFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::lor, {}, {std::move(a), std::move(b)}});
  return f;
}
PathFormula PathFormula::next(PathFormula a) {
  PathFormula f;
  f.node_ = std::make_shared<Node>(Node{Kind::next, {}, {std::move(a)}});
  return f;
}
PathFormula PathFormula::until(PathFormula a, PathFormula b) {
  PathFormula f;
  f.node_ = std::make_shared<Node>(
      Node{Kind::until, {}, {std::move(a), std::move(b)}});
  return f;
}
PathFormula PathFormula::land(PathFormula a, PathFormula b) {
  return neg(lor(neg(std::move(a)), neg(std::move(b))));
}
PathFormula PathFormula::implies(PathFormula a, PathFormula b) {
  return lor(neg(std::move(a)), std::move(b));
}
PathFormula PathFormula::eventually(PathFormula a) {
  return until(state(StateFormula::tt()), std::move(a));
}
PathFormula PathFormula::always(PathFormula a) {
  return neg(eventually(neg(std::move(a))));
}
PathFormula PathFormula::release(PathFormula a, PathFormula b) {
  return neg(until(neg(std::move(a)), neg(std::move(b))));
}
PathFormula PathFormula::weak_until(PathFormula a, PathFormula b) {
  PathFormula u = until(a, std::move(b));
  return lor(std::move(u), always(std::move(a)));
}
PathFormula PathFormula::strong_release(PathFormula a, PathFormula b) {
  PathFormula r = release(a, std::move(b));
  return lor(std::move(r), eventually(std::move(a)));
}

PathFormula::Kind PathFormula::kind() const { return node_->kind; }
const StateFormula& PathFormula::state_formula() const { return node_->state; }
const PathFormula& PathFormula::left() const { return node_->children[0]; }
const PathFormula& PathFormula::right() const { return node_->children[1]; }
const void* PathFormula::id() const { return node_.get(); }

bool PathFormula::operator==(const PathFormula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind ||
      node_->children.size() != o.node_->children.size())
    return false;
  if (node_->kind == Kind::state && !(node_->state == o.node_->state))
    return false;
  for (size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == o.node_->children[i])) return false;
  return true;
}

namespace {

void collect_temporal(const PathFormula& f, std::set<const void*>& seen) {
  if (f.kind() == PathFormula::Kind::next ||
      f.kind() == PathFormula::Kind::until)
    seen.insert(f.id());
  if (f.kind() == PathFormula::Kind::state) return;
  switch (f.kind()) {
    case PathFormula::Kind::neg:
    case PathFormula::Kind::next:
      collect_temporal(f.left(), seen);
      break;
    case PathFormula::Kind::lor:
    case PathFormula::Kind::until:
      collect_temporal(f.left(), seen);
      collect_temporal(f.right(), seen);
      break;
    default:
      break;
  }
}

}  // namespace

int PathFormula::temporal_count() const {
  std::set<const void*> seen;
  collect_temporal(*this, seen);
  return static_cast<int>(seen.size());
}

namespace {

class CtlStarEval {
 public:
  CtlStarEval(AtomEvaluator& atoms, const FiniteFrame& f, const QuantDomain& qd,
              int bound)
      : atoms_(atoms), frame_(f), qd_(qd), bound_(bound),
        t_(f.relation(kTransition)) {}

  Truth state_val(const StateFormula& f, int s) {
    auto key = std::make_pair(f.id(), s);
    auto it = smemo_.find(key);
    if (it != smemo_.end()) return it->second;
    Truth v = Truth::unknown;
    switch (f.kind()) {
      case StateFormula::Kind::atom:
        v = atoms_.at(f.atom_sentence(), s);
        break;
      case StateFormula::Kind::tt:
        v = Truth::yes;
        break;
      case StateFormula::Kind::neg:
        v = not3(state_val(f.left(), s));
        break;
      case StateFormula::Kind::lor:
        v = or3(state_val(f.left(), s), state_val(f.right(), s));
        break;
      case StateFormula::Kind::exists_: {
        auto rit = qd_.ranges.find(f.var());
        if (rit == qd_.ranges.end() || rit->second.empty())
          throw Error(ErrorCode::empty_quant_domain,
                      "no quantification domain for '" + f.var() + "'");
        Truth acc = Truth::no;
        for (int j : x_variants(frame_, s, f.var(), rit->second))
          acc = or3(acc, state_val(f.left(), j));
        v = acc;
        break;
      }
      case StateFormula::Kind::epath:
        v = exists_path(f.path(), s);
        break;
    }
    smemo_.emplace(key, v);
    return v;
  }

  Truth path_val(const PathFormula& f, const Positions& pos) {
    std::map<const void*, std::vector<Truth>> memo;
    return path_table(f, pos, memo)[0];
  }

 private:
  const std::vector<Truth>& path_table(
      const PathFormula& f, const Positions& pos,
      std::map<const void*, std::vector<Truth>>& memo) {
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    int n = pos.size();
    std::vector<Truth> t(static_cast<size_t>(n), Truth::no);
    switch (f.kind()) {
      case PathFormula::Kind::state:
        for (int p = 0; p < n; ++p)
          t[static_cast<size_t>(p)] =
              state_val(f.state_formula(), pos.states[static_cast<size_t>(p)]);
        break;
      case PathFormula::Kind::neg: {
        const auto& c = path_table(f.left(), pos, memo);
        for (int p = 0; p < n; ++p)
          t[static_cast<size_t>(p)] = not3(c[static_cast<size_t>(p)]);
        break;
      }
      case PathFormula::Kind::lor: {
        const auto& a = path_table(f.left(), pos, memo);
        const auto& b = path_table(f.right(), pos, memo);
        for (int p = 0; p < n; ++p)
          t[static_cast<size_t>(p)] =
              or3(a[static_cast<size_t>(p)], b[static_cast<size_t>(p)]);
        break;
      }
      case PathFormula::Kind::next: {
        const auto& c = path_table(f.left(), pos, memo);
        for (int p = 0; p < n; ++p)
          t[static_cast<size_t>(p)] = c[static_cast<size_t>(pos.succ(p))];
        break;
      }
      case PathFormula::Kind::until: {
        const auto& a = path_table(f.left(), pos, memo);
        const auto& b = path_table(f.right(), pos, memo);
        bool changed = true;
        while (changed) {
          changed = false;
          for (int p = n - 1; p >= 0; --p) {
            Truth v = or3(b[static_cast<size_t>(p)],
                          and3(a[static_cast<size_t>(p)],
                               t[static_cast<size_t>(pos.succ(p))]));
            if (v != t[static_cast<size_t>(p)]) {
              t[static_cast<size_t>(p)] = v;
              changed = true;
            }
          }
        }
        break;
      }
    }
    return memo.emplace(f.id(), std::move(t)).first->second;
  }

 public:
  // Finds a lasso witnessing the path formula from s, if any within bound.
  std::optional<Positions> find_witness(const PathFormula& f, int s) {
    witness_.reset();
    capture_witness_ = true;
    std::vector<int> walk{s};
    Truth acc = Truth::no;
    enumerate(f, walk, acc);
    capture_witness_ = false;
    return witness_;
  }

 private:
  // Bounded existential path quantification: enumerate lassos with
  // |prefix| <= bound and |cycle| <= bound starting at s.
  Truth exists_path(const PathFormula& f, int s) {
    int k = f.temporal_count();
    long long threshold =
        k >= 30 ? LLONG_MAX
                : static_cast<long long>(frame_.size()) * (1LL << k);
    Truth acc = Truth::no;
    std::vector<int> walk{s};
    if (enumerate(f, walk, acc)) return Truth::yes;
    if (acc == Truth::yes) return Truth::yes;
    if (bound_ >= threshold) return acc;
    return Truth::unknown;
  }

  bool enumerate(const PathFormula& f, std::vector<int>& walk, Truth& acc) {
    int n = static_cast<int>(walk.size());
    // close the walk into a lasso at every admissible loop position
    for (int l = 0; l < n; ++l) {
      if (l > bound_ || n - l > bound_) continue;
      if (!t_.get(walk[static_cast<size_t>(n - 1)], walk[static_cast<size_t>(l)]))
        continue;
      Positions pos;
      pos.states = walk;
      pos.loop = l;
      Truth v = path_val(f, pos);
      acc = or3(acc, v);
      if (acc == Truth::yes) {
        if (capture_witness_) witness_ = pos;
        return true;
      }
    }
    if (n >= 2 * bound_) return false;
    for (int j = 0; j < frame_.size(); ++j) {
      if (!t_.get(walk.back(), j)) continue;
      walk.push_back(j);
      bool done = enumerate(f, walk, acc);
      walk.pop_back();
      if (done) return true;
    }
    return false;
  }

  AtomEvaluator& atoms_;
  const FiniteFrame& frame_;
  const QuantDomain& qd_;
  int bound_;
  const Relation& t_;
  std::map<std::pair<const void*, int>, Truth> smemo_;
  bool capture_witness_ = false;
  std::optional<Positions> witness_;
};

}  // namespace

Verdict foctlstar_check(const InterpretationTheory& i, const FiniteFrame& f,
                        const std::string& state, const StateFormula& phi,
                        const QuantDomain& qd, int bound,
                        const EntailBudget& b) {
  require_transition(f);
  require(f, relalg::total_condition(kTransition), "T is not total");
  if (bound < 1)
    throw Error(ErrorCode::invalid_path, "lasso bound must be at least 1");
  AtomEvaluator atoms{i, f, b, {}};
  CtlStarEval eval(atoms, f, qd, bound);
  return verdict_of(eval.state_val(phi, f.index_of(state)));
}

PathWitness foctlstar_check_witness(const InterpretationTheory& i,
                                    const FiniteFrame& f,
                                    const std::string& state,
                                    const StateFormula& phi,
                                    const QuantDomain& qd, int bound,
                                    const EntailBudget& b) {
  PathWitness out;
  out.verdict = foctlstar_check(i, f, state, phi, qd, bound, b);
  if (out.verdict.is_true() && phi.kind() == StateFormula::Kind::epath) {
    AtomEvaluator atoms{i, f, b, {}};
    CtlStarEval eval(atoms, f, qd, bound);
    if (auto pos = eval.find_witness(phi.path(), f.index_of(state))) {
      LassoPath pi;
      for (int p = 0; p < pos->size(); ++p) {
        const std::string& id = f.id_of(pos->states[static_cast<size_t>(p)]);
        if (p < pos->loop)
          pi.prefix.push_back(id);
        else
          pi.cycle.push_back(id);
      }
      out.lasso = std::move(pi);
    }
  }
  return out;
}

Verdict foctlstar_check_path(const InterpretationTheory& i,
                             const FiniteFrame& f, const LassoPath& pi,
                             const PathFormula& phi, const QuantDomain& qd,
                             int bound, const EntailBudget& b) {
  require_transition(f);
  require(f, relalg::total_condition(kTransition), "T is not total");
  check_lasso(f, pi);
  if (bound < 1)
    throw Error(ErrorCode::invalid_path, "lasso bound must be at least 1");
  AtomEvaluator atoms{i, f, b, {}};
  CtlStarEval eval(atoms, f, qd, bound);
  return verdict_of(eval.path_val(phi, positions_of(f, pi)));
}

// --- printers ------------------------------------------------------------------

namespace {

std::string ltl_str(const LtlFormula& f, const AtomPrinter& atoms, int ctx) {
  int p = 4;
  std::string out;
  switch (f.kind()) {
    case LtlFormula::Kind::atom: out = atoms(f.atom_sentence()); break;
    case LtlFormula::Kind::tt: out = "true"; break;
    case LtlFormula::Kind::neg:
      p = 3;
      out = "not " + ltl_str(f.left(), atoms, 3);
      break;
    case LtlFormula::Kind::next:
      p = 3;
      out = "X " + ltl_str(f.left(), atoms, 3);
      break;
    case LtlFormula::Kind::until:
      p = 2;
      out = ltl_str(f.left(), atoms, 3) + " U " + ltl_str(f.right(), atoms, 2);
      break;
    case LtlFormula::Kind::lor:
      p = 1;
      out = ltl_str(f.left(), atoms, 1) + " or " + ltl_str(f.right(), atoms, 2);
      break;
  }
  if (p < ctx) return "(" + out + ")";
  return out;
}

std::string ctl_str(const CtlFormula& f, const AtomPrinter& atoms, int ctx) {
  int p = 4;
  std::string out;
  switch (f.kind()) {
    case CtlFormula::Kind::atom: out = atoms(f.atom_sentence()); break;
    case CtlFormula::Kind::tt: out = "true"; break;
    case CtlFormula::Kind::neg:
      p = 3;
      out = "not " + ctl_str(f.left(), atoms, 3);
      break;
    case CtlFormula::Kind::ex:
      p = 3;
      out = "EX " + ctl_str(f.left(), atoms, 3);
      break;
    case CtlFormula::Kind::eg:
      p = 3;
      out = "EG " + ctl_str(f.left(), atoms, 3);
      break;
    case CtlFormula::Kind::eu:
      out = "E [" + ctl_str(f.left(), atoms, 0) + " U " +
            ctl_str(f.right(), atoms, 0) + "]";
      break;
    case CtlFormula::Kind::lor:
      p = 1;
      out = ctl_str(f.left(), atoms, 1) + " or " + ctl_str(f.right(), atoms, 2);
      break;
  }
  if (p < ctx) return "(" + out + ")";
  return out;
}

std::string fodl_str(const FodlFormula& f, const AtomPrinter& atoms, int ctx);

std::string prog_str(const Program& p, const AtomPrinter& atoms, int ctx) {
  int prec = 3;
  std::string out;
  switch (p.kind()) {
    case Program::Kind::atomic: out = p.name(); break;
    case Program::Kind::test:
      out = "test(" + fodl_str(p.condition(), atoms, 0) + ")";
      break;
    case Program::Kind::choice:
      prec = 0;
      out = prog_str(p.left(), atoms, 0) + " + " + prog_str(p.right(), atoms, 1);
      break;
    case Program::Kind::seq:
      prec = 1;
      out = prog_str(p.left(), atoms, 1) + " . " + prog_str(p.right(), atoms, 2);
      break;
    case Program::Kind::star:
      prec = 2;
      out = prog_str(p.arg(), atoms, 3) + "*";
      break;
  }
  if (prec < ctx) return "(" + out + ")";
  return out;
}

std::string fodl_str(const FodlFormula& f, const AtomPrinter& atoms, int ctx) {
  int p = 4;
  std::string out;
  switch (f.kind()) {
    case FodlFormula::Kind::atom: out = atoms(f.atom_sentence()); break;
    case FodlFormula::Kind::tt: out = "true"; break;
    case FodlFormula::Kind::neg:
      p = 3;
      out = "not " + fodl_str(f.left(), atoms, 3);
      break;
    case FodlFormula::Kind::diamond:
      p = 3;
      out = "<" + prog_str(f.program(), atoms, 0) + "> " +
            fodl_str(f.left(), atoms, 3);
      break;
    case FodlFormula::Kind::lor:
      p = 1;
      out = fodl_str(f.left(), atoms, 1) + " or " + fodl_str(f.right(), atoms, 2);
      break;
    case FodlFormula::Kind::exists_:
      p = 0;
      out = "exists " + f.var() + " : " + fodl_str(f.left(), atoms, 0);
      break;
  }
  if (p < ctx) return "(" + out + ")";
  return out;
}

std::string path_str(const PathFormula& f, const AtomPrinter& atoms, int ctx);

std::string state_str(const StateFormula& f, const AtomPrinter& atoms,
                      int ctx) {
  int p = 4;
  std::string out;
  switch (f.kind()) {
    case StateFormula::Kind::atom: out = atoms(f.atom_sentence()); break;
    case StateFormula::Kind::tt: out = "true"; break;
    case StateFormula::Kind::neg:
      p = 3;
      out = "not " + state_str(f.left(), atoms, 3);
      break;
    case StateFormula::Kind::epath:
      p = 3;
      out = "E " + path_str(f.path(), atoms, 3);
      break;
    case StateFormula::Kind::lor:
      p = 1;
      out = state_str(f.left(), atoms, 1) + " or " +
            state_str(f.right(), atoms, 2);
      break;
    case StateFormula::Kind::exists_:
      p = 0;
      out = "exists " + f.var() + " : " + state_str(f.left(), atoms, 0);
      break;
  }
  if (p < ctx) return "(" + out + ")";
  return out;
}

std::string path_str(const PathFormula& f, const AtomPrinter& atoms, int ctx) {
  int p = 4;
  std::string out;
  switch (f.kind()) {
    case PathFormula::Kind::state:
      return state_str(f.state_formula(), atoms, ctx);
    case PathFormula::Kind::neg:
      p = 3;
      out = "not " + path_str(f.left(), atoms, 3);
      break;
    case PathFormula::Kind::next:
      p = 3;
      out = "X " + path_str(f.left(), atoms, 3);
      break;
    case PathFormula::Kind::until:
      p = 2;
      out = path_str(f.left(), atoms, 3) + " U " + path_str(f.right(), atoms, 2);
      break;
    case PathFormula::Kind::lor:
      p = 1;
      out = path_str(f.left(), atoms, 1) + " or " + path_str(f.right(), atoms, 2);
      break;
  }
  if (p < ctx) return "(" + out + ")";
  return out;
}

}  // namespace

std::string to_string(const LtlFormula& f, const AtomPrinter& atoms) {
  return ltl_str(f, atoms, 0);
}
std::string to_string(const CtlFormula& f, const AtomPrinter& atoms) {
  return ctl_str(f, atoms, 0);
}
std::string to_string(const Program& p, const AtomPrinter& atoms) {
  return prog_str(p, atoms, 0);
}
std::string to_string(const FodlFormula& f, const AtomPrinter& atoms) {
  return fodl_str(f, atoms, 0);
}
std::string to_string(const StateFormula& f, const AtomPrinter& atoms) {
  return state_str(f, atoms, 0);
}
std::string to_string(const PathFormula& f, const AtomPrinter& atoms) {
  return path_str(f, atoms, 0);
}

}  // namespace relkit::logics
