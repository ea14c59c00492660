#include "relkit/relalg.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "paper_example.hpp"

using namespace relkit;
using namespace relkit::relalg;
using entail::EntailBudget;

namespace {

FiniteFrame two_states() {
  FiniteFrame f = make_frame({"s1", "s2"});
  Relation r(2);
  r.set(0, 1);
  f.rels.emplace("R", r);
  return f;
}

}  // namespace

TEST_CASE("closure computes the least reflexive-transitive superset") {
  SUBCASE("closure of the empty relation is the identity") {
    CHECK(closure(Relation::empty(3)) == Relation::identity(3));
  }
  SUBCASE("closure is idempotent on the identity") {
    CHECK(closure(Relation::identity(4)) == Relation::identity(4));
  }
  SUBCASE("a two-cycle closes to the full relation") {
    Relation r(2);
    r.set(0, 1);
    r.set(1, 0);
    CHECK(closure(r) == Relation::full(2));
  }
  SUBCASE("matches the naive union of powers on random relations") {
    oracles::Rng rng(5);
    for (int i = 0; i < 50; ++i) {
      int n = 1 + oracles::pick(rng, 8);
      Relation r = oracles::random_relation(rng, n);
      CHECK(oracles::to_pairs(closure(r)) ==
            oracles::naive_closure(oracles::to_pairs(r), n));
    }
  }
  SUBCASE("fixpoint properties") {
    oracles::Rng rng(6);
    for (int i = 0; i < 20; ++i) {
      int n = 1 + oracles::pick(rng, 6);
      Relation r = oracles::random_relation(rng, n);
      Relation c = closure(r);
      CHECK(closure(c) == c);
      CHECK(r.subset_of(c));
      CHECK(Relation::identity(n).subset_of(c));
      CHECK(c.compose(c).subset_of(c));
    }
  }
}

TEST_CASE("eval_relterm implements the homomorphic clause table") {
  FiniteFrame f = two_states();
  CHECK(eval_relterm(f, RelTerm::empty()) == Relation::empty(2));
  CHECK(eval_relterm(f, RelTerm::univ()) == Relation::full(2));

  // R . R^ maps s1 back to itself only
  Relation got = eval_relterm(
      f, RelTerm::compose(RelTerm::symbol("R"),
                          RelTerm::converse(RelTerm::symbol("R"))));
  Relation want(2);
  want.set(0, 0);
  CHECK(got == want);

  FiniteFrame g = make_frame({"a", "b", "c"});
  Relation chain(3);
  chain.set(0, 1);
  chain.set(1, 2);
  g.rels.emplace("R", chain);
  Relation star = eval_relterm(g, RelTerm::star(RelTerm::symbol("R")));
  Relation expect = Relation::identity(3);
  expect.set(0, 1);
  expect.set(1, 2);
  expect.set(0, 2);
  CHECK(star == expect);

  CHECK_THROWS_AS(eval_relterm(f, RelTerm::symbol("missing")), Error);
}

TEST_CASE("eval_relterm agrees with pair-set semantics on random terms") {
  oracles::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    int n = 1 + oracles::pick(rng, 5);
    std::vector<std::string> ids;
    for (int k = 0; k < n; ++k) ids.push_back("q" + std::to_string(k));
    FiniteFrame f = make_frame(ids);
    Relation r = oracles::random_relation(rng, n);
    Relation s = oracles::random_relation(rng, n);
    Relation t = oracles::random_relation(rng, n);
    f.rels.emplace("R", r);
    f.rels.emplace("S", s);
    f.rels.emplace("T", t);

    // distributivity of composition over union, checked extensionally
    RelTerm lhs = RelTerm::compose(RelTerm::symbol("R"),
                                   RelTerm::join(RelTerm::symbol("S"),
                                                 RelTerm::symbol("T")));
    RelTerm rhs = RelTerm::join(
        RelTerm::compose(RelTerm::symbol("R"), RelTerm::symbol("S")),
        RelTerm::compose(RelTerm::symbol("R"), RelTerm::symbol("T")));
    CHECK(eval_relterm(f, lhs) == eval_relterm(f, rhs));

    // composition against the naive pair-by-pair oracle
    CHECK(oracles::to_pairs(eval_relterm(
              f, RelTerm::compose(RelTerm::symbol("R"), RelTerm::symbol("S")))) ==
          oracles::naive_compose(oracles::to_pairs(r), oracles::to_pairs(s)));
  }
}

TEST_CASE("eval_formula evaluates classically over the base set") {
  FiniteFrame f = two_states();
  RelFormula refl = RelFormula::forall(
      {"x"}, RelFormula::atom("x", RelTerm::ident(), "x"));
  CHECK(eval_formula(f, {}, refl));

  FiniteFrame g = make_frame({"a", "b"});
  g.rels.emplace("E", Relation::empty(2));
  RelFormula some = RelFormula::exists(
      {"x", "y"}, RelFormula::atom("x", RelTerm::symbol("E"), "y"));
  CHECK_FALSE(eval_formula(g, {}, some));

  RelFormula unbound = RelFormula::atom("x", RelTerm::univ(), "y");
  CHECK_THROWS_AS(eval_formula(f, {}, unbound), Error);
}

TEST_CASE("frame-condition macros expand to the expected formulae") {
  CHECK(to_string(total_condition("T")) ==
        "forall x, y : x T . 1 & 1' y <=> x 1' y");
  CHECK(to_string(functional_condition("T")) ==
        "forall x, y : x T^ . T y => x 1' y");
  CHECK(to_string(initial_condition("St0")) ==
        "forall x, y : x St0 y => x 1' y");
}

TEST_CASE("verify_frame_conditions reports witnesses") {
  SUBCASE("total and functional pass on a two-cycle") {
    FiniteFrame f = make_frame({"s1", "s2"});
    Relation t(2);
    t.set(0, 1);
    t.set(1, 0);
    f.rels.emplace("T", t);
    auto checks = verify_frame_conditions(
        f, {{"total", total_condition("T")},
            {"functional", functional_condition("T")}});
    CHECK(checks[0].passed);
    CHECK(checks[1].passed);
  }

  SUBCASE("a missing successor fails totality with the witness state") {
    FiniteFrame f = make_frame({"s1", "s2"});
    Relation t(2);
    t.set(0, 1);
    f.rels.emplace("T", t);
    auto checks = verify_frame_conditions(f, {{"total", total_condition("T")}});
    REQUIRE_FALSE(checks[0].passed);
    REQUIRE(checks[0].witness.count("x"));
    CHECK(checks[0].witness.at("x") == 1);  // s2 has no successor
  }

  SUBCASE("initial-state containment in the identity") {
    FiniteFrame f = make_frame({"s1", "s2"});
    Relation st0(2);
    st0.set(0, 0);
    f.rels.emplace("St0", st0);
    auto checks =
        verify_frame_conditions(f, {{"initial", initial_condition("St0")}});
    CHECK(checks[0].passed);
  }
}

TEST_CASE("the relational axioms hold on every frame") {
  SUBCASE("a hand-built frame") {
    FiniteFrame f = two_states();
    for (const auto& check : axioms_selftest(f)) CHECK(check.passed);
  }
  SUBCASE("the empty relation reduces Ax.9 to the identity") {
    FiniteFrame f = make_frame({"s"});
    f.rels.emplace("R", Relation::empty(1));
    for (const auto& check : axioms_selftest(f)) CHECK(check.passed);
  }
  SUBCASE("random frames") {
    oracles::Rng rng(8);
    for (int i = 0; i < 100; ++i) {
      FiniteFrame f = oracles::random_frame(rng, 5, 3);
      for (const auto& check : axioms_selftest(f)) {
        CHECK(check.passed);
        if (!check.passed) MESSAGE(check.label);
      }
    }
  }
}

namespace {

// frames whose states carry propositional state theories
FiniteFrame prop_frame(const std::vector<std::string>& ids,
                       const std::vector<std::vector<const char*>>& labels,
                       const eqcore::EqSignature& props) {
  eqcore::EqSignature rigid;
  FiniteFrame f = make_frame(ids);
  for (size_t i = 0; i < ids.size(); ++i) {
    std::vector<theoria::Definition> defs;
    for (const char* p : labels[i])
      defs.push_back(theoria::Definition::predicate(eqcore::Sym(p), {}));
    f.state_theories.emplace(ids[i],
                             theoria::mk_state(props, rigid, std::move(defs)));
  }
  return f;
}

eqcore::EqSignature one_prop() {
  eqcore::EqSignature props;
  props.add_predicate(eqcore::Sym("p"), 0);
  return props;
}

}  // namespace

TEST_CASE("check_bounded_morphism") {
  EntailBudget b{2, 100};
  eqcore::EqSignature props = one_prop();

  SUBCASE("the identity map is always accepted") {
    FiniteFrame f = prop_frame({"s1", "s2"}, {{"p"}, {}}, props);
    Relation t(2);
    t.set(0, 1);
    t.set(1, 0);
    f.rels.emplace("T", t);
    FrameMap fm;
    fm.rel_map["T"] = "T";
    fm.state_map["s1"] = "s1";
    fm.state_map["s2"] = "s2";
    CHECK(check_bounded_morphism(f, f, fm, b).verdict.is_true());
  }

  SUBCASE("collapsing equal states with the same outgoing pattern") {
    // a 3-cycle of p-states folded onto a self-loop
    FiniteFrame src = prop_frame({"a", "b", "c"}, {{"p"}, {"p"}, {"p"}}, props);
    Relation t3(3);
    t3.set(0, 1);
    t3.set(1, 2);
    t3.set(2, 0);
    src.rels.emplace("T", t3);
    FiniteFrame dst = prop_frame({"u"}, {{"p"}}, props);
    Relation t1(1);
    t1.set(0, 0);
    dst.rels.emplace("T", t1);
    FrameMap fm;
    fm.rel_map["T"] = "T";
    fm.state_map["a"] = "u";
    fm.state_map["b"] = "u";
    fm.state_map["c"] = "u";
    CHECK(check_bounded_morphism(src, dst, fm, b).verdict.is_true());
  }

  SUBCASE("a target edge without a matching source edge breaks the backward "
          "condition") {
    FiniteFrame src = prop_frame({"a", "b"}, {{"p"}, {"p"}}, props);
    Relation ts(2);
    ts.set(0, 0);
    ts.set(1, 1);
    src.rels.emplace("T", ts);
    FiniteFrame dst = prop_frame({"u", "v"}, {{"p"}, {"p"}}, props);
    Relation td(2);
    td.set(0, 0);
    td.set(1, 1);
    td.set(0, 1);  // extra edge u -> v with no preimage
    dst.rels.emplace("T", td);
    FrameMap fm;
    fm.rel_map["T"] = "T";
    fm.state_map["a"] = "u";
    fm.state_map["b"] = "v";
    MorphismReport r = check_bounded_morphism(src, dst, fm, b);
    CHECK(r.verdict.is_false());
    CHECK(r.witness.find("backward") != std::string::npos);
  }

  SUBCASE("differing state theories are rejected") {
    FiniteFrame src = prop_frame({"a"}, {{"p"}}, props);
    Relation t1(1);
    t1.set(0, 0);
    src.rels.emplace("T", t1);
    FiniteFrame dst = prop_frame({"u"}, {{}}, props);
    dst.rels.emplace("T", t1);
    FrameMap fm;
    fm.rel_map["T"] = "T";
    fm.state_map["a"] = "u";
    MorphismReport r = check_bounded_morphism(src, dst, fm, b);
    CHECK(r.verdict.is_false());
  }

  SUBCASE("unmapped relations are an error") {
    FiniteFrame f = prop_frame({"a"}, {{}}, props);
    f.rels.emplace("T", Relation::full(1));
    FrameMap fm;
    fm.state_map["a"] = "a";
    CHECK_THROWS_AS(check_bounded_morphism(f, f, fm, b), Error);
  }
}

namespace {

// basic modal formulas over frame relations, used to cross-check the
// bounded-morphism checker against modal invariance
struct ModalF {
  enum class Kind { atom, neg, lor, dia } kind;
  const char* prop = nullptr;
  std::string rel;
  std::vector<ModalF> kids;
};

bool modal_eval(const FiniteFrame& f, const ModalF& m, int s) {
  switch (m.kind) {
    case ModalF::Kind::atom: {
      const auto& st = f.theory_of(f.id_of(s));
      for (const auto& d : st.defs)
        if (d.lhs_symbol().name == m.prop) return true;
      return false;
    }
    case ModalF::Kind::neg: return !modal_eval(f, m.kids[0], s);
    case ModalF::Kind::lor:
      return modal_eval(f, m.kids[0], s) || modal_eval(f, m.kids[1], s);
    case ModalF::Kind::dia: {
      const Relation& r = f.relation(m.rel);
      for (int j = 0; j < f.size(); ++j)
        if (r.get(s, j) && modal_eval(f, m.kids[0], j)) return true;
      return false;
    }
  }
  return false;
}

ModalF random_modal(oracles::Rng& rng, int depth) {
  if (depth <= 0 || oracles::pick(rng, 3) == 0)
    return ModalF{ModalF::Kind::atom, "p", "", {}};
  switch (oracles::pick(rng, 3)) {
    case 0:
      return ModalF{ModalF::Kind::neg, nullptr, "", {random_modal(rng, depth - 1)}};
    case 1:
      return ModalF{ModalF::Kind::lor, nullptr, "",
                    {random_modal(rng, depth - 1), random_modal(rng, depth - 1)}};
    default:
      return ModalF{ModalF::Kind::dia, nullptr, "T",
                    {random_modal(rng, depth - 1)}};
  }
}

}  // namespace

TEST_CASE("accepted bounded morphisms preserve modal satisfaction") {
  oracles::Rng rng(9);
  EntailBudget b{2, 100};
  eqcore::EqSignature props = one_prop();
  eqcore::EqSignature rigid;

  for (int round = 0; round < 30; ++round) {
    // target: a random frame with propositional labels
    int n = 1 + oracles::pick(rng, 3);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("u" + std::to_string(i));
    FiniteFrame dst = make_frame(ids);
    for (int i = 0; i < n; ++i) {
      std::vector<theoria::Definition> defs;
      if (oracles::pick(rng, 2))
        defs.push_back(theoria::Definition::predicate(eqcore::Sym("p"), {}));
      dst.state_theories.emplace(ids[static_cast<size_t>(i)],
                                 theoria::mk_state(props, rigid, std::move(defs)));
    }
    dst.rels.emplace("T", oracles::random_relation(rng, n, 2));

    // source: two disjoint copies, mapped back by projection
    std::vector<std::string> src_ids;
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < n; ++i)
        src_ids.push_back("c" + std::to_string(c) + "_" + std::to_string(i));
    FiniteFrame src = make_frame(src_ids);
    Relation ts(2 * n);
    const Relation& td = dst.relation("T");
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (td.get(i, j)) ts.set(c * n + i, c * n + j);
    src.rels.emplace("T", ts);
    FrameMap fm;
    fm.rel_map["T"] = "T";
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < n; ++i) {
        src.state_theories.emplace(
            src_ids[static_cast<size_t>(c * n + i)],
            dst.theory_of(ids[static_cast<size_t>(i)]));
        fm.state_map[src_ids[static_cast<size_t>(c * n + i)]] =
            ids[static_cast<size_t>(i)];
      }

    REQUIRE(check_bounded_morphism(src, dst, fm, b).verdict.is_true());
    for (int k = 0; k < 5; ++k) {
      ModalF phi = random_modal(rng, 3);
      int s = oracles::pick(rng, 2 * n);
      int hs = s % n;
      CHECK(modal_eval(src, phi, s) == modal_eval(dst, phi, hs));
    }
  }
}
