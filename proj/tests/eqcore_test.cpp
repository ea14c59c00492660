#include "relkit/eqcore.hpp"

#include <random>

#include "doctest.h"

using namespace relkit;
using namespace relkit::eqcore;

namespace {

EqSignature num_sig() {
  EqSignature sig;
  sig.add_constant(Sym("0"));
  sig.add_constant(Sym("1"));
  sig.add_function(Sym("+"), 2);
  sig.add_function(Sym("*"), 2);
  sig.add_predicate(Sym("<"), 2);
  return sig;
}

// independent recursive renamer used as the oracle for translate_sentence
GroundTerm rename_term(const std::map<std::string, std::string>& m,
                       const GroundTerm& t) {
  std::vector<GroundTerm> args;
  for (const auto& a : t.args()) args.push_back(rename_term(m, a));
  auto it = m.find(t.symbol().name);
  Sym s = it == m.end() ? t.symbol() : Sym(t.symbol().tag, it->second);
  if (args.empty()) return GroundTerm(s);
  return GroundTerm(s, std::move(args));
}

}  // namespace

TEST_CASE("mk_term enforces declaredness and arity") {
  EqSignature sig;
  sig.add_constant(Sym("c"));
  sig.add_function(Sym("f"), 1);

  GroundTerm c = mk_term(sig, Sym("c"), {});
  CHECK(c.is_leaf());
  CHECK(c.depth() == 1);

  GroundTerm fc = mk_term(sig, Sym("f"), {c});
  CHECK(fc.args().size() == 1);
  CHECK(fc.depth() == 2);
  CHECK(to_string(fc) == "f(c)");

  CHECK_THROWS_AS(mk_term(sig, Sym("f"), {c, c}), Error);
  CHECK_THROWS_AS(mk_term(sig, Sym("d"), {}), Error);
  try {
    mk_term(sig, Sym("f"), {c, c});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::arity_mismatch);
  }
}

TEST_CASE("translate_sentence renames homomorphically") {
  EqSignature sig;
  sig.add_constant(Sym("a"));
  sig.add_function(Sym("f"), 1);
  sig.add_predicate(Sym("P"), 1);

  EqSignature tgt;
  tgt.add_constant(Sym("b"));
  tgt.add_function(Sym("g"), 1);
  tgt.add_predicate(Sym("Q"), 1);

  SigMorphism id = SigMorphism::identity(sig);
  EqSentence s = EqSentence::equation(GroundTerm(Sym("a")), GroundTerm(Sym("a")));
  CHECK(translate_sentence(id, s) == s);

  SigMorphism m(sig, tgt, {{Sym("a"), Sym("b")}}, {{Sym("f"), Sym("g")}},
                {{Sym("P"), Sym("Q")}});
  EqSentence renamed = translate_sentence(m, s);
  CHECK(renamed ==
        EqSentence::equation(GroundTerm(Sym("b")), GroundTerm(Sym("b"))));

  EqSentence papp = EqSentence::pred_app(
      Sym("P"), {GroundTerm(Sym("f"), {GroundTerm(Sym("a"))})});
  EqSentence got = translate_sentence(m, papp);
  // oracle: plain recursive renaming over the same map
  std::map<std::string, std::string> names{{"a", "b"}, {"f", "g"}, {"P", "Q"}};
  EqSentence want = EqSentence::pred_app(
      Sym("Q"), {rename_term(names, papp.args()[0])});
  CHECK(got == want);
  check_sentence(tgt, got);
}

TEST_CASE("compose_morphisms obeys identity and composition laws") {
  EqSignature sig;
  sig.add_constant(Sym("a"));
  EqSignature sig2;
  sig2.add_constant(Sym("b"));
  EqSignature sig3;
  sig3.add_constant(Sym("c"));

  SigMorphism m1(sig, sig2, {{Sym("a"), Sym("b")}}, {}, {});
  SigMorphism m2(sig2, sig3, {{Sym("b"), Sym("c")}}, {}, {});

  CHECK(compose_morphisms(SigMorphism::identity(sig), m1) == m1);
  CHECK(compose_morphisms(m1, SigMorphism::identity(sig2)) == m1);
  SigMorphism m12 = compose_morphisms(m1, m2);
  CHECK(m12.map_constant(Sym("a")) == Sym("c"));
  CHECK_THROWS_AS(compose_morphisms(m2, m1), Error);
}

TEST_CASE("Sen functoriality on random renamings") {
  std::mt19937_64 rng(7);
  EqSignature sig;
  sig.add_constant(Sym("a"));
  sig.add_constant(Sym("b"));
  sig.add_function(Sym("f"), 1);
  sig.add_function(Sym("g"), 2);
  sig.add_predicate(Sym("P"), 2);

  auto random_perm_morphism = [&](const EqSignature& s) {
    std::map<Sym, Sym> cm, fm, pm;
    std::vector<Sym> cs(s.constants().begin(), s.constants().end());
    std::vector<Sym> shuffled = cs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (size_t i = 0; i < cs.size(); ++i) cm.emplace(cs[i], shuffled[i]);
    for (const auto& [f, a] : s.functions()) fm.emplace(f, f);
    for (const auto& [p, a] : s.predicates()) pm.emplace(p, p);
    return SigMorphism(s, s, std::move(cm), std::move(fm), std::move(pm));
  };

  auto random_term = [&](auto&& self, int depth) -> GroundTerm {
    int r = static_cast<int>(rng() % (depth <= 1 ? 2 : 4));
    switch (r) {
      case 0: return GroundTerm(Sym("a"));
      case 1: return GroundTerm(Sym("b"));
      case 2: return GroundTerm(Sym("f"), {self(self, depth - 1)});
      default:
        return GroundTerm(Sym("g"), {self(self, depth - 1), self(self, depth - 1)});
    }
  };

  for (int i = 0; i < 100; ++i) {
    SigMorphism m1 = random_perm_morphism(sig);
    SigMorphism m2 = random_perm_morphism(sig);
    EqSentence s = EqSentence::pred_app(
        Sym("P"), {random_term(random_term, 3), random_term(random_term, 3)});
    EqSentence lhs = translate_sentence(compose_morphisms(m1, m2), s);
    EqSentence rhs = translate_sentence(m2, translate_sentence(m1, s));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("sum_signature tags both components") {
  EqSignature empty;
  SumSignature s0 = sum_signature(empty, empty);
  CHECK(s0.combined.empty());

  EqSignature vars;
  vars.add_constant(Sym("x"));
  vars.add_constant(Sym("y"));
  SumSignature sum = sum_signature(num_sig(), vars);
  CHECK(sum.combined.is_constant(rigid("0")));
  CHECK(sum.combined.is_constant(flexible("x")));
  CHECK(sum.combined.is_function(rigid("+")));
  CHECK(sum.combined.is_predicate(rigid("<")));
  CHECK_FALSE(sum.combined.has(flexible("0")));

  // name clashes are fine: the tags keep the namespaces apart
  EqSignature clash;
  clash.add_constant(Sym("0"));
  SumSignature sum2 = sum_signature(num_sig(), clash);
  CHECK(sum2.combined.is_constant(rigid("0")));
  CHECK(sum2.combined.is_constant(flexible("0")));

  // both injections are valid morphisms into the sum
  SigMorphism inl = left_injection(sum);
  SigMorphism inr = right_injection(sum);
  CHECK(inl.map_constant(Sym("0")) == rigid("0"));
  CHECK(inr.map_constant(Sym("x")) == flexible("x"));
  EqSentence s = EqSentence::pred_app(
      Sym("<"), {GroundTerm(Sym("0")), GroundTerm(Sym("1"))});
  check_sentence(sum.combined, translate_sentence(inl, s));
}

TEST_CASE("signatures reject duplicate symbols and bad arities") {
  EqSignature sig;
  sig.add_constant(Sym("a"));
  CHECK_THROWS_AS(sig.add_function(Sym("a"), 1), Error);
  CHECK_THROWS_AS(sig.add_function(Sym("f"), 0), Error);
  sig.add_predicate(Sym("p"), 0);  // propositions are zero-arity predicates
  CHECK(sig.arity(Sym("p")) == 0);
}

TEST_CASE("check_term rejects ill-formed trees") {
  EqSignature sig;
  sig.add_constant(Sym("c"));
  sig.add_function(Sym("f"), 2);
  GroundTerm bad(Sym("f"), {GroundTerm(Sym("c"))});
  CHECK_THROWS_AS(check_term(sig, bad), Error);
  GroundTerm unknown(Sym("d"));
  CHECK_THROWS_AS(check_term(sig, unknown), Error);
}
