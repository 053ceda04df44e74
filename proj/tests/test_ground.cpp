#include <cexplain/error.hpp>
#include <cexplain/eval.hpp>
#include <cexplain/ground.hpp>
#include <cexplain/parse.hpp>
#include <cexplain/print.hpp>

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace cexplain;
using namespace cexplain::testing;

namespace {

Theory filter_theory() {
  ModelParse m = parse_model(
      "sort N = {a,b,c}\nsort S = {s}\npred p(N)\npred q(N)\npred r(S)\n"
      "goal forall x: N . p(x) -> q(x)\n");
  return *m.theory;
}

Formula f(const Theory& t, const std::string& s) {
  auto r = parse_formula(s, t);
  if (!r) throw std::runtime_error("bad formula " + s);
  return *r.value;
}

Interpretation filter_model(const Theory& t) {
  Interpretation i;
  for (const char* s : {"p(a)", "q(a)", "q(c)"}) i.set(ground_atom_of(f(t, s)), true);
  return i;
}

bool is_ground_shape(const Formula& g) {
  switch (g.kind()) {
    case FormulaKind::atom:
    case FormulaKind::equal:
      return is_ground(g);
    case FormulaKind::negation:
    case FormulaKind::conjunction:
      for (const auto& op : g.operands())
        if (!is_ground_shape(op)) return false;
      return true;
    default:
      return false;
  }
}

}  // namespace

TEST(RewriteStep, DisjunctionBecomesNegatedConjunctionOfNegations) {
  Theory t = filter_theory();
  EXPECT_EQ(rewrite_step(f(t, "p(a) | q(a)"), t), f(t, "!(!p(a) & !q(a))"));
}

TEST(RewriteStep, UniversalOverThreeConstants) {
  Theory t = filter_theory();
  EXPECT_EQ(rewrite_step(f(t, "forall x: N . p(x)"), t), f(t, "p(a) & p(b) & p(c)"));
}

TEST(RewriteStep, UniversalOverSingletonIsTheInstance) {
  Theory t = filter_theory();
  EXPECT_EQ(rewrite_step(f(t, "forall y: S . r(y)"), t), f(t, "r(s)"));
}

TEST(RewriteStep, ImplicationEquivalenceExistential) {
  Theory t = filter_theory();
  EXPECT_EQ(rewrite_step(f(t, "p(a) -> q(a)"), t), f(t, "!(p(a) & !q(a))"));
  EXPECT_EQ(rewrite_step(f(t, "p(a) <-> q(a)"), t), f(t, "(p(a) -> q(a)) & (q(a) -> p(a))"));
  EXPECT_EQ(rewrite_step(f(t, "exists x: N . p(x)"), t), f(t, "!(forall x: N . !p(x))"));
}

TEST(RewriteStep, OneStepOnly) {
  Theory t = filter_theory();
  EXPECT_EQ(rewrite_step(f(t, "forall x: N . p(x) -> q(x)"), t),
            f(t, "(p(a) -> q(a)) & (p(b) -> q(b)) & (p(c) -> q(c))"));
}

TEST(RewriteStep, RejectsAtomsNegationsAndConjunctions) {
  Theory t = filter_theory();
  for (const char* s : {"p(a)", "a = b", "!p(a)", "p(a) & q(a)"}) EXPECT_THROW(rewrite_step(f(t, s), t), InputError) << s;
}

TEST(RewriteStep, PreservesTruthUnderEveryInterpretation) {
  Rng rng(11);
  for (int k = 0; k < 300; ++k) {
    Theory t = random_signature(rng, {2, 3, 3, 2, 10});
    Formula g = random_closed_formula(rng, t);
    if (g.is_literal_atom() || g.is(FormulaKind::negation) || g.is(FormulaKind::conjunction)) continue;
    Formula r = rewrite_step(g, t);
    for (const auto& i : all_interpretations(t))
      ASSERT_EQ(reference_eval(g, t, i), reference_eval(r, t, i)) << print_formula(g);
  }
}

TEST(Ground, FilterGoal) {
  Theory t = filter_theory();
  EXPECT_EQ(ground(*t.goal, t), f(t, "!(p(a) & !q(a)) & !(p(b) & !q(b)) & !(p(c) & !q(c))"));
}

TEST(Ground, ClosedAtomIsFixpoint) {
  Theory t = filter_theory();
  Formula a = f(t, "p(a)");
  EXPECT_EQ(ground(a, t).identity(), a.identity());
}

TEST(Ground, KeepsDoubleNegations) {
  Theory t = filter_theory();
  EXPECT_EQ(ground(f(t, "!!p(a)"), t), f(t, "!!p(a)"));
  EXPECT_EQ(ground(f(t, "!(p(a) -> q(a))"), t), f(t, "!!(p(a) & !q(a))"));
}

TEST(Ground, IsFixpointOnGroundFormulas) {
  Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    Theory t = random_signature(rng);
    Formula g = ground(random_closed_formula(rng, t), t);
    ASSERT_TRUE(is_ground_shape(g)) << print_formula(g);
    EXPECT_EQ(ground(g, t), g);
  }
}

TEST(Ground, PreservesSemantics) {
  Rng rng(8);
  for (int k = 0; k < 500; ++k) {
    Theory t = random_signature(rng, {2, 3, 3, 2, 10});
    Formula g = random_closed_formula(rng, t);
    Formula gg = ground(g, t);
    for (const auto& i : all_interpretations(t)) {
      const bool expected = reference_eval(g, t, i);
      ASSERT_EQ(eval(g, t, i), expected) << print_formula(g);
      ASSERT_EQ(eval(gg, t, i), expected) << print_formula(g);
    }
  }
}

TEST(Ground, SizeGuardNamesTheQuantifier) {
  ModelParse m = parse_model(
      "sort N = {a,b,c,d,e,f,g,h}\npred e(N,N)\n"
      "goal forall x: N . forall y: N . forall z: N . e(x,y) & e(y,z) -> e(x,z)\n");
  ASSERT_TRUE(m) << m.diagnostics;
  GroundOptions opts;
  opts.max_nodes = 200;
  try {
    ground(*m.theory->goal, *m.theory, opts);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("max-ground-nodes=200"), std::string::npos) << what;
    EXPECT_NE(what.find("forall "), std::string::npos) << what;
  }
  opts.max_nodes = 1'000'000;
  EXPECT_NO_THROW(ground(*m.theory->goal, *m.theory, opts));
}

TEST(Ground, RejectsFreeVariables) {
  Theory t = filter_theory();
  EXPECT_THROW(ground(Formula::atom("p", {Term::variable("x", "N")}), t), InputError);
}

TEST(Eval, FilterQuery) {
  Theory t = filter_theory();
  Interpretation i = filter_model(t);
  EXPECT_TRUE(eval(*t.goal, t, i));
  EXPECT_FALSE(eval(f(t, "p(b)"), t, i));
  EXPECT_FALSE(eval(f(t, "p(c)"), t, i));
  EXPECT_FALSE(eval(f(t, "q(b)"), t, i));
  EXPECT_TRUE(eval(f(t, "a = a"), t, i));
  EXPECT_TRUE(eval(f(t, "a = a"), t, Interpretation{}));
  EXPECT_FALSE(eval(f(t, "a = b"), t, i));
  EXPECT_TRUE(eval(f(t, "exists x: N . q(x) & !p(x)"), t, i));
  EXPECT_FALSE(eval(f(t, "forall x: N . q(x)"), t, i));
}

TEST(Eval, ShadowedBinderUsesInnermost) {
  Theory t = filter_theory();
  Interpretation i = filter_model(t);
  EXPECT_TRUE(eval(f(t, "forall x: N . exists x: N . p(x)"), t, i));
  EXPECT_FALSE(eval(f(t, "exists x: N . forall x: N . p(x)"), t, i));
}
