#include <cexplain/eval.hpp>
#include <cexplain/interest.hpp>
#include <cexplain/parse.hpp>
#include <cexplain/print.hpp>
#include <cexplain/provenance.hpp>
#include <cexplain/render.hpp>
#include <cexplain/tree.hpp>
#include <cexplain/verify.hpp>

#include "support/generators.hpp"
#include "support/models.hpp"
#include "support/oracles.hpp"
#include "support/random_theory.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>

using namespace cexplain;
using namespace cexplain::testing;

namespace {

Formula f(const Theory& t, const std::string& s) {
  auto r = parse_formula(s, t);
  if (!r) throw std::runtime_error("bad formula " + s);
  return *r.value;
}

struct Graph {
  Theory theory = load_model("graph_coloring.vfy");
  Interpretation model;
  Literal literal = lit(theory, "blue(n0)");

  Graph() {
    for (const char* s : {"neighbours(n0, n1)", "neighbours(n1, n0)", "blue(n0)", "blue(n1)"})
      model.set(ground_atom_of(f(theory, s)), true);
  }
};

std::set<std::string> rendered(const ProvenanceSet& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(render_provenance(p));
  return out;
}

Provenance prov(const Theory& t, std::initializer_list<const char*> members) {
  Provenance p;
  for (const char* m : members) p.push_back(f(t, m));
  return p;
}

}  // namespace

TEST(LAlternate, FlipsOnlyTheLiteralsAtom) {
  Theory t = *parse_model("sort N = {a}  pred p(N)  pred q(N)  goal p(a)").theory;
  Interpretation i;
  i.set({"p", {"a"}}, true);
  EXPECT_EQ(l_alternate(i, lit(t, "p(a)")), Interpretation{});
  Interpretation both = i;
  both.set({"q", {"a"}}, true);
  EXPECT_EQ(l_alternate(i, lit(t, "!q(a)")), both);
}

TEST(LAlternate, GraphExampleDropsBlueN0) {
  Graph g;
  Interpretation expected = g.model;
  expected.set({"blue", {"n0"}}, false);
  EXPECT_EQ(l_alternate(g.model, g.literal), expected);
}

TEST(LAlternate, RejectsFalseAndEqualityLiterals) {
  Graph g;
  EXPECT_THROW(l_alternate(g.model, lit(g.theory, "red(n0)")), InputError);
  EXPECT_THROW(l_alternate(g.model, lit(g.theory, "n0 != n1")), InputError);
}

TEST(CrossUnion, Examples) {
  Theory t = *parse_model("pred x  pred y  pred z  goal x").theory;
  const Formula X = f(t, "x"), Y = f(t, "y"), Z = f(t, "z");
  EXPECT_EQ(cross_union({{X}}, {{Y}}), (ProvenanceSet{{X, Y}}));
  EXPECT_EQ(cross_union({{}}, {{X}, {Y, Z}}), (ProvenanceSet{{X}, {Y, Z}}));
  EXPECT_EQ(cross_union({{X}, {Y}}, {{Z}}), (ProvenanceSet{{X, Z}, {Y, Z}}));
  EXPECT_EQ(cross_union({{X}, {Y}}, {}), ProvenanceSet{});
  EXPECT_EQ(cross_union({{X}, {X, Y}}, {{Y}}), (ProvenanceSet{{X, Y}}));
}

TEST(CrossUnion, AssociativeWithEmptySetIdentity) {
  Rng rng(9);
  Theory t = *parse_model("pred a  pred b  pred c  pred d  goal a").theory;
  std::vector<Formula> pool{f(t, "a"), f(t, "b"), f(t, "!c"), f(t, "d")};
  auto random_set = [&] {
    ProvenanceSet s;
    const int n = rng.uniform(0, 3);
    for (int k = 0; k < n; ++k) {
      Provenance p;
      const int m = rng.uniform(0, 3);
      for (int j = 0; j < m; ++j) add_member(p, rng.pick(pool));
      add_provenance(s, std::move(p));
    }
    return s;
  };
  auto as_sets = [](const ProvenanceSet& s) {
    std::set<std::set<Formula>> out;
    for (const auto& p : s) out.insert(std::set<Formula>(p.begin(), p.end()));
    return out;
  };
  for (int k = 0; k < 500; ++k) {
    ProvenanceSet a = random_set(), b = random_set(), c = random_set();
    EXPECT_EQ(as_sets(cross_union(cross_union(a, b), c)), as_sets(cross_union(a, cross_union(b, c))));
    EXPECT_EQ(as_sets(cross_union({{}}, a)), as_sets(a));
    EXPECT_EQ(as_sets(cross_union(a, {{}})), as_sets(a));
  }
}

TEST(Provenances, GraphExampleHasExactlyTwoReasons) {
  Graph g;
  ProvenanceSet ps = provenances(g.theory, g.theory.axioms, g.model, g.literal);
  EXPECT_EQ(rendered(ps),
            (std::set<std::string>{"{ !red(n0) }",
                                   "{ !exists x: Node . exists y: Node . neighbours(n0, x) & neighbours(n0, y) & x != y }"}));
  ASSERT_EQ(ps.size(), 2U);
  for (const auto& p : ps) EXPECT_TRUE(check_provenance(g.theory, g.theory.axioms, g.model, g.literal, p));
}

TEST(Provenances, LiteralAsOnlyAxiomGivesEmptyProvenance) {
  Theory t = *parse_model("sort N = {a, b}  pred p(N)  goal p(a)").theory;
  Interpretation i;
  i.set({"p", {"a"}}, true);
  EXPECT_EQ(provenances(t, {f(t, "p(a)")}, i, lit(t, "p(a)")), ProvenanceSet{Provenance{}});
  EXPECT_EQ(provenances(t, {f(t, "!p(b)")}, i, lit(t, "!p(b)")), ProvenanceSet{Provenance{}});
}

TEST(Provenances, IndependentLiteralGivesEmptySet) {
  Theory t = *parse_model("sort N = {a, b}  pred p(N)  pred q(N)  goal p(a)").theory;
  Interpretation i;
  i.set({"p", {"a"}}, true);
  EXPECT_TRUE(provenances(t, {f(t, "p(a)")}, i, lit(t, "!q(b)")).empty());
}

TEST(Provenances, RejectsViolatedPreconditions) {
  Graph g;
  EXPECT_THROW(provenances(g.theory, g.theory.axioms, g.model, lit(g.theory, "red(n0)")), InputError);
  Interpretation bad = g.model;
  bad.set({"red", {"n0"}}, true);
  EXPECT_THROW(provenances(g.theory, g.theory.axioms, bad, lit(g.theory, "red(n0)")), InputError);
}

TEST(Provenances, RailwayUnoccupiedRoute) {
  Theory t = load_model("railway_faulty.vfy");
  Interpretation m = *find_counterexample(t).counterexample;
  Literal l = lit(t, "!unoccupied(rt2131)");
  ProvenanceSet ps = provenances(t, theory_formulas(t), m, l);
  const auto r = rendered(ps);
  EXPECT_TRUE(r.count("{ !safe(rt2131), routelocked(rt2131), pointsok(rt2131), !inconflict(rt2131) }"));
  EXPECT_TRUE(r.count("{ !forall u: Unit . partof(u, rt2131) -> !occupied(u) }"));
  for (const auto& p : ps)
    for (const auto& member : p) {
      EXPECT_TRUE(eval(member, t, m)) << print_formula(member);
      EXPECT_TRUE(eval(member, t, l_alternate(m, l))) << print_formula(member);
    }
}

TEST(Provenances, PruneSeenDropsTreeLiterals) {
  Theory t = load_model("railway_faulty.vfy");
  Interpretation m = *find_counterexample(t).counterexample;
  Literal l = lit(t, "!unoccupied(rt2131)");
  std::set<Literal> seen;
  for (const auto& n : build_tree(t, m, assign_interest(t)).nodes) seen.insert(n.literal);
  seen.erase(l);
  ProvenanceSet kept = prune_seen(provenances(t, theory_formulas(t), m, l), seen);
  EXPECT_EQ(rendered(kept), (std::set<std::string>{"{ !forall u: Unit . partof(u, rt2131) -> !occupied(u) }"}));
}

TEST(CheckProvenance, Examples) {
  Graph g;
  EXPECT_TRUE(check_provenance(g.theory, g.theory.axioms, g.model, g.literal, prov(g.theory, {"!red(n0)"})));
  EXPECT_FALSE(check_provenance(g.theory, g.theory.axioms, g.model, g.literal, {}));
  EXPECT_FALSE(check_provenance(g.theory, g.theory.axioms, g.model, g.literal, prov(g.theory, {"blue(n1)"})));
  EXPECT_FALSE(check_provenance(g.theory, g.theory.axioms, g.model, g.literal, prov(g.theory, {"blue(n0)"})));
  EXPECT_FALSE(check_provenance(g.theory, {}, g.model, g.literal, prov(g.theory, {"!red(n0)"})));
}

TEST(CheckProvenance, AgreesWithReferenceEntailment) {
  Rng rng(4);
  for (int k = 0; k < 300; ++k) {
    auto c = random_provenance_case(rng);
    if (!c) continue;
    Provenance p;
    const int n = rng.uniform(0, 2);
    for (int j = 0; j < n; ++j) p.push_back(random_closed_formula(rng, c->theory, {2, 0.3, 0.1, 0.1, {}}));
    const Interpretation ml = l_alternate(c->model, c->literal);
    bool members = true;
    for (const auto& m : p) members = members && reference_eval(m, c->theory, c->model) && reference_eval(m, c->theory, ml);
    std::vector<Formula> premises = c->formulas;
    premises.insert(premises.end(), p.begin(), p.end());
    const bool expected = members && reference_entails(c->theory, premises, c->literal);
    ASSERT_EQ(check_provenance(c->theory, c->formulas, c->model, c->literal, p), expected);
  }
}

TEST(CheckProvenance, AtomLimit) {
  Theory t = *parse_model("sort N = {a,b,c,d,e}  pred e(N,N)  goal e(a,a)").theory;
  Interpretation i;
  i.set({"e", {"a", "a"}}, true);
  EXPECT_THROW(check_provenance(t, {f(t, "e(a,a)")}, i, lit(t, "e(a,a)"), {}), ResourceError);
  CheckOptions wide;
  wide.atom_limit = 25;
  EXPECT_TRUE(check_provenance(t, {f(t, "e(a,a)")}, i, lit(t, "e(a,a)"), {}, wide));
}

TEST(Provenances, SoundOnRandomTheories) {
  Rng rng(2718);
  int nonempty = 0, checked = 0;
  for (int k = 0; k < 3000 && nonempty < 150; ++k) {
    auto c = random_provenance_case(rng);
    if (!c) continue;
    ProvenanceSet ps = provenances(c->theory, c->formulas, c->model, c->literal);
    if (ps.empty()) continue;
    ++nonempty;
    for (const auto& p : ps) {
      ++checked;
      ASSERT_TRUE(check_provenance(c->theory, c->formulas, c->model, c->literal, p))
          << print_theory(c->theory) << print_literal(c->literal) << " " << render_provenance(p);
      std::vector<Formula> premises = c->formulas;
      premises.insert(premises.end(), p.begin(), p.end());
      ASSERT_TRUE(reference_entails(c->theory, premises, c->literal));
    }
  }
  EXPECT_GE(nonempty, 100);
  EXPECT_GE(checked, nonempty);
}

TEST(Provenances, RecursionRespectsDualInvariant) {
  Rng rng(161);
  int visits = 0;
  for (int k = 0; k < 1500; ++k) {
    auto c = random_provenance_case(rng);
    if (!c) continue;
    const Interpretation ml = l_alternate(c->model, c->literal);
    ProvenanceOptions opts;
    opts.on_visit = [&](const Formula& arg, bool dual) {
      ++visits;
      ASSERT_EQ(reference_eval(arg, c->theory, c->model), !dual) << print_formula(arg);
      ASSERT_EQ(reference_eval(arg, c->theory, ml), dual) << print_formula(arg);
    };
    provenances(c->theory, c->formulas, c->model, c->literal, opts);
  }
  EXPECT_GT(visits, 1000);
}

TEST(Provenances, DuplicatesAreMergedAfterDoubleNegationStripping) {
  Theory t = *parse_model("pred a  pred b  goal a").theory;
  Interpretation i;
  i.set({"a", {}}, true);
  i.set({"b", {}}, true);
  ProvenanceSet ps = provenances(t, {f(t, "b -> a"), f(t, "!!b -> a")}, i, lit(t, "a"));
  EXPECT_EQ(rendered(ps), (std::set<std::string>{"{ b }"}));
}
