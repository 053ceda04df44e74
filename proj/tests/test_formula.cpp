#include <cexplain/check.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/parse.hpp>
#include <cexplain/print.hpp>
#include <cexplain/theory.hpp>

#include "support/generators.hpp"
#include "support/models.hpp"
#include "support/random_theory.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace cexplain;
using namespace cexplain::testing;

namespace {

Theory filter_signature() {
  Theory t;
  t.sorts.push_back({"N", {"a", "b", "c"}});
  t.predicates.push_back({"p", {"N"}});
  t.predicates.push_back({"q", {"N"}});
  return t;
}

Term var(const char* n) { return Term::variable(n, "N"); }
Term con(const char* n) { return Term::constant(n, "N"); }
Formula p(Term t) { return Formula::atom("p", {std::move(t)}); }
Formula q(Term t) { return Formula::atom("q", {std::move(t)}); }

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

}  // namespace

TEST(Substitute, ReplacesSingleFreeOccurrence) {
  EXPECT_EQ(substitute(p(var("x")), var("x"), con("a")), p(con("a")));
}

TEST(Substitute, LeavesBoundOccurrenceAlone) {
  Formula f = Formula::forall("x", "N", p(var("x")));
  Formula g = substitute(f, var("x"), con("a"));
  EXPECT_EQ(g, f);
  EXPECT_EQ(g.identity(), f.identity());
}

TEST(Substitute, ImplicationInstance) {
  Formula f = Formula::implies(p(var("x")), q(var("x")));
  EXPECT_EQ(substitute(f, var("x"), con("c")), Formula::implies(p(con("c")), q(con("c"))));
}

TEST(Substitute, RejectsSortMismatch) {
  EXPECT_THROW(substitute(p(var("x")), var("x"), Term::constant("red", "Colour")), InputError);
}

TEST(Substitute, OnlyFreeOccurrencesUnderNestedBinders) {
  // p(x) & exists x . q(x): only the left x is free.
  Formula f = Formula::conj({p(var("x")), Formula::exists("x", "N", q(var("x")))});
  Formula g = substitute(f, var("x"), con("b"));
  EXPECT_EQ(g, Formula::conj({p(con("b")), Formula::exists("x", "N", q(var("x")))}));
}

TEST(Substitute, IdempotentOnRandomFormulas) {
  Rng rng(11);
  for (int k = 0; k < 300; ++k) {
    Theory t = random_signature(rng);
    const Sort& s = rng.pick(t.sorts);
    Term x = Term::variable("x0", s.name);
    Formula f = random_formula(rng, t, FormulaSpec{}, 4, {x});
    Term c = Term::constant(rng.pick(s.constants), s.name);
    Formula once = substitute(f, x, c);
    EXPECT_EQ(substitute(once, x, c), once);
    EXPECT_TRUE(is_closed(once)) << print_formula(once);
  }
}

TEST(InstantiateDefinition, DisjunctiveBody) {
  Theory t = filter_signature();
  Definition d{"q", {var("x")}, Formula::disj({Formula::atom("r", {var("x")}), Formula::atom("s", {var("x")})})};
  EXPECT_EQ(instantiate_definition(d, {con("a")}, true),
            Formula::disj({Formula::atom("r", {con("a")}), Formula::atom("s", {con("a")})}));
}

TEST(InstantiateDefinition, NegativeLiteralGivesNegatedBody) {
  Theory t = load_model("railway_correct.vfy");
  const Definition* safe = t.find_definition("safe");
  ASSERT_NE(safe, nullptr);
  Formula got = instantiate_definition(*safe, {Term::constant("rt2131", "Route")}, false);
  auto want = parse_formula(
      "!(routelocked(rt2131) & pointsok(rt2131) & unoccupied(rt2131) & !inconflict(rt2131))", t);
  ASSERT_TRUE(want);
  EXPECT_EQ(got, *want.value);
}

TEST(InstantiateDefinition, ZeroParametersReturnsBodyVerbatim) {
  Theory t = load_model("railway_correct.vfy");
  const Definition* g = t.find_definition("green21");
  ASSERT_NE(g, nullptr);
  Formula got = instantiate_definition(*g, {}, true);
  EXPECT_EQ(got.identity(), g->body.identity());
}

TEST(InstantiateDefinition, RejectsArityAndSortErrors) {
  Definition d{"q", {var("x")}, p(var("x"))};
  EXPECT_THROW(instantiate_definition(d, {}, true), InputError);
  EXPECT_THROW(instantiate_definition(d, {Term::constant("r1", "Route")}, true), InputError);
}

TEST(InstantiateDefinition, NoParameterLeftFree) {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Theory t = random_theory(rng);
    for (const auto& d : t.definitions) {
      std::vector<Term> args;
      for (const auto& v : d.params) args.push_back(Term::constant(rng.pick(t.constants_of(v.sort)), v.sort));
      Formula f = instantiate_definition(d, args, rng.coin());
      EXPECT_TRUE(is_closed(f)) << print_formula(f);
    }
  }
}

TEST(CheckTheory, RailwayModelIsClean) {
  for (const char* m : {"railway_correct.vfy", "railway_faulty.vfy"}) {
    ModelParse p = parse_model(read_file(model_path(m)), m);
    EXPECT_TRUE(p.diagnostics.empty()) << p.diagnostics;
    ASSERT_TRUE(p);
    EXPECT_TRUE(check_theory(*p.theory).empty());
  }
}

TEST(CheckTheory, SelfReferentialDefinitionIsCyclic) {
  Theory t = filter_signature();
  t.definitions.push_back({"p", {var("x")}, Formula::negate(p(var("x")))});
  t.goal = p(con("a"));
  EXPECT_TRUE(has_code(check_theory(t), "cyclic-definition"));
}

TEST(CheckTheory, MutualRecursionIsCyclic) {
  Theory t = filter_signature();
  t.definitions.push_back({"p", {var("x")}, q(var("x"))});
  t.definitions.push_back({"q", {var("y")}, Formula::negate(p(var("y")))});
  t.goal = p(con("a"));
  EXPECT_TRUE(has_code(check_theory(t), "cyclic-definition"));
}

TEST(CheckTheory, UndeclaredPredicateInAxiom) {
  Theory t = filter_signature();
  t.axioms.push_back(Formula::atom("zap", {con("a")}));
  t.goal = p(con("a"));
  EXPECT_TRUE(has_code(check_theory(t), "undeclared-predicate"));
}

// Random valid theories, each broken in one known way, must be flagged with
// the matching diagnostic; the unbroken ones must be clean.
TEST(CheckTheory, FuzzedMalformedTheories) {
  Rng rng(99);
  int checked = 0;
  while (checked < 300) {
    Theory t = random_theory(rng);
    t.goal = random_closed_formula(rng, t);
    ASSERT_TRUE(check_theory(t).empty()) << print_theory(t) << check_theory(t);
    const PredicateDecl& pd = rng.pick(t.predicates);
    std::string expect;
    switch (rng.uniform(0, 6)) {
      case 0:
        t.axioms.push_back(Formula::atom("undeclared"));
        expect = "undeclared-predicate";
        break;
      case 1: {
        std::vector<Term> args(pd.arg_sorts.size() + 1, Term::constant(t.sorts[0].constants[0], t.sorts[0].name));
        t.axioms.push_back(Formula::atom(pd.name, args));
        expect = "arity-mismatch";
        break;
      }
      case 2:
        t.axioms.push_back(Formula::eq(Term::variable("free", t.sorts[0].name),
                                       Term::constant(t.sorts[0].constants[0], t.sorts[0].name)));
        expect = "free-variable";
        break;
      case 3: {
        if (pd.arg_sorts.empty()) continue;
        std::vector<Term> args;
        for (const auto& s : pd.arg_sorts) args.push_back(Term::constant(t.constants_of(s)[0], s));
        args[0] = Term::constant("nowhere", args[0].sort);
        t.axioms.push_back(Formula::atom(pd.name, args));
        expect = "undeclared-constant";
        break;
      }
      case 4: {
        std::vector<Term> params;
        for (std::size_t a = 0; a < pd.arg_sorts.size(); ++a)
          params.push_back(Term::variable("w" + std::to_string(a), pd.arg_sorts[a]));
        Formula self = Formula::atom(pd.name, params);
        t.definitions.erase(std::remove_if(t.definitions.begin(), t.definitions.end(),
                                           [&](const Definition& d) { return d.head == pd.name; }),
                            t.definitions.end());
        t.definitions.push_back({pd.name, params, Formula::negate(self)});
        expect = "cyclic-definition";
        break;
      }
      case 5: {
        std::vector<Term> params;
        for (std::size_t a = 0; a < pd.arg_sorts.size(); ++a)
          params.push_back(Term::variable("w" + std::to_string(a), pd.arg_sorts[a]));
        const Sort& s = t.sorts[0];
        Formula body = Formula::eq(Term::constant(s.constants[0], s.name), Term::constant(s.constants[0], s.name));
        t.definitions.push_back({pd.name, params, body});
        t.definitions.push_back({pd.name, params, body});
        expect = "duplicate-definition";
        break;
      }
      default: {
        if (t.sorts.size() < 2 || pd.arg_sorts.empty()) continue;
        std::vector<Term> args;
        for (const auto& s : pd.arg_sorts) args.push_back(Term::constant(t.constants_of(s)[0], s));
        const Sort& other = t.sorts[0].name == pd.arg_sorts[0] ? t.sorts[1] : t.sorts[0];
        args[0] = Term::constant(other.constants[0], other.name);
        t.axioms.push_back(Formula::atom(pd.name, args));
        expect = "sort-mismatch";
        break;
      }
    }
    auto ds = check_theory(t);
    EXPECT_TRUE(has_code(ds, expect)) << "expected " << expect << " for\n" << print_theory(t) << ds;
    ++checked;
  }
}

TEST(CheckTheory, DiagnosticsCarryLocations) {
  Theory t = filter_signature();
  t.axioms.push_back(Formula::atom("zap", {con("a")}));
  for (const auto& d : check_theory(t)) EXPECT_FALSE(d.where.empty()) << d;
}

TEST(Literal, OrderingAndNegation) {
  Literal a = Literal::of(p(con("a")), true);
  EXPECT_EQ(a.negated().negated(), a);
  EXPECT_NE(a, a.negated());
  EXPECT_THROW(Literal::of(p(var("x")), true), InputError);
  EXPECT_THROW(Literal::of(Formula::negate(p(con("a"))), true), InputError);
}

TEST(Interpretation, HoldsAndSet) {
  Interpretation i{{"p", {"a"}}, {"q", {"a"}}, {"q", {"c"}}};
  EXPECT_TRUE(i.holds(GroundAtom{"q", {"c"}}));
  EXPECT_FALSE(i.holds(GroundAtom{"p", {"b"}}));
  i.set({"p", {"a"}}, false);
  EXPECT_EQ(i.size(), 2U);
}

TEST(Theory, AllGroundAtomsCountsProducts) {
  Theory t;
  t.sorts.push_back({"A", {"a1", "a2"}});
  t.sorts.push_back({"B", {"b1", "b2", "b3"}});
  t.predicates.push_back({"z", {}});
  t.predicates.push_back({"r", {"A", "B"}});
  auto atoms = all_ground_atoms(t);
  ASSERT_EQ(atoms.size(), 7U);
  EXPECT_EQ(atoms[0], (GroundAtom{"z", {}}));
  EXPECT_EQ(atoms[1], (GroundAtom{"r", {"a1", "b1"}}));
  EXPECT_EQ(atoms[6], (GroundAtom{"r", {"a2", "b3"}}));
}
