#pragma once

#include <cexplain/formula.hpp>
#include <cexplain/theory.hpp>

#include <sstream>
#include <string>

namespace cexplain {

namespace detail {

// Binding strength; quantifiers extend as far right as possible and sit below
// every connective.
inline int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::equivalence: return 1;
    case FormulaKind::implication: return 2;
    case FormulaKind::disjunction: return 3;
    case FormulaKind::conjunction: return 4;
    case FormulaKind::forall:
    case FormulaKind::exists: return 0;
    default: return 5;
  }
}

inline void print_terms(std::ostream& os, const std::vector<Term>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) os << (i ? ", " : "") << ts[i].name;
}

// `tail` is true when nothing follows this formula in the output, which is
// the only place a quantifier may appear without parentheses.
inline void print(std::ostream& os, const Formula& f, int min_prec, bool tail);

inline void print_operand(std::ostream& os, const Formula& f, int min_prec, bool tail) {
  const bool parens = is_quantifier(f.kind()) ? !tail : precedence(f.kind()) < min_prec;
  if (parens) os << '(';
  print(os, f, parens ? 0 : min_prec, parens || tail);
  if (parens) os << ')';
}

inline void print(std::ostream& os, const Formula& f, int, bool tail) {
  switch (f.kind()) {
    case FormulaKind::atom:
      os << f.predicate();
      if (!f.args().empty()) {
        os << '(';
        print_terms(os, f.args());
        os << ')';
      }
      return;
    case FormulaKind::equal:
      os << f.lhs_term().name << " = " << f.rhs_term().name;
      return;
    case FormulaKind::negation:
      if (f.operand().is(FormulaKind::equal)) {
        os << f.operand().lhs_term().name << " != " << f.operand().rhs_term().name;
        return;
      }
      os << '!';
      print_operand(os, f.operand(), 5, tail);
      return;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction: {
      const bool is_and = f.is(FormulaKind::conjunction);
      const auto& ops = f.operands();
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i) os << (is_and ? " & " : " | ");
        // Nested same-kind chains keep their parentheses so that the parser,
        // which flattens chains, reproduces the same tree.
        print_operand(os, ops[i], is_and ? 5 : 4, tail && i + 1 == ops.size());
      }
      return;
    }
    case FormulaKind::implication:
      print_operand(os, f.operand(0), 3, false);
      os << " -> ";
      print_operand(os, f.operand(1), 2, tail);
      return;
    case FormulaKind::equivalence:
      print_operand(os, f.operand(0), 1, false);
      os << " <-> ";
      print_operand(os, f.operand(1), 2, tail);
      return;
    case FormulaKind::forall:
    case FormulaKind::exists:
      os << (f.is(FormulaKind::forall) ? "forall " : "exists ") << f.bound_name() << ": "
         << f.bound_sort() << " . ";
      print_operand(os, f.body(), 0, true);
      return;
  }
}

}  // namespace detail

/// Canonical ASCII rendering with minimal parentheses; parse_formula() reads
/// it back to a structurally equal formula.
inline std::string print_formula(const Formula& f) {
  std::ostringstream os;
  detail::print(os, f, 0, true);
  return os.str();
}

inline std::string print_literal(const Literal& l) {
  if (l.is_equality())
    return l.atom.lhs_term().name + (l.positive ? " = " : " != ") + l.atom.rhs_term().name;
  return (l.positive ? "" : "!") + print_formula(l.atom);
}

inline std::string print_atom(const GroundAtom& g) {
  std::string s = g.predicate;
  if (!g.args.empty()) {
    s += '(';
    for (std::size_t i = 0; i < g.args.size(); ++i) s += (i ? ", " : "") + g.args[i];
    s += ')';
  }
  return s;
}

/// Source text for a whole theory, in the order sorts, predicates,
/// definitions, axioms, interest overrides, goal.
inline std::string print_theory(const Theory& t) {
  std::ostringstream os;
  for (const auto& s : t.sorts) {
    os << "sort " << s.name << " = { ";
    for (std::size_t i = 0; i < s.constants.size(); ++i) os << (i ? ", " : "") << s.constants[i];
    os << " }\n";
  }
  for (const auto& p : t.predicates) {
    os << "pred " << p.name;
    if (!p.arg_sorts.empty()) {
      os << '(';
      for (std::size_t i = 0; i < p.arg_sorts.size(); ++i) os << (i ? ", " : "") << p.arg_sorts[i];
      os << ')';
    }
    os << '\n';
  }
  for (const auto& d : t.definitions) {
    os << "def " << d.head;
    if (!d.params.empty()) {
      os << '(';
      detail::print_terms(os, d.params);
      os << ')';
    }
    os << " := " << print_formula(d.body) << '\n';
  }
  for (const auto& a : t.axioms) os << "axiom " << print_formula(a) << '\n';
  for (const auto& [name, tier] : t.interest_overrides) os << "interest " << name << " = " << tier << '\n';
  if (t.goal) os << "goal " << print_formula(*t.goal) << '\n';
  return os.str();
}

}  // namespace cexplain
