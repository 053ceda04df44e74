#pragma once

#include <cexplain/error.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/ground.hpp>
#include <cexplain/theory.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cexplain {

/// output <-> (inputs[0] & ... & inputs[k-1]); literals are signed variable
/// indices.
struct AndGate {
  int output = 0;
  std::vector<int> inputs;
};

/// Clause set in DIMACS conventions: variables are 1..var_count, a literal is
/// +v or -v. Original ground atoms map bijectively to variables; every other
/// variable is the output of exactly one AndGate. Gates are stored in creation
/// order, so a gate's inputs are atoms or outputs of earlier gates.
struct CnfProblem {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;
  std::map<GroundAtom, int> var_of_atom;
  std::vector<std::optional<GroundAtom>> atom_of_var{std::nullopt};  // index 0 unused
  std::vector<AndGate> gates;

  bool is_auxiliary(int v) const { return !atom_of_var.at(static_cast<std::size_t>(v)).has_value(); }

  std::vector<int> original_vars() const {
    std::vector<int> out;
    for (int v = 1; v <= var_count; ++v)
      if (!is_auxiliary(v)) out.push_back(v);
    return out;
  }
};

namespace detail {

class CnfEncoder {
 public:
  explicit CnfEncoder(CnfProblem& out) : out_(out) {}

  // A subformula encodes to a constant or to a literal.
  struct Code {
    bool is_constant = false;
    bool value = false;
    int lit = 0;
  };

  void assert_top(const Formula& f) {
    if (f.is(FormulaKind::conjunction)) {
      for (const auto& op : f.operands()) assert_top(op);
      return;
    }
    Code c = encode(f);
    if (c.is_constant) {
      if (!c.value) out_.clauses.emplace_back();
      return;
    }
    out_.clauses.push_back({c.lit});
  }

 private:
  static Code constant(bool v) { return {true, v, 0}; }
  static Code literal(int l) { return {false, false, l}; }

  int new_var(std::optional<GroundAtom> atom) {
    out_.atom_of_var.push_back(std::move(atom));
    return ++out_.var_count;
  }

  Code encode(const Formula& f) {
    auto it = memo_.find(f.identity());
    if (it != memo_.end()) return it->second.second;
    Code c = compute(f);
    memo_.emplace(f.identity(), std::make_pair(f, c));
    return c;
  }

  Code compute(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::atom: {
        GroundAtom g = ground_atom_of(f);
        auto it = out_.var_of_atom.find(g);
        if (it != out_.var_of_atom.end()) return literal(it->second);
        const int v = new_var(g);
        out_.var_of_atom.emplace(std::move(g), v);
        return literal(v);
      }
      case FormulaKind::equal:
        if (!f.lhs_term().is_constant() || !f.rhs_term().is_constant())
          throw InputError("to_cnf: equality over a variable");
        return constant(f.lhs_term().name == f.rhs_term().name);
      case FormulaKind::negation: {
        Code c = encode(f.operand());
        return c.is_constant ? constant(!c.value) : literal(-c.lit);
      }
      case FormulaKind::conjunction: {
        std::vector<int> inputs;
        bool folded_false = false;
        for (const auto& op : f.operands()) {
          Code c = encode(op);
          if (c.is_constant)
            folded_false = folded_false || !c.value;
          else
            inputs.push_back(c.lit);
        }
        if (folded_false) return constant(false);
        if (inputs.empty()) return constant(true);
        if (inputs.size() == 1) return literal(inputs.front());
        const int v = new_var(std::nullopt);
        // v -> each input; all inputs -> v.
        std::vector<int> back{v};
        for (int l : inputs) {
          out_.clauses.push_back({-v, l});
          back.push_back(-l);
        }
        out_.clauses.push_back(std::move(back));
        out_.gates.push_back({v, std::move(inputs)});
        return literal(v);
      }
      case FormulaKind::disjunction:
      case FormulaKind::implication:
      case FormulaKind::equivalence:
        return encode(rewrite_step(f, empty_universe_));
      case FormulaKind::forall:
      case FormulaKind::exists:
        break;
    }
    throw InputError("to_cnf: input must be ground (no quantifiers)");
  }

  CnfProblem& out_;
  Theory empty_universe_;
  std::unordered_map<const void*, std::pair<Formula, Code>> memo_;
};

}  // namespace detail

/// Definitional (Tseitin) encoding of a ground formula. Equalities fold to
/// constants; a formula that folds to false yields a single empty clause.
/// Every atom of the input gets a variable, including atoms under
/// subformulas that fold to a constant.
/// Shared subformulas are encoded once.
inline CnfProblem to_cnf(const Formula& ground_formula) {
  CnfProblem out;
  detail::CnfEncoder enc(out);
  enc.assert_top(ground_formula);
  const bool folded_false =
      std::any_of(out.clauses.begin(), out.clauses.end(), [](const auto& c) { return c.empty(); });
  if (folded_false) out.clauses.assign(1, {});
  return out;
}

inline void write_dimacs(std::ostream& os, const CnfProblem& cnf) {
  for (int v = 1; v <= cnf.var_count; ++v) {
    const auto& a = cnf.atom_of_var[static_cast<std::size_t>(v)];
    if (!a) continue;
    os << "c " << v << ' ' << a->predicate;
    if (!a->args.empty()) {
      os << '(';
      for (std::size_t i = 0; i < a->args.size(); ++i) os << (i ? "," : "") << a->args[i];
      os << ')';
    }
    os << '\n';
  }
  os << "p cnf " << cnf.var_count << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
}

}  // namespace cexplain
