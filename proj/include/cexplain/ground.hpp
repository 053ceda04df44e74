#pragma once

#include <cexplain/error.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/print.hpp>
#include <cexplain/theory.hpp>

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cexplain {

/// One application of the rewrite rules that reduce every connective to
/// negation and conjunction:
///
///   P1 | ... | Pn   ->  !(!P1 & ... & !Pn)
///   P -> Q          ->  !(P & !Q)
///   P <-> Q         ->  (P -> Q) & (Q -> P)
///   forall x: S . P ->  P[c1/x] & ... & P[cn/x]   (S's constants in declaration order)
///   exists x: S . P ->  !(forall x: S . !P)
///
/// A universal over a one-constant sort yields the single instance.
inline Formula rewrite_step(const Formula& f, const Theory& universe) {
  switch (f.kind()) {
    case FormulaKind::disjunction: {
      std::vector<Formula> negs;
      negs.reserve(f.operands().size());
      for (const auto& op : f.operands()) negs.push_back(Formula::negate(op));
      return Formula::negate(Formula::conj(std::move(negs)));
    }
    case FormulaKind::implication:
      return Formula::negate(Formula::conj({f.operand(0), Formula::negate(f.operand(1))}));
    case FormulaKind::equivalence:
      return Formula::conj({Formula::implies(f.operand(0), f.operand(1)),
                            Formula::implies(f.operand(1), f.operand(0))});
    case FormulaKind::forall: {
      const Term var = f.bound_variable();
      std::vector<Formula> instances;
      for (const auto& c : universe.constants_of(f.bound_sort()))
        instances.push_back(substitute(f.body(), var, Term::constant(c, f.bound_sort())));
      return conjoin(std::move(instances));
    }
    case FormulaKind::exists:
      return Formula::negate(
          Formula::forall(f.bound_name(), f.bound_sort(), Formula::negate(f.body())));
    default:
      throw InputError("rewrite_step applies to |, ->, <->, forall and exists only");
  }
}

struct GroundOptions {
  // Upper bound on freshly built nodes for one ground() call.
  std::size_t max_nodes = 1'000'000;
};

namespace detail {

class Grounder {
 public:
  Grounder(const Theory& universe, const GroundOptions& opts) : universe_(universe), opts_(opts) {}

  Formula run(const Formula& f) { return visit(f, nullptr); }

 private:
  Formula visit(const Formula& f, const Formula* quantifier) {
    auto hit = memo_.find(f.identity());
    if (hit != memo_.end()) return hit->second.second;
    Formula out = compute(f, quantifier);
    memo_.emplace(f.identity(), std::make_pair(f, out));
    return out;
  }

  Formula compute(const Formula& f, const Formula* quantifier) {
    switch (f.kind()) {
      case FormulaKind::atom:
      case FormulaKind::equal:
        if (!is_ground(f))
          throw InputError("ground: free variable in '" + print_formula(f) + "'");
        return f;
      case FormulaKind::negation:
      case FormulaKind::conjunction: {
        std::vector<Formula> ops;
        ops.reserve(f.operands().size());
        for (const auto& op : f.operands()) ops.push_back(visit(op, quantifier));
        Formula out = f.with_operands(std::move(ops));
        if (out.identity() != f.identity()) count(quantifier);
        return out;
      }
      case FormulaKind::forall:
      case FormulaKind::exists: {
        Formula r = rewrite_step(f, universe_);
        count(&f, formula_size_hint(f));
        return visit(r, &f);
      }
      default:
        return visit(rewrite_step(f, universe_), quantifier);
    }
  }

  std::size_t formula_size_hint(const Formula& f) const {
    return is_quantifier(f.kind()) ? universe_.constants_of(f.bound_sort()).size() : 1;
  }

  void count(const Formula* quantifier, std::size_t n = 1) {
    nodes_ += n;
    if (nodes_ <= opts_.max_nodes) return;
    std::string what = quantifier ? print_formula(*quantifier) : std::string("<formula>");
    if (what.size() > 120) what = what.substr(0, 117) + "...";
    throw ResourceError("grounding exceeded max-ground-nodes=" + std::to_string(opts_.max_nodes) +
                        " while expanding '" + what + "'");
  }

  const Theory& universe_;
  GroundOptions opts_;
  std::size_t nodes_ = 0;
  // Keyed by node identity; the stored key keeps the node alive so its
  // address is never reused within one run.
  std::unordered_map<const void*, std::pair<Formula, Formula>> memo_;
};

}  // namespace detail

/// Quantifier-free, variable-free equivalent of a closed formula, built from
/// atoms, equalities, negations and conjunctions only. Double negations are
/// kept. Throws ResourceError when more than `opts.max_nodes` nodes would be
/// built.
inline Formula ground(const Formula& f, const Theory& universe, const GroundOptions& opts = {}) {
  return detail::Grounder(universe, opts).run(f);
}

}  // namespace cexplain
