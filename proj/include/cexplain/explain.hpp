#pragma once

#include <cexplain/error.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/ground.hpp>
#include <cexplain/interest.hpp>
#include <cexplain/theory.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace cexplain {

/// expl and intr of a formula under an interpretation, plus its truth value.
struct Explanation {
  std::vector<Literal> literals;  // first-production order, no duplicates
  int interest = 0;
  bool value = false;

  friend bool operator==(const Explanation&, const Explanation&) = default;
};

/// Appends the literals of `from` not already in `into`.
inline void merge_literals(std::vector<Literal>& into, const std::vector<Literal>& from) {
  for (const auto& l : from)
    if (std::find(into.begin(), into.end(), l) == into.end()) into.push_back(l);
}

/// The conjunction rule over explained conjuncts in position order.
///
/// Some conjunct false: the false conjunct of least interest, the earliest
/// one on ties. All true: the union, in position order, of the conjuncts of
/// greatest interest.
inline Explanation explain_conjunction(const std::vector<Explanation>& parts) {
  if (parts.empty()) throw InputError("explain_conjunction: no conjuncts");
  const Explanation* pick = nullptr;
  for (const auto& p : parts)
    if (!p.value && (!pick || p.interest < pick->interest)) pick = &p;
  if (pick) return Explanation{pick->literals, pick->interest, false};

  int mx = parts.front().interest;
  for (const auto& p : parts) mx = std::max(mx, p.interest);
  Explanation out{{}, mx, true};
  for (const auto& p : parts)
    if (p.interest == mx) merge_literals(out.literals, p.literals);
  return out;
}

namespace detail {

class Explainer {
 public:
  Explainer(const Theory& universe, const Interpretation& interp, const InterestMap& m)
      : universe_(universe), interp_(interp), m_(m) {}

  Explanation run(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::atom:
      case FormulaKind::equal: {
        Literal probe = Literal::of(f, true);
        const bool v = literal_atom_holds(probe, interp_);
        return Explanation{{Literal{v, f}}, m_.of(f), v};
      }
      case FormulaKind::negation: {
        Explanation e = run(f.operand());
        e.value = !e.value;
        return e;
      }
      case FormulaKind::conjunction: {
        std::vector<Explanation> parts;
        parts.reserve(f.operands().size());
        for (const auto& op : f.operands()) parts.push_back(run(op));
        return explain_conjunction(parts);
      }
      default:
        return run(rewrite_step(f, universe_));
    }
  }

 private:
  const Theory& universe_;
  const Interpretation& interp_;
  const InterestMap& m_;
};

}  // namespace detail

/// expl/intr of a closed formula. Quantifiers and the connectives other than
/// ! and & are handled through rewrite_step, so instance order follows sort
/// declaration order.
inline Explanation explain(const Formula& f, const Theory& universe, const Interpretation& interp,
                           const InterestMap& m) {
  return detail::Explainer(universe, interp, m).run(f);
}

}  // namespace cexplain
