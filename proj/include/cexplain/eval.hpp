#pragma once

#include <cexplain/error.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/theory.hpp>

#include <string>
#include <utility>
#include <vector>

namespace cexplain {

namespace detail {

class Evaluator {
 public:
  Evaluator(const Theory& universe, const Interpretation& interp) : universe_(universe), interp_(interp) {}

  bool eval(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::atom: {
        const auto& args = f.args();
        buf_.resize(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) buf_[i] = &resolve(args[i]);
        return interp_.holds(GroundAtomView{f.predicate(), buf_.data(), buf_.size()});
      }
      case FormulaKind::equal:
        return resolve(f.lhs_term()) == resolve(f.rhs_term());
      case FormulaKind::negation:
        return !eval(f.operand());
      case FormulaKind::conjunction:
        for (const auto& op : f.operands())
          if (!eval(op)) return false;
        return true;
      case FormulaKind::disjunction:
        for (const auto& op : f.operands())
          if (eval(op)) return true;
        return false;
      case FormulaKind::implication:
        return !eval(f.operand(0)) || eval(f.operand(1));
      case FormulaKind::equivalence:
        return eval(f.operand(0)) == eval(f.operand(1));
      case FormulaKind::forall:
      case FormulaKind::exists: {
        const bool universal = f.is(FormulaKind::forall);
        env_.emplace_back(&f.bound_name(), nullptr);
        const std::size_t slot = env_.size() - 1;
        bool result = universal;
        for (const auto& c : universe_.constants_of(f.bound_sort())) {
          env_[slot].second = &c;
          if (eval(f.body()) != universal) {
            result = !universal;
            break;
          }
        }
        env_.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  const std::string& resolve(const Term& t) const {
    if (t.is_constant()) return t.name;
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (*it->first == t.name) return *it->second;
    throw InputError("eval: free variable '" + t.name + "'");
  }

  const Theory& universe_;
  const Interpretation& interp_;
  std::vector<std::pair<const std::string*, const std::string*>> env_;
  std::vector<const std::string*> buf_;
};

}  // namespace detail

/// Truth value of a closed formula. Quantifiers range over the sort's
/// constants; equality is constant identity.
inline bool eval(const Formula& f, const Theory& universe, const Interpretation& interp) {
  return detail::Evaluator(universe, interp).eval(f);
}

}  // namespace cexplain
