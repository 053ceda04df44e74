#pragma once

#include <cexplain/error.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/theory.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cexplain {

namespace detail {

class TheoryChecker {
 public:
  TheoryChecker(const Theory& t, const SpanMap* spans) : t_(t), spans_(spans) {}

  std::vector<Diagnostic> run() {
    check_sorts();
    check_predicates();
    check_definitions();
    for (std::size_t i = 0; i < t_.axioms.size(); ++i)
      check_closed(t_.axioms[i], "axiom " + std::to_string(i + 1));
    if (!t_.goal)
      report("missing-goal", "the theory has no goal", "theory", nullptr);
    else
      check_closed(*t_.goal, "goal");
    check_overrides();
    check_cycles();
    return std::move(diags_);
  }

 private:
  using Scope = std::vector<std::pair<std::string, std::string>>;  // variable -> sort

  void report(std::string code, std::string message, std::string where, const void* node) {
    Diagnostic d{std::move(code), std::move(message), std::move(where), std::nullopt};
    if (spans_ && node) {
      auto it = spans_->find(node);
      if (it != spans_->end()) d.span = it->second;
    }
    diags_.push_back(std::move(d));
  }

  void check_sorts() {
    std::set<std::string> names, constants;
    for (const auto& s : t_.sorts) {
      if (!names.insert(s.name).second)
        report("duplicate-sort", "sort '" + s.name + "' declared twice", "sort " + s.name, nullptr);
      if (s.constants.empty())
        report("empty-sort", "sort '" + s.name + "' has no constants", "sort " + s.name, nullptr);
      for (const auto& c : s.constants)
        if (!constants.insert(c).second)
          report("duplicate-constant", "constant '" + c + "' declared more than once",
                 "sort " + s.name, nullptr);
    }
  }

  void check_predicates() {
    std::set<std::string> names;
    for (const auto& p : t_.predicates) {
      if (!names.insert(p.name).second)
        report("duplicate-predicate", "predicate '" + p.name + "' declared twice",
               "predicate " + p.name, nullptr);
      for (const auto& s : p.arg_sorts)
        if (!t_.find_sort(s))
          report("undeclared-sort", "predicate '" + p.name + "' uses undeclared sort '" + s + "'",
                 "predicate " + p.name, nullptr);
    }
  }

  void check_definitions() {
    std::set<std::string> heads;
    for (const auto& d : t_.definitions) {
      const std::string where = "definition of " + d.head;
      const void* node = d.body.identity();
      if (!heads.insert(d.head).second)
        report("duplicate-definition", "predicate '" + d.head + "' has more than one definition",
               where, node);
      const PredicateDecl* decl = t_.find_predicate(d.head);
      if (!decl) {
        report("undeclared-predicate", "definition of undeclared predicate '" + d.head + "'", where,
               node);
        continue;
      }
      if (decl->arity() != d.params.size())
        report("arity-mismatch",
               "'" + d.head + "' is declared with " + std::to_string(decl->arity()) +
                   " arguments but defined with " + std::to_string(d.params.size()),
               where, node);
      Scope scope;
      for (std::size_t i = 0; i < d.params.size(); ++i) {
        const Term& p = d.params[i];
        if (!p.is_variable())
          report("bad-parameter", "definition parameter '" + p.name + "' is not a variable", where,
                 node);
        if (std::any_of(scope.begin(), scope.end(), [&](const auto& e) { return e.first == p.name; }))
          report("duplicate-parameter", "parameter '" + p.name + "' repeated", where, node);
        if (i < decl->arity() && decl->arg_sorts[i] != p.sort)
          report("sort-mismatch",
                 "parameter '" + p.name + "' has sort " + p.sort + ", declaration expects " +
                     decl->arg_sorts[i],
                 where, node);
        scope.emplace_back(p.name, p.sort);
      }
      check_formula(d.body, scope, where);
    }
  }

  void check_closed(const Formula& f, const std::string& where) {
    Scope scope;
    check_formula(f, scope, where);
  }

  void check_term(const Term& term, const Scope& scope, const std::string& where, const void* node) {
    if (term.is_variable()) {
      auto it = std::find_if(scope.rbegin(), scope.rend(),
                             [&](const auto& e) { return e.first == term.name; });
      if (it == scope.rend())
        report("free-variable", "variable '" + term.name + "' is not bound", where, node);
      else if (it->second != term.sort)
        report("sort-mismatch",
               "variable '" + term.name + "' is bound with sort " + it->second + " but used as " +
                   term.sort,
               where, node);
      return;
    }
    const Sort* s = t_.sort_of_constant(term.name);
    if (!s)
      report("undeclared-constant", "constant '" + term.name + "' is not declared", where, node);
    else if (s->name != term.sort)
      report("sort-mismatch",
             "constant '" + term.name + "' belongs to sort " + s->name + ", not " + term.sort, where,
             node);
  }

  void check_formula(const Formula& f, Scope& scope, const std::string& where) {
    const void* node = f.identity();
    switch (f.kind()) {
      case FormulaKind::atom: {
        const PredicateDecl* decl = t_.find_predicate(f.predicate());
        if (!decl) {
          report("undeclared-predicate", "predicate '" + f.predicate() + "' is not declared", where,
                 node);
          return;
        }
        if (decl->arity() != f.args().size()) {
          report("arity-mismatch",
                 "'" + f.predicate() + "' takes " + std::to_string(decl->arity()) + " arguments, got " +
                     std::to_string(f.args().size()),
                 where, node);
          return;
        }
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          check_term(f.args()[i], scope, where, node);
          if (f.args()[i].sort != decl->arg_sorts[i])
            report("sort-mismatch",
                   "argument " + std::to_string(i + 1) + " of '" + f.predicate() + "' has sort " +
                       f.args()[i].sort + ", expected " + decl->arg_sorts[i],
                   where, node);
        }
        return;
      }
      case FormulaKind::equal:
        check_term(f.lhs_term(), scope, where, node);
        check_term(f.rhs_term(), scope, where, node);
        if (f.lhs_term().sort != f.rhs_term().sort)
          report("sort-mismatch",
                 "equality between sorts " + f.lhs_term().sort + " and " + f.rhs_term().sort, where,
                 node);
        return;
      case FormulaKind::forall:
      case FormulaKind::exists:
        if (!t_.find_sort(f.bound_sort()))
          report("undeclared-sort", "quantifier over undeclared sort '" + f.bound_sort() + "'", where,
                 node);
        scope.emplace_back(f.bound_name(), f.bound_sort());
        check_formula(f.body(), scope, where);
        scope.pop_back();
        return;
      default:
        for (const auto& op : f.operands()) check_formula(op, scope, where);
    }
  }

  void check_overrides() {
    for (const auto& [name, tier] : t_.interest_overrides) {
      if (!t_.find_predicate(name))
        report("undeclared-predicate", "interest given for undeclared predicate '" + name + "'",
               "interest " + name, nullptr);
      if (tier < 0)
        report("bad-interest", "interest of '" + name + "' must be non-negative", "interest " + name,
               nullptr);
    }
  }

  void check_cycles() {
    std::map<std::string, std::set<std::string>> deps;
    for (const auto& d : t_.definitions) collect_predicates(d.body, deps[d.head]);

    enum class Mark { fresh, active, done };
    std::map<std::string, Mark> mark;
    std::vector<std::string> path;
    std::set<std::string> reported;

    auto visit = [&](auto&& self, const std::string& p) -> void {
      mark[p] = Mark::active;
      path.push_back(p);
      for (const auto& q : deps[p]) {
        if (!deps.count(q)) continue;
        if (mark[q] == Mark::active) {
          auto start = std::find(path.begin(), path.end(), q);
          std::string cycle;
          for (auto it = start; it != path.end(); ++it) cycle += *it + " -> ";
          cycle += q;
          if (reported.insert(q).second) {
            const Definition* d = t_.find_definition(q);
            report("cyclic-definition", "definitions are cyclic: " + cycle, "definition of " + q,
                   d ? d->body.identity() : nullptr);
          }
        } else if (mark[q] == Mark::fresh) {
          self(self, q);
        }
      }
      path.pop_back();
      mark[p] = Mark::done;
    };
    for (const auto& d : t_.definitions)
      if (mark[d.head] == Mark::fresh) visit(visit, d.head);
  }

  const Theory& t_;
  const SpanMap* spans_;
  std::vector<Diagnostic> diags_;
};

}  // namespace detail

/// Every violated Theory invariant, each with a location. Empty means the
/// theory is fit for grounding, solving and explanation.
inline std::vector<Diagnostic> check_theory(const Theory& t, const SpanMap* spans = nullptr) {
  return detail::TheoryChecker(t, spans).run();
}

}  // namespace cexplain
