#pragma once

#include <cexplain/error.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/theory.hpp>

#include <map>
#include <set>
#include <string>

namespace cexplain {

inline constexpr int equality_tier = 0;

/// Predicate tiers; larger is more interesting. Equality is always tier 0.
struct InterestMap {
  std::map<std::string, int> tiers;

  int of_predicate(const std::string& p) const {
    auto it = tiers.find(p);
    if (it == tiers.end()) throw InputError("no interest tier for predicate '" + p + "'");
    return it->second;
  }
  // `atom` is an atom or an equality.
  int of(const Formula& atom) const {
    return atom.is(FormulaKind::equal) ? equality_tier : of_predicate(atom.predicate());
  }
  int of(const Literal& l) const { return of(l.atom); }

  friend bool operator==(const InterestMap&, const InterestMap&) = default;
};

/// Syntactic tiers from the definition dependency graph:
///   4  no definition
///   3  defined, reaches some undefined predicate
///   2  defined, reaches only defined predicates (at least one)
///   1  defined, body mentions no predicate
/// Overrides in the theory replace the computed value.
inline InterestMap assign_interest(const Theory& t) {
  std::map<std::string, std::set<std::string>> deps;
  for (const auto& d : t.definitions) collect_predicates(d.body, deps[d.head]);

  // Memoised reachability; the graph is acyclic (checked by check_theory).
  std::map<std::string, bool> reaches_undefined;
  auto visit = [&](auto&& self, const std::string& p) -> bool {
    if (auto it = reaches_undefined.find(p); it != reaches_undefined.end()) return it->second;
    reaches_undefined[p] = false;
    bool r = false;
    for (const auto& q : deps[p]) r = (!t.find_definition(q) || self(self, q)) || r;
    reaches_undefined[p] = r;
    return r;
  };

  InterestMap m;
  for (const auto& p : t.predicates) {
    int tier = 4;
    if (t.find_definition(p.name)) {
      if (visit(visit, p.name))
        tier = 3;
      else
        tier = deps[p.name].empty() ? 1 : 2;
    }
    m.tiers[p.name] = tier;
  }
  for (const auto& [name, tier] : t.interest_overrides) m.tiers[name] = tier;
  return m;
}

}  // namespace cexplain
