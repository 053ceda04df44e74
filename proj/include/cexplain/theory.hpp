#pragma once

#include <cexplain/formula.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cexplain {

/// A sort and its finite universe slice, in declaration order.
struct Sort {
  std::string name;
  std::vector<std::string> constants;

  friend bool operator==(const Sort&, const Sort&) = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<std::string> arg_sorts;

  std::size_t arity() const { return arg_sorts.size(); }
  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

/// p(x1, ..., xn) := body
struct Definition {
  std::string head;
  std::vector<Term> params;
  Formula body;

  friend bool operator==(const Definition&, const Definition&) = default;
};

struct Theory {
  std::vector<Sort> sorts;
  std::vector<PredicateDecl> predicates;
  std::vector<Definition> definitions;
  std::vector<Formula> axioms;
  std::optional<Formula> goal;
  std::map<std::string, int> interest_overrides;

  const Sort* find_sort(std::string_view name) const {
    auto it = std::find_if(sorts.begin(), sorts.end(), [&](const Sort& s) { return s.name == name; });
    return it == sorts.end() ? nullptr : &*it;
  }
  const PredicateDecl* find_predicate(std::string_view name) const {
    auto it = std::find_if(predicates.begin(), predicates.end(),
                           [&](const PredicateDecl& p) { return p.name == name; });
    return it == predicates.end() ? nullptr : &*it;
  }
  const Definition* find_definition(std::string_view head) const {
    auto it = std::find_if(definitions.begin(), definitions.end(),
                           [&](const Definition& d) { return d.head == head; });
    return it == definitions.end() ? nullptr : &*it;
  }
  // Sort declaring constant `c`, or nullptr.
  const Sort* sort_of_constant(std::string_view c) const {
    for (const auto& s : sorts)
      if (std::find(s.constants.begin(), s.constants.end(), c) != s.constants.end()) return &s;
    return nullptr;
  }
  const std::vector<std::string>& constants_of(std::string_view sort) const {
    const Sort* s = find_sort(sort);
    if (!s) throw InputError("unknown sort '" + std::string(sort) + "'");
    return s->constants;
  }

  friend bool operator==(const Theory&, const Theory&) = default;
};

/// A predicate applied to constants; the unit of an Interpretation.
struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

// Borrowed view of a ground atom, used for heterogeneous set lookups.
struct GroundAtomView {
  std::string_view predicate;
  const std::string* const* args;
  std::size_t arity;
};

struct GroundAtomLess {
  using is_transparent = void;

  static std::strong_ordering cmp(std::string_view p, const std::string* const* a, std::size_t n,
                                  const GroundAtom& g) {
    if (auto c = p <=> std::string_view(g.predicate); c != 0) return c;
    const std::size_t m = std::min(n, g.args.size());
    for (std::size_t i = 0; i < m; ++i)
      if (auto c = std::string_view(*a[i]) <=> std::string_view(g.args[i]); c != 0) return c;
    return n <=> g.args.size();
  }

  bool operator()(const GroundAtom& x, const GroundAtom& y) const { return x < y; }
  bool operator()(const GroundAtomView& v, const GroundAtom& g) const {
    return cmp(v.predicate, v.args, v.arity, g) < 0;
  }
  bool operator()(const GroundAtom& g, const GroundAtomView& v) const {
    return cmp(v.predicate, v.args, v.arity, g) > 0;
  }
};

/// The set of true ground atoms; every other atom is false. Equality is
/// structural (constant identity) and never stored here.
class Interpretation {
 public:
  Interpretation() = default;
  Interpretation(std::initializer_list<GroundAtom> atoms) : atoms_(atoms.begin(), atoms.end()) {}
  explicit Interpretation(std::set<GroundAtom, GroundAtomLess> atoms) : atoms_(std::move(atoms)) {}

  bool holds(const GroundAtom& a) const { return atoms_.count(a) != 0; }
  bool holds(const GroundAtomView& v) const { return atoms_.find(v) != atoms_.end(); }

  void set(const GroundAtom& a, bool value) {
    if (value)
      atoms_.insert(a);
    else
      atoms_.erase(a);
  }

  const std::set<GroundAtom, GroundAtomLess>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  std::set<GroundAtom, GroundAtomLess> atoms_;
};

/// Signed ground atom or ground equality.
struct Literal {
  bool positive = true;
  Formula atom;  // FormulaKind::atom or FormulaKind::equal, all terms constants

  static Literal of(Formula atom, bool positive) {
    if (!atom.is_literal_atom() || !is_ground(atom))
      throw InputError("a literal needs a ground atom or ground equality");
    return Literal{positive, std::move(atom)};
  }

  Literal negated() const { return Literal{!positive, atom}; }
  Formula as_formula() const { return positive ? atom : Formula::negate(atom); }
  bool is_equality() const { return atom.is(FormulaKind::equal); }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.positive == b.positive && a.atom == b.atom;
  }
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    if (auto c = compare(a.atom, b.atom); c != 0) return c;
    return a.positive <=> b.positive;
  }
};

/// The ground atom named by an atom formula whose arguments are constants.
inline GroundAtom ground_atom_of(const Formula& f) {
  if (!f.is(FormulaKind::atom)) throw InputError("ground_atom_of: not an atom");
  GroundAtom g{f.predicate(), {}};
  for (const auto& t : f.args()) {
    if (!t.is_constant()) throw InputError("ground_atom_of: atom has a variable argument");
    g.args.push_back(t.name);
  }
  return g;
}

inline Formula atom_formula(const Theory& t, const GroundAtom& g) {
  const PredicateDecl* decl = t.find_predicate(g.predicate);
  if (!decl) throw InputError("undeclared predicate '" + g.predicate + "'");
  if (decl->arity() != g.args.size())
    throw InputError("wrong number of arguments for '" + g.predicate + "'");
  std::vector<Term> args;
  for (std::size_t i = 0; i < g.args.size(); ++i)
    args.push_back(Term::constant(g.args[i], decl->arg_sorts[i]));
  return Formula::atom(g.predicate, std::move(args));
}

/// Truth of a literal's atom in `i`. Equality compares constant names.
inline bool literal_atom_holds(const Literal& l, const Interpretation& i) {
  if (l.is_equality()) return l.atom.lhs_term().name == l.atom.rhs_term().name;
  return i.holds(ground_atom_of(l.atom));
}

inline bool literal_holds(const Literal& l, const Interpretation& i) {
  return literal_atom_holds(l, i) == l.positive;
}

/// Body of `d` with its parameters replaced by `args`, negated when `sign` is
/// false (a negative literal unfolds to the negated body).
inline Formula instantiate_definition(const Definition& d, const std::vector<Term>& args, bool sign) {
  if (args.size() != d.params.size())
    throw InputError("definition of '" + d.head + "' takes " + std::to_string(d.params.size()) +
                     " arguments, got " + std::to_string(args.size()));
  Formula out = d.body;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].is_constant())
      throw InputError("definition arguments must be constants");
    if (args[i].sort != d.params[i].sort)
      throw InputError("argument '" + args[i].name + "' has sort " + args[i].sort + ", parameter '" +
                       d.params[i].name + "' of '" + d.head + "' expects " + d.params[i].sort);
    out = substitute(out, d.params[i], args[i]);
  }
  return sign ? out : Formula::negate(std::move(out));
}

/// forall x1..xn . (p(x1..xn) <-> body): the logical reading of a definition.
inline Formula definition_formula(const Definition& d) {
  Formula f = Formula::iff(Formula::atom(d.head, d.params), d.body);
  for (auto it = d.params.rbegin(); it != d.params.rend(); ++it)
    f = Formula::forall(it->name, it->sort, std::move(f));
  return f;
}

/// Axioms followed by the logical reading of every definition.
inline std::vector<Formula> theory_formulas(const Theory& t) {
  std::vector<Formula> out = t.axioms;
  for (const auto& d : t.definitions) out.push_back(definition_formula(d));
  return out;
}

/// Every well-sorted ground atom over the theory's universe, in predicate
/// declaration order and lexicographic constant order.
inline std::vector<GroundAtom> all_ground_atoms(const Theory& t) {
  std::vector<GroundAtom> out;
  for (const auto& p : t.predicates) {
    std::vector<const std::vector<std::string>*> domains;
    for (const auto& s : p.arg_sorts) domains.push_back(&t.constants_of(s));
    if (std::any_of(domains.begin(), domains.end(), [](auto* d) { return d->empty(); })) continue;
    std::vector<std::size_t> idx(domains.size(), 0);
    for (;;) {
      GroundAtom g{p.name, {}};
      for (std::size_t k = 0; k < idx.size(); ++k) g.args.push_back((*domains[k])[idx[k]]);
      out.push_back(std::move(g));
      std::size_t k = idx.size();
      while (k > 0 && ++idx[k - 1] == domains[k - 1]->size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  return out;
}

}  // namespace cexplain
