#pragma once

#include <cexplain/error.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cexplain {

/// A variable or constant symbol together with its sort.
struct Term {
  enum class Kind : std::uint8_t { variable, constant };

  Kind kind = Kind::constant;
  std::string name;
  std::string sort;

  static Term variable(std::string name, std::string sort) {
    return {Kind::variable, std::move(name), std::move(sort)};
  }
  static Term constant(std::string name, std::string sort) {
    return {Kind::constant, std::move(name), std::move(sort)};
  }

  bool is_variable() const { return kind == Kind::variable; }
  bool is_constant() const { return kind == Kind::constant; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class FormulaKind : std::uint8_t {
  atom,
  equal,
  negation,
  conjunction,
  disjunction,
  implication,
  equivalence,
  forall,
  exists,
};

inline bool is_quantifier(FormulaKind k) {
  return k == FormulaKind::forall || k == FormulaKind::exists;
}

/// Immutable formula tree with shared structure.
///
/// Subtrees are reference-counted and never mutated, so copying a Formula is
/// cheap and rewrites that leave a subtree untouched return the same node.
/// Conjunctions and disjunctions are n-ary (at least two operands) and keep
/// operand order: explanation tie-breaking is positional.
class Formula {
 public:
  struct Node {
    FormulaKind kind;
    std::string symbol;            // predicate name (atom) or bound variable (quantifier)
    std::string sort;              // bound variable sort (quantifier)
    std::vector<Term> terms;       // atom arguments, or {lhs, rhs} of an equality
    std::vector<Formula> operands;
  };

  static Formula atom(std::string predicate, std::vector<Term> args = {}) {
    return Formula(Node{FormulaKind::atom, std::move(predicate), {}, std::move(args), {}});
  }
  static Formula eq(Term lhs, Term rhs) {
    return Formula(Node{FormulaKind::equal, {}, {}, {std::move(lhs), std::move(rhs)}, {}});
  }
  static Formula negate(Formula f) {
    return Formula(Node{FormulaKind::negation, {}, {}, {}, {std::move(f)}});
  }
  // Throws InputError for fewer than two operands; see conjoin() for the
  // forgiving variant.
  static Formula conj(std::vector<Formula> operands) {
    return nary(FormulaKind::conjunction, std::move(operands));
  }
  static Formula disj(std::vector<Formula> operands) {
    return nary(FormulaKind::disjunction, std::move(operands));
  }
  static Formula implies(Formula lhs, Formula rhs) {
    return Formula(Node{FormulaKind::implication, {}, {}, {}, {std::move(lhs), std::move(rhs)}});
  }
  static Formula iff(Formula lhs, Formula rhs) {
    return Formula(Node{FormulaKind::equivalence, {}, {}, {}, {std::move(lhs), std::move(rhs)}});
  }
  static Formula forall(std::string var, std::string sort, Formula body) {
    return Formula(Node{FormulaKind::forall, std::move(var), std::move(sort), {}, {std::move(body)}});
  }
  static Formula exists(std::string var, std::string sort, Formula body) {
    return Formula(Node{FormulaKind::exists, std::move(var), std::move(sort), {}, {std::move(body)}});
  }
  static Formula quantifier(FormulaKind k, std::string var, std::string sort, Formula body) {
    return k == FormulaKind::forall ? forall(std::move(var), std::move(sort), std::move(body))
                                    : exists(std::move(var), std::move(sort), std::move(body));
  }

  FormulaKind kind() const { return node_->kind; }
  const Node& node() const { return *node_; }
  const Node* identity() const { return node_.get(); }

  // atom
  const std::string& predicate() const { return node_->symbol; }
  const std::vector<Term>& args() const { return node_->terms; }
  // equality
  const Term& lhs_term() const { return node_->terms[0]; }
  const Term& rhs_term() const { return node_->terms[1]; }
  // connectives
  const std::vector<Formula>& operands() const { return node_->operands; }
  const Formula& operand(std::size_t i = 0) const { return node_->operands[i]; }
  // quantifiers
  const std::string& bound_name() const { return node_->symbol; }
  const std::string& bound_sort() const { return node_->sort; }
  Term bound_variable() const { return Term::variable(node_->symbol, node_->sort); }
  const Formula& body() const { return node_->operands[0]; }

  bool is(FormulaKind k) const { return node_->kind == k; }
  bool is_literal_atom() const { return is(FormulaKind::atom) || is(FormulaKind::equal); }

  /// Rebuilds this node with new operands, reusing the node when nothing changed.
  Formula with_operands(std::vector<Formula> ops) const {
    bool same = ops.size() == node_->operands.size();
    for (std::size_t i = 0; same && i < ops.size(); ++i)
      same = ops[i].identity() == node_->operands[i].identity();
    if (same) return *this;
    Node n = *node_;
    n.operands = std::move(ops);
    return Formula(std::move(n));
  }
  Formula with_terms(std::vector<Term> terms) const {
    Node n = *node_;
    n.terms = std::move(terms);
    return Formula(std::move(n));
  }

  friend std::strong_ordering compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) { return compare(a, b); }

 private:
  explicit Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  static Formula nary(FormulaKind k, std::vector<Formula> operands) {
    if (operands.size() < 2)
      throw InputError("n-ary connective needs at least two operands");
    return Formula(Node{k, {}, {}, {}, std::move(operands)});
  }

  std::shared_ptr<const Node> node_;
};

inline std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.symbol <=> y.symbol; c != 0) return c;
  if (auto c = x.sort <=> y.sort; c != 0) return c;
  if (auto c = x.terms <=> y.terms; c != 0) return c;
  const std::size_t n = std::min(x.operands.size(), y.operands.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = compare(x.operands[i], y.operands[i]); c != 0) return c;
  return x.operands.size() <=> y.operands.size();
}

/// Conjunction of `fs`, collapsing the one-operand case to the operand itself.
inline Formula conjoin(std::vector<Formula> fs) {
  if (fs.empty()) throw InputError("cannot conjoin an empty list of formulas");
  if (fs.size() == 1) return std::move(fs.front());
  return Formula::conj(std::move(fs));
}

inline void collect_free_variables(const Formula& f, std::vector<std::string>& bound,
                                   std::set<Term>& out) {
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::equal:
      for (const auto& t : f.node().terms)
        if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name) == bound.end())
          out.insert(t);
      return;
    case FormulaKind::forall:
    case FormulaKind::exists:
      bound.push_back(f.bound_name());
      collect_free_variables(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& op : f.operands()) collect_free_variables(op, bound, out);
  }
}

inline std::set<Term> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<Term> out;
  collect_free_variables(f, bound, out);
  return out;
}

inline bool is_closed(const Formula& f) { return free_variables(f).empty(); }

/// No quantifiers and no variables anywhere.
inline bool is_ground(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::equal:
      return std::none_of(f.node().terms.begin(), f.node().terms.end(),
                          [](const Term& t) { return t.is_variable(); });
    case FormulaKind::forall:
    case FormulaKind::exists:
      return false;
    default:
      return std::all_of(f.operands().begin(), f.operands().end(),
                         [](const Formula& op) { return is_ground(op); });
  }
}

/// Names of the predicates occurring in atoms of `f`.
inline void collect_predicates(const Formula& f, std::set<std::string>& out) {
  if (f.is(FormulaKind::atom)) out.insert(f.predicate());
  for (const auto& op : f.operands()) collect_predicates(op, out);
}

inline std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& op : f.operands()) n += formula_size(op);
  return n;
}

/// Replaces free occurrences of `var` by the constant `c`. Occurrences under
/// a quantifier rebinding the same name are left alone; subtrees without a
/// free occurrence are shared with the input.
inline Formula substitute(const Formula& f, const Term& var, const Term& c) {
  if (!var.is_variable()) throw InputError("substitute: '" + var.name + "' is not a variable");
  if (!c.is_constant()) throw InputError("substitute: '" + c.name + "' is not a constant");
  if (var.sort != c.sort)
    throw InputError("substitute: constant '" + c.name + "' of sort " + c.sort +
                     " cannot replace variable '" + var.name + "' of sort " + var.sort);

  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::equal: {
      const auto& terms = f.node().terms;
      bool hit = false;
      for (const auto& t : terms) hit = hit || (t.is_variable() && t.name == var.name);
      if (!hit) return f;
      std::vector<Term> out = terms;
      for (auto& t : out)
        if (t.is_variable() && t.name == var.name) t = c;
      return f.with_terms(std::move(out));
    }
    case FormulaKind::forall:
    case FormulaKind::exists:
      if (f.bound_name() == var.name) return f;
      return f.with_operands({substitute(f.body(), var, c)});
    default: {
      std::vector<Formula> ops;
      ops.reserve(f.operands().size());
      for (const auto& op : f.operands()) ops.push_back(substitute(op, var, c));
      return f.with_operands(std::move(ops));
    }
  }
}

}  // namespace cexplain
