#pragma once

#include <cexplain/error.hpp>
#include <cexplain/eval.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/ground.hpp>
#include <cexplain/theory.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cexplain {

/// Members in order of first production, pairwise structurally distinct.
using Provenance = std::vector<Formula>;
/// Distinct provenances (compared as sets) in order of first production.
using ProvenanceSet = std::vector<Provenance>;

/// `f` with every !!P collapsed to P, at any depth.
inline Formula strip_double_negations(const Formula& f) {
  if (f.is(FormulaKind::negation) && f.operand().is(FormulaKind::negation))
    return strip_double_negations(f.operand().operand());
  if (f.operands().empty()) return f;
  std::vector<Formula> ops;
  ops.reserve(f.operands().size());
  for (const auto& op : f.operands()) ops.push_back(strip_double_negations(op));
  return f.with_operands(std::move(ops));
}

/// The literal a formula denotes, if it is a ground atom, equality, or the
/// negation of one.
inline std::optional<Literal> as_literal(const Formula& f) {
  const bool neg = f.is(FormulaKind::negation);
  const Formula& a = neg ? f.operand() : f;
  if (!a.is_literal_atom() || !is_ground(a)) return std::nullopt;
  return Literal{!neg, a};
}

inline bool add_member(Provenance& p, const Formula& f) {
  if (std::find(p.begin(), p.end(), f) != p.end()) return false;
  p.push_back(f);
  return true;
}

inline bool same_provenance(const Provenance& a, const Provenance& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(),
                     [&](const Formula& f) { return std::find(b.begin(), b.end(), f) != b.end(); });
}

inline bool add_provenance(ProvenanceSet& s, Provenance p) {
  for (const auto& q : s)
    if (same_provenance(q, p)) return false;
  s.push_back(std::move(p));
  return true;
}

/// {a u b | a in A, b in B}, deduplicated.
inline ProvenanceSet cross_union(const ProvenanceSet& a, const ProvenanceSet& b) {
  ProvenanceSet out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Provenance u = x;
      for (const auto& f : y) add_member(u, f);
      add_provenance(out, std::move(u));
    }
  return out;
}

/// `i` with the atom of `l` flipped. `l` must be true in `i`.
inline Interpretation l_alternate(const Interpretation& i, const Literal& l) {
  if (l.is_equality()) throw InputError("an equality literal has no alternate interpretation");
  if (!literal_holds(l, i)) throw InputError("l_alternate: literal is false in the interpretation");
  Interpretation out = i;
  out.set(ground_atom_of(l.atom), !l.positive);
  return out;
}

struct ProvenanceOptions {
  // Called on every argument of Y (dual = false) and Y-neg (dual = true).
  std::function<void(const Formula&, bool dual)> on_visit;
};

namespace detail {

class ProvenanceFinder {
 public:
  ProvenanceFinder(const Theory& universe, const Interpretation& m, const Interpretation& ml,
                   const ProvenanceOptions& opts)
      : universe_(universe), m_(m), ml_(ml), opts_(opts) {}

  // Argument true in M, false in M^L.
  ProvenanceSet y(const Formula& f) {
    if (opts_.on_visit) opts_.on_visit(f, false);
    switch (f.kind()) {
      case FormulaKind::atom:
      case FormulaKind::equal:
        return {Provenance{}};
      case FormulaKind::negation:
        return y_neg(f.operand());
      case FormulaKind::conjunction: {
        ProvenanceSet out;
        for (const auto& op : f.operands())
          if (!eval(op, universe_, ml_))
            for (auto& p : y(op)) add_provenance(out, std::move(p));
        return out;
      }
      default:
        return y(rewrite_step(f, universe_));
    }
  }

  // Argument false in M, true in M^L.
  ProvenanceSet y_neg(const Formula& f) {
    if (opts_.on_visit) opts_.on_visit(f, true);
    switch (f.kind()) {
      case FormulaKind::atom:
      case FormulaKind::equal:
        return {Provenance{}};
      case FormulaKind::negation:
        return y(f.operand());
      case FormulaKind::conjunction: {
        Provenance base;
        std::vector<const Formula*> falses;
        for (const auto& op : f.operands()) {
          if (eval(op, universe_, m_))
            add_member(base, strip_double_negations(op));
          else
            falses.push_back(&op);
        }
        if (falses.empty()) throw InputError("provenance: conjunction expected false is true");
        ProvenanceSet acc{Provenance{}};
        for (const Formula* q : falses) acc = cross_union(acc, y_neg(*q));
        ProvenanceSet out;
        for (const auto& p : acc) {
          Provenance u = base;
          for (const auto& g : p) add_member(u, g);
          add_provenance(out, std::move(u));
        }
        return out;
      }
      default:
        return y_neg(rewrite_step(f, universe_));
    }
  }

 private:
  const Theory& universe_;
  const Interpretation& m_;
  const Interpretation& ml_;
  const ProvenanceOptions& opts_;
};

}  // namespace detail

/// All provenances of `l` with respect to the closed formulas `t`. Every
/// member of `t` and `l` must be true in `m`. Returns the empty set when
/// `t` stays true in the L-alternate (l is independent of t).
inline ProvenanceSet provenances(const Theory& universe, const std::vector<Formula>& t,
                                 const Interpretation& m, const Literal& l,
                                 const ProvenanceOptions& opts = {}) {
  for (const auto& f : t)
    if (!eval(f, universe, m)) throw InputError("provenance: theory formula is false in the interpretation");
  const Interpretation ml = l_alternate(m, l);
  if (std::all_of(t.begin(), t.end(), [&](const Formula& f) { return eval(f, universe, ml); })) return {};
  detail::ProvenanceFinder finder(universe, m, ml, opts);
  return finder.y(conjoin(t));
}

/// Drops every provenance that has a literal member already present in
/// `seen` (e.g. the literals of an explanation tree).
inline ProvenanceSet prune_seen(const ProvenanceSet& s, const std::set<Literal>& seen) {
  ProvenanceSet out;
  for (const auto& p : s) {
    const bool hit = std::any_of(p.begin(), p.end(), [&](const Formula& f) {
      auto lit = as_literal(f);
      return lit && seen.count(*lit) != 0;
    });
    if (!hit) out.push_back(p);
  }
  return out;
}

struct CheckOptions {
  std::size_t atom_limit = 20;
};

namespace detail {

// A ground Atom/Eq/Not/And formula compiled to a gate list evaluated 64
// interpretations at a time.
class BitCircuit {
 public:
  explicit BitCircuit(const std::map<GroundAtom, std::size_t>& index) : index_(index) {}

  std::size_t add(const Formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second.second;
    Gate g;
    switch (f.kind()) {
      case FormulaKind::atom:
        g.op = Op::input;
        g.arg = index_.at(ground_atom_of(f));
        break;
      case FormulaKind::equal:
        g.op = f.lhs_term().name == f.rhs_term().name ? Op::one : Op::zero;
        break;
      case FormulaKind::negation:
        g.op = Op::negate;
        g.kids = {add(f.operand())};
        break;
      case FormulaKind::conjunction:
        g.op = Op::all;
        for (const auto& op : f.operands()) g.kids.push_back(add(op));
        break;
      default:
        throw InputError("BitCircuit: formula is not ground");
    }
    gates_.push_back(std::move(g));
    const std::size_t id = gates_.size() - 1;
    memo_.emplace(f.identity(), std::make_pair(f, id));
    return id;
  }

  std::size_t constant(bool v) {
    gates_.push_back(Gate{v ? Op::one : Op::zero, 0, {}});
    return gates_.size() - 1;
  }

  // Evaluates every gate; `inputs[k]` holds atom k's value in each lane.
  void run(const std::vector<std::uint64_t>& inputs) {
    values_.resize(gates_.size());
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const Gate& g = gates_[i];
      std::uint64_t v = 0;
      switch (g.op) {
        case Op::input: v = inputs[g.arg]; break;
        case Op::zero: v = 0; break;
        case Op::one: v = ~std::uint64_t{0}; break;
        case Op::negate: v = ~values_[g.kids[0]]; break;
        case Op::all:
          v = ~std::uint64_t{0};
          for (std::size_t k : g.kids) v &= values_[k];
          break;
      }
      values_[i] = v;
    }
  }

  std::uint64_t value(std::size_t gate) const { return values_[gate]; }

 private:
  enum class Op { input, zero, one, negate, all };
  struct Gate {
    Op op = Op::zero;
    std::size_t arg = 0;
    std::vector<std::size_t> kids;
  };

  const std::map<GroundAtom, std::size_t>& index_;
  std::vector<Gate> gates_;
  std::vector<std::uint64_t> values_;
  std::unordered_map<const void*, std::pair<Formula, std::size_t>> memo_;
};

}  // namespace detail

/// True iff every member of `p` holds in both `m` and its L-alternate and
/// t u p entails `l`, decided by enumerating every interpretation over the
/// universe's ground atoms. Throws ResourceError beyond `opts.atom_limit`
/// atoms.
inline bool check_provenance(const Theory& universe, const std::vector<Formula>& t,
                             const Interpretation& m, const Literal& l, const Provenance& p,
                             const CheckOptions& opts = {}) {
  const Interpretation ml = l_alternate(m, l);
  for (const auto& f : p)
    if (!eval(f, universe, m) || !eval(f, universe, ml)) return false;

  const std::vector<GroundAtom> atoms = all_ground_atoms(universe);
  if (atoms.size() > opts.atom_limit)
    throw ResourceError("check_provenance: " + std::to_string(atoms.size()) +
                        " ground atoms exceed the enumeration limit of " + std::to_string(opts.atom_limit));
  std::map<GroundAtom, std::size_t> index;
  for (std::size_t k = 0; k < atoms.size(); ++k) index.emplace(atoms[k], k);

  std::vector<Formula> premises = t;
  premises.insert(premises.end(), p.begin(), p.end());
  detail::BitCircuit circuit(index);
  const std::size_t prem = premises.empty()
                               ? circuit.constant(true)
                               : circuit.add(ground(conjoin(std::move(premises)), universe));
  const std::size_t goal = circuit.add(l.as_formula());

  const std::size_t n = atoms.size();
  const std::size_t low = std::min<std::size_t>(n, 6);
  const std::uint64_t lanes = low == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1U << low)) - 1;
  const std::uint64_t blocks = std::uint64_t{1} << (n - low);
  std::vector<std::uint64_t> inputs(n, 0);
  for (std::size_t k = 0; k < low; ++k)
    for (unsigned lane = 0; lane < 64; ++lane)
      if ((lane >> k) & 1U) inputs[k] |= std::uint64_t{1} << lane;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    for (std::size_t k = low; k < n; ++k) inputs[k] = ((b >> (k - low)) & 1U) ? ~std::uint64_t{0} : 0;
    circuit.run(inputs);
    if (circuit.value(prem) & ~circuit.value(goal) & lanes) return false;
  }
  return true;
}

}  // namespace cexplain
