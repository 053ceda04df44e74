#pragma once

#include <cexplain/cnf.hpp>
#include <cexplain/error.hpp>
#include <cexplain/theory.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace cexplain {

enum class Engine { dpll, brute };

struct SolveOptions {
  // Brute force enumerates the original (non-auxiliary) variables; gate
  // outputs are functions of them.
  std::size_t brute_max_vars = 24;
};

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
};

struct SatResult {
  bool sat = false;
  std::vector<bool> assignment;  // by variable index; [0] unused; empty if unsat
  SolveStats stats;
};

inline bool clause_satisfied(const std::vector<int>& clause, const std::vector<bool>& a) {
  return std::any_of(clause.begin(), clause.end(), [&](int l) {
    return a[static_cast<std::size_t>(std::abs(l))] == (l > 0);
  });
}

inline bool satisfies_all(const CnfProblem& cnf, const std::vector<bool>& a) {
  return std::all_of(cnf.clauses.begin(), cnf.clauses.end(),
                     [&](const auto& c) { return clause_satisfied(c, a); });
}

namespace detail {

// DPLL with unit propagation over two watched literals and chronological
// backtracking. Branches on the lowest unassigned variable, false first.
class Dpll {
 public:
  explicit Dpll(const CnfProblem& cnf)
      : n_(cnf.var_count), value_(static_cast<std::size_t>(n_) + 1, 0),
        watches_(2 * (static_cast<std::size_t>(n_) + 1)) {
    for (const auto& src : cnf.clauses) {
      std::vector<int> c = src;
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      bool tautology = false;
      for (int l : c) tautology = tautology || std::binary_search(c.begin(), c.end(), -l);
      if (tautology) continue;
      if (c.empty()) {
        trivially_unsat_ = true;
        continue;
      }
      if (c.size() == 1) {
        units_.push_back(c.front());
        continue;
      }
      const int ci = static_cast<int>(clauses_.size());
      watches_[code(c[0])].push_back(ci);
      watches_[code(c[1])].push_back(ci);
      clauses_.push_back(std::move(c));
    }
  }

  SatResult solve() {
    SatResult r;
    if (trivially_unsat_) return r;
    for (int u : units_) {
      if (lit_value(u) < 0) return r;
      if (lit_value(u) == 0) enqueue(u);
    }
    for (;;) {
      if (!propagate()) {
        ++stats_.conflicts;
        if (!backtrack()) {
          r.stats = stats_;
          return r;
        }
        continue;
      }
      int v = next_unassigned();
      if (v == 0) break;
      ++stats_.decisions;
      levels_.push_back({trail_.size(), v, false});
      enqueue(-v);
    }
    r.sat = true;
    r.assignment.assign(static_cast<std::size_t>(n_) + 1, false);
    for (int v = 1; v <= n_; ++v) r.assignment[static_cast<std::size_t>(v)] = value_[static_cast<std::size_t>(v)] > 0;
    r.stats = stats_;
    return r;
  }

 private:
  struct Level {
    std::size_t trail_start;
    int var;
    bool flipped;
  };

  static std::size_t code(int lit) {
    return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
  }
  int lit_value(int lit) const {
    const int v = value_[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v : -v;
  }
  void enqueue(int lit) {
    value_[static_cast<std::size_t>(std::abs(lit))] = static_cast<std::int8_t>(lit > 0 ? 1 : -1);
    trail_.push_back(lit);
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      const int p = trail_[head_++];
      auto& ws = watches_[code(-p)];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const int ci = ws[i];
        auto& c = clauses_[static_cast<std::size_t>(ci)];
        if (c[0] == -p) std::swap(c[0], c[1]);
        if (lit_value(c[0]) > 0) {
          ws[j++] = ws[i++];
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (lit_value(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[code(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;
          continue;
        }
        ws[j++] = ws[i++];
        if (lit_value(c[0]) < 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          head_ = trail_.size();
          return false;
        }
        ++stats_.propagations;
        enqueue(c[0]);
      }
      ws.resize(j);
    }
    return true;
  }

  void undo_to(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
      const int v = std::abs(trail_.back());
      value_[static_cast<std::size_t>(v)] = 0;
      scan_ = std::min(scan_, v);
      trail_.pop_back();
    }
    head_ = std::min(head_, trail_.size());
  }

  bool backtrack() {
    while (!levels_.empty() && levels_.back().flipped) {
      undo_to(levels_.back().trail_start);
      levels_.pop_back();
    }
    if (levels_.empty()) return false;
    Level& top = levels_.back();
    undo_to(top.trail_start);
    top.flipped = true;
    enqueue(top.var);
    return true;
  }

  int next_unassigned() {
    while (scan_ <= n_ && value_[static_cast<std::size_t>(scan_)] != 0) ++scan_;
    return scan_ <= n_ ? scan_ : 0;
  }

  int n_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> units_;
  bool trivially_unsat_ = false;
  std::vector<int> trail_;
  std::size_t head_ = 0;
  std::vector<Level> levels_;
  int scan_ = 1;
  SolveStats stats_;
};

}  // namespace detail

inline SatResult solve_dpll(const CnfProblem& cnf) { return detail::Dpll(cnf).solve(); }

/// Exhaustive search over the original variables in binary counting order
/// (all false first); gate outputs are computed from their inputs and every
/// clause is checked.
inline SatResult solve_brute(const CnfProblem& cnf, const SolveOptions& opts = {}) {
  const std::vector<int> originals = cnf.original_vars();
  if (originals.size() > opts.brute_max_vars)
    throw ResourceError("brute-force engine limited to " + std::to_string(opts.brute_max_vars) +
                        " variables, problem has " + std::to_string(originals.size()));
  SatResult r;
  std::vector<bool> a(static_cast<std::size_t>(cnf.var_count) + 1, false);
  const std::uint64_t total = std::uint64_t{1} << originals.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t k = 0; k < originals.size(); ++k)
      a[static_cast<std::size_t>(originals[k])] = (mask >> k) & 1U;
    for (const auto& g : cnf.gates) {
      bool v = true;
      for (int l : g.inputs) v = v && (a[static_cast<std::size_t>(std::abs(l))] == (l > 0));
      a[static_cast<std::size_t>(g.output)] = v;
    }
    if (satisfies_all(cnf, a)) {
      r.sat = true;
      r.assignment = a;
      return r;
    }
  }
  return r;
}

inline SatResult solve(const CnfProblem& cnf, Engine engine, const SolveOptions& opts = {}) {
  return engine == Engine::dpll ? solve_dpll(cnf) : solve_brute(cnf, opts);
}

/// The true original atoms of a satisfying assignment.
inline Interpretation model_of(const CnfProblem& cnf, const SatResult& r) {
  Interpretation m;
  if (!r.sat) return m;
  for (const auto& [atom, v] : cnf.var_of_atom)
    if (r.assignment[static_cast<std::size_t>(v)]) m.set(atom, true);
  return m;
}

}  // namespace cexplain
