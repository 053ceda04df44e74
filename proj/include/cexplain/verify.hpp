#pragma once

#include <cexplain/cnf.hpp>
#include <cexplain/error.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/ground.hpp>
#include <cexplain/solver.hpp>
#include <cexplain/theory.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace cexplain {

struct VerifyOptions {
  Engine engine = Engine::dpll;
  GroundOptions ground;
  SolveOptions solve;
};

struct VerifyResult {
  bool proved = false;
  std::optional<Interpretation> counterexample;
  int variables = 0;
  std::size_t clauses = 0;
  SolveStats stats;
};

/// A satisfying interpretation of the conjunction of `formulas`, all closed
/// over `universe`, or nullopt. Atoms that do not occur after grounding are
/// false.
inline std::optional<Interpretation> find_model(const Theory& universe, std::vector<Formula> formulas,
                                                const VerifyOptions& opts = {},
                                                VerifyResult* info = nullptr) {
  if (formulas.empty()) return Interpretation{};
  const Formula g = ground(conjoin(std::move(formulas)), universe, opts.ground);
  const CnfProblem cnf = to_cnf(g);
  const SatResult r = solve(cnf, opts.engine, opts.solve);
  if (info) {
    info->variables = cnf.var_count;
    info->clauses = cnf.clauses.size();
    info->stats = r.stats;
  }
  if (!r.sat) return std::nullopt;
  return model_of(cnf, r);
}

/// Searches for a model of axioms & definitions & !goal. Definitions enter
/// as universally quantified biconditionals.
inline VerifyResult find_counterexample(const Theory& t, const VerifyOptions& opts = {}) {
  if (!t.goal) throw InputError("theory has no goal");
  std::vector<Formula> fs = theory_formulas(t);
  fs.push_back(Formula::negate(*t.goal));
  VerifyResult out;
  out.counterexample = find_model(t, std::move(fs), opts, &out);
  out.proved = !out.counterexample.has_value();
  return out;
}

/// A model of axioms & definitions & goal, used to explain a proved goal.
inline std::optional<Interpretation> find_witness(const Theory& t, const VerifyOptions& opts = {}) {
  if (!t.goal) throw InputError("theory has no goal");
  std::vector<Formula> fs = theory_formulas(t);
  fs.push_back(*t.goal);
  return find_model(t, std::move(fs), opts);
}

}  // namespace cexplain
