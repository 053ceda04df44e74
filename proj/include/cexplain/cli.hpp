#pragma once

#include <cexplain/cnf.hpp>
#include <cexplain/error.hpp>
#include <cexplain/ground.hpp>
#include <cexplain/interest.hpp>
#include <cexplain/parse.hpp>
#include <cexplain/print.hpp>
#include <cexplain/provenance.hpp>
#include <cexplain/render.hpp>
#include <cexplain/tree.hpp>
#include <cexplain/verify.hpp>

#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cexplain {

enum class Command { verify, explain, provenance };

inline constexpr int exit_proved = 0;
inline constexpr int exit_counterexample = 1;
inline constexpr int exit_error = 2;

struct RunConfig {
  std::string input_path;
  Command command = Command::verify;
  Engine engine = Engine::dpll;
  Format format = Format::text;
  std::size_t max_ground_nodes = GroundOptions{}.max_nodes;
  std::optional<std::string> provenance_literal;
  bool prune_seen = false;
  bool full_model = false;
  std::optional<std::string> dimacs_path;
  std::vector<std::string> expand_first;
  bool drop_cutoffs = false;
};

namespace detail {

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int run() {
    if ((cfg_.command == Command::provenance) != cfg_.provenance_literal.has_value()) {
      err_ << "error: --literal is required by, and only accepted with, the provenance command\n";
      return exit_error;
    }
    std::ifstream in(cfg_.input_path, std::ios::binary);
    if (!in) {
      err_ << cfg_.input_path << ": error: cannot open file\n";
      return exit_error;
    }
    std::ostringstream text;
    text << in.rdbuf();
    ModelParse parsed = parse_model(text.str(), cfg_.input_path);
    if (!parsed) {
      for (const auto& d : parsed.diagnostics) err_ << cfg_.input_path << ':' << d << '\n';
      return exit_error;
    }
    const Theory& t = *parsed.theory;
    try {
      return dispatch(t);
    } catch (const ResourceError& e) {
      err_ << cfg_.input_path << ": error[resource]: " << e.what() << '\n';
    } catch (const InputError& e) {
      err_ << cfg_.input_path << ": error: " << e.what() << '\n';
    }
    return exit_error;
  }

 private:
  int dispatch(const Theory& t) {
    VerifyOptions vo;
    vo.engine = cfg_.engine;
    vo.ground.max_nodes = cfg_.max_ground_nodes;
    if (cfg_.dimacs_path) write_cnf(t, vo);

    const VerifyResult vr = find_counterexample(t, vo);
    std::optional<Interpretation> model = vr.counterexample;
    if (!model && cfg_.command != Command::verify) model = find_witness(t, vo);
    const int status = vr.proved ? exit_proved : exit_counterexample;

    switch (cfg_.command) {
      case Command::verify:
        print_verdict(t, vr.proved, model);
        return status;
      case Command::explain:
        explain_goal(t, vr.proved, model);
        return status;
      case Command::provenance:
        return provenance(t, model);
    }
    return exit_error;
  }

  void write_cnf(const Theory& t, const VerifyOptions& vo) {
    std::vector<Formula> fs = theory_formulas(t);
    fs.push_back(Formula::negate(*t.goal));
    const CnfProblem cnf = to_cnf(ground(conjoin(std::move(fs)), t, vo.ground));
    std::ofstream f(*cfg_.dimacs_path);
    if (!f) throw InputError("cannot write '" + *cfg_.dimacs_path + "'");
    write_dimacs(f, cnf);
  }

  nlohmann::ordered_json verdict_json(const Theory& t, bool proved, const std::optional<Interpretation>& m) {
    nlohmann::ordered_json j;
    j["result"] = proved ? "proved" : "counterexample";
    if (m) {
      auto atoms = nlohmann::ordered_json::array();
      for (const auto& a : model_atoms(t, *m, cfg_.full_model)) atoms.push_back(print_atom(a));
      j[proved ? "witness" : "model"] = std::move(atoms);
    }
    return j;
  }

  void print_verdict_text(const Theory& t, bool proved, const std::optional<Interpretation>& m,
                          bool list_witness) {
    out_ << (proved ? "PROVED" : "COUNTEREXAMPLE") << '\n';
    if (!m || (proved && !list_witness)) return;
    for (const auto& a : model_atoms(t, *m, cfg_.full_model)) out_ << "  " << print_atom(a) << '\n';
  }

  void print_verdict(const Theory& t, bool proved, const std::optional<Interpretation>& m) {
    if (cfg_.format == Format::json) {
      out_ << verdict_json(t, proved, m).dump(2) << '\n';
      return;
    }
    if (cfg_.format == Format::dot) {
      out_ << "digraph verdict {\n  result [shape=box, label=\"" << (proved ? "PROVED" : "COUNTEREXAMPLE")
           << "\"];\n}\n";
      return;
    }
    print_verdict_text(t, proved, m, false);
  }

  void explain_goal(const Theory& t, bool proved, const std::optional<Interpretation>& m) {
    if (!m) {
      // Proved, and the theory has no model in which to evaluate the goal.
      if (cfg_.format == Format::json)
        out_ << verdict_json(t, proved, m).dump(2) << '\n';
      else if (cfg_.format == Format::text)
        out_ << "PROVED\n(the theory has no model; nothing to explain)\n";
      else
        out_ << "digraph explanation {\n}\n";
      return;
    }
    TreeOptions opts;
    opts.drop_cutoffs = cfg_.drop_cutoffs;
    for (const auto& s : cfg_.expand_first) opts.expand_first.push_back(literal(t, s));
    const ExplanationTree tree = build_tree(t, *m, assign_interest(t), opts);
    switch (cfg_.format) {
      case Format::json: {
        nlohmann::ordered_json j = verdict_json(t, proved, m);
        const nlohmann::ordered_json tj = tree_to_json(tree);
        for (const auto& [k, v] : tj.items()) j[k] = v;
        out_ << j.dump(2) << '\n';
        break;
      }
      case Format::dot:
        out_ << render_tree_dot(tree);
        break;
      case Format::text:
        print_verdict_text(t, proved, m, true);
        out_ << '\n' << render_tree_text(tree);
        break;
    }
  }

  int provenance(const Theory& t, const std::optional<Interpretation>& m) {
    if (!m) throw InputError("the theory has no model; provenances are undefined");
    const Literal l = literal(t, *cfg_.provenance_literal);
    if (!literal_holds(l, *m))
      throw InputError("literal '" + print_literal(l) + "' is false in the model being explained");
    ProvenanceSet ps = provenances(t, theory_formulas(t), *m, l);
    if (cfg_.prune_seen) {
      std::set<Literal> seen;
      for (const auto& n : build_tree(t, *m, assign_interest(t)).nodes) seen.insert(n.literal);
      seen.erase(l);
      ps = prune_seen(ps, seen);
    }
    switch (cfg_.format) {
      case Format::json: {
        nlohmann::ordered_json j;
        j["literal"] = print_literal(l);
        j["provenances"] = provenances_to_json(ps);
        out_ << j.dump(2) << '\n';
        break;
      }
      case Format::dot: {
        out_ << "digraph provenance {\n  node [shape=box];\n";
        out_ << "  lit [label=\"" << detail::dot_escape(print_literal(l)) << "\"];\n";
        for (std::size_t i = 0; i < ps.size(); ++i) {
          out_ << "  p" << i << " [label=\"" << detail::dot_escape(render_provenance(ps[i])) << "\"];\n";
          out_ << "  p" << i << " -> lit;\n";
        }
        out_ << "}\n";
        break;
      }
      case Format::text:
        out_ << "provenances of " << print_literal(l) << ": " << ps.size() << '\n';
        for (const auto& p : ps) out_ << "  " << render_provenance(p) << '\n';
        break;
    }
    return exit_proved;
  }

  Literal literal(const Theory& t, const std::string& text) {
    Parsed<Literal> p = parse_literal(text, t);
    if (!p) {
      std::ostringstream os;
      for (const auto& d : p.diagnostics) os << d << "; ";
      throw InputError("bad literal '" + text + "': " + os.str());
    }
    return *p.value;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace detail

/// Loads, checks and verifies a model, then prints the verdict, the
/// explanation tree or the provenances of one literal. Returns 0 when the
/// goal is proved, 1 when a counterexample exists, 2 on any error. The
/// provenance command returns 0 on success.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::Runner(cfg, out, err).run();
}

}  // namespace cexplain
