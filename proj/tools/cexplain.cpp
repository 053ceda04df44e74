#include <cexplain/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
  using namespace cexplain;

  CLI::App app{"Prove or refute verification conditions over finite predicate logic and explain counterexamples"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string literal;

  const std::map<std::string, Engine> engines{{"dpll", Engine::dpll}, {"brute", Engine::brute}};
  const std::map<std::string, Format> formats{
      {"text", Format::text}, {"dot", Format::dot}, {"json", Format::json}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input_path, "model file (.vfy)")->required();
    sub->add_option("--engine", cfg.engine, "SAT engine")
        ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case));
    sub->add_option("--format", cfg.format, "output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--max-ground-nodes", cfg.max_ground_nodes, "grounding size limit")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--full-model", cfg.full_model, "list atoms of defined predicates too");
    sub->add_option("--dimacs", cfg.dimacs_path, "also write the CNF of axioms & definitions & !goal");
  };

  CLI::App* verify = app.add_subcommand("verify", "prove the goal or print a counterexample");
  common(verify);

  CLI::App* explain = app.add_subcommand("explain", "verify, then print the explanation tree");
  common(explain);
  explain->add_option("--expand-first", cfg.expand_first, "literals expanded before their siblings");
  explain->add_flag("--drop-cutoffs", cfg.drop_cutoffs, "omit repeated literals from the tree");

  CLI::App* prov = app.add_subcommand("provenance", "print the provenances of a literal");
  common(prov);
  prov->add_option("--literal", literal, "ground literal, e.g. '!safe(rt2131)'")->required();
  prov->add_flag("--prune-seen", cfg.prune_seen, "drop provenances repeating explanation-tree literals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_error;
  }

  if (verify->parsed()) cfg.command = Command::verify;
  if (explain->parsed()) cfg.command = Command::explain;
  if (prov->parsed()) {
    cfg.command = Command::provenance;
    cfg.provenance_literal = literal;
  }
  return run(cfg, std::cout, std::cerr);
}
