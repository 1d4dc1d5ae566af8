// Command-line front end: analyze, table, oracle, solve.

#include "spraylie/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
  namespace sc = spraylie::cli;
  CLI::App app{"Sprays, symmetries and the Lie algebras they generate"};
  app.require_subcommand(1);

  sc::AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "run the full pipeline and write a report");
  analyze->add_option("file", an.file, "problem file")->required();
  analyze->add_option("--out", an.out, "output path (default: stdout)");
  analyze->add_option("--format", an.format, "md or json")->check(CLI::IsMember({"md", "json"}));
  analyze->add_option("--seed", an.seed, "oracle seed");

  sc::TableOptions tb;
  auto* table = app.add_subcommand("table", "print the multiplication table of a generator set");
  table->add_option("file", tb.file, "problem file")->required();
  table->add_option("--set", tb.set, "generator set name")->required();
  table->add_option("--format", tb.format, "md or csv")->check(CLI::IsMember({"md", "csv"}));

  sc::OracleOptions orc;
  auto* oracle = app.add_subcommand("oracle", "numeric check of one identity");
  oracle->add_option("file", orc.file, "problem file")->required();
  oracle->add_option("--check", orc.selector, "selector, e.g. \"table-cell e1 e3\"")->required();
  oracle->add_option("--points", orc.points, "number of sample points")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", orc.seed, "random seed");

  sc::SolveOptions so;
  auto* solve = app.add_subcommand("solve", "find the combinations of a dictionary satisfying conditions");
  solve->add_option("file", so.file, "problem file")->required();
  solve->add_option("--dict", so.dict, "dictionary (a set name)")->required();
  solve->add_flag("--isometry", so.isometry, "lift annihilates the energy and commutes with the spray");
  solve->add_flag("--spray-symmetry", so.spray_symmetry, "lift commutes with the spray");
  solve->add_flag("--horizontal", so.horizontal, "lift is horizontal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sc::exit_input;
  }

  if (analyze->parsed()) return sc::cmd_analyze(an, std::cout, std::cerr);
  if (table->parsed()) return sc::cmd_table(tb, std::cout, std::cerr);
  if (oracle->parsed()) return sc::cmd_oracle(orc, std::cout, std::cerr);
  return sc::cmd_solve(so, std::cout, std::cerr);
}
