#ifndef SPRAYLIE_CLI_COMMANDS_HPP
#define SPRAYLIE_CLI_COMMANDS_HPP

// Subcommands. Each returns a process exit code:
// 0 success, 1 input error, 2 verification mismatch, 3 internal invariant failure.

#include "spraylie/cli/analyze.hpp"

#include <fstream>
#include <ostream>
#include <string>

namespace spraylie::cli {

struct AnalyzeOptions {
  std::string file;
  std::string out;
  std::string format = "md";
  std::uint64_t seed = default_seed;
};

struct TableOptions {
  std::string file;
  std::string set;
  std::string format = "md";
};

struct OracleOptions {
  std::string file;
  std::string selector;
  int points = default_points;
  std::uint64_t seed = default_seed;
};

struct SolveOptions {
  std::string file;
  std::string dict;
  bool isometry = false;
  bool spray_symmetry = false;
  bool horizontal = false;
};

namespace detail {

/// Runs body, mapping library exceptions onto exit codes.
template <class F>
int guarded(std::ostream& err, F&& body)
{
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_input;
  } catch (const InvariantError& e) {
    err << "internal invariant failure: " << e.what() << "\n";
    return exit_invariant;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }
}

} // namespace detail

inline int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err)
{
  return detail::guarded(err, [&] {
    const ProblemFile pf = load_problem_file(o.file);
    const AnalysisReport rep = analyze(pf, o.file, o.seed);
    const std::string text = o.format == "json" ? render_json(rep).dump(2) + "\n" : render_markdown(rep);
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out);
      if (!f) throw InputError("cannot write '" + o.out + "'");
      f << text;
    }
    for (const auto& d : rep.discrepancies)
      if (d.blocking()) err << "mismatch " << d.key << ": expected " << d.expected << ", computed " << d.computed << " (oracle supports " << d.supported << ")\n";
    for (const auto& c : rep.claims)
      if (!c.ok) err << "claim failed: " << c.name << ": " << c.detail << "\n";
    for (const auto& c : rep.invariants)
      if (!c.ok) err << "invariant failed: " << c.name << "\n";
    if (!rep.fatal.empty()) err << "internal invariant failure: " << rep.fatal << "\n";
    return rep.exit_code();
  });
}

inline int cmd_table(const TableOptions& o, std::ostream& out, std::ostream& err)
{
  return detail::guarded(err, [&] {
    const ProblemFile pf = load_problem_file(o.file);
    const NamedSet& set = pf.set(o.set);
    StructureConstants sc;
    try {
      sc = structure_constants_from_fields<BaseField>(set.fields, set.members, bracket_base);
    } catch (const DomainError& e) {
      err << e.what() << "\n";
      return int(exit_mismatch);
    }
    out << (o.format == "csv" ? table_csv(sc) : table_markdown(sc));
    return int(exit_ok);
  });
}

inline int cmd_oracle(const OracleOptions& o, std::ostream& out, std::ostream& err)
{
  return detail::guarded(err, [&] {
    const ProblemFile pf = load_problem_file(o.file);
    const Geometry geo = Geometry::from_metric(pf.metric);
    const OracleResult r = run_oracle(pf, geo, o.selector, o.points, o.seed);
    out << "selector: " << r.selector << "\nseed: " << r.seed << "\npoints: " << r.points << "\ncomparisons: " << r.comparisons
        << "\nmax absolute deviation: " << r.max_abs << "\nmax relative deviation: " << r.max_rel << "\ntolerance: " << r.tolerance
        << "\nresult: " << (r.pass() ? "pass" : "FAIL") << "\n";
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    return r.pass() ? int(exit_ok) : int(exit_mismatch);
  });
}

inline int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err)
{
  return detail::guarded(err, [&] {
    const ProblemFile pf = load_problem_file(o.file);
    const NamedSet& dict = pf.set(o.dict);
    ConditionSet cs;
    if (o.spray_symmetry) cs.add(Condition::spray_symmetry);
    if (o.isometry) cs.add(Condition::isometry);
    if (o.horizontal) cs.add(Condition::horizontality);
    if (cs.empty()) throw InputError("select at least one of --isometry, --spray-symmetry, --horizontal");
    const Geometry geo = Geometry::from_metric(pf.metric);
    const SpanSolution sol = solve_in_span(dict.fields, cs, geo);
    StructureConstants names(dict.members);
    out << "dimension: " << sol.dim() << "\n";
    for (std::size_t k = 0; k < sol.dim(); ++k) {
      out << "v" << k + 1 << " = " << names.label(sol.coefficients[k]) << "\n   = [";
      for (int i = 0; i < sol.fields[k].dim(); ++i) out << (i ? ", " : "") << sol.fields[k][i].str();
      out << "]\n";
    }
    return int(exit_ok);
  });
}

} // namespace spraylie::cli

#endif // SPRAYLIE_CLI_COMMANDS_HPP
