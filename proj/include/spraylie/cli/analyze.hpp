#ifndef SPRAYLIE_CLI_ANALYZE_HPP
#define SPRAYLIE_CLI_ANALYZE_HPP

// Full analysis of a problem file: pipeline, structural invariants, membership
// verdicts, structure constants, algebra analysis, claims and discrepancies.

#include "spraylie/cli/oracle.hpp"
#include "spraylie/cli/problem.hpp"
#include "spraylie/fields.hpp"
#include "spraylie/liealg.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace spraylie::cli {

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_mismatch = 2, exit_invariant = 3 };

/// One verified statement and how it was established.
struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
  std::string provenance; ///< "structural", "exact linear algebra" or a numeric oracle description
};

struct Discrepancy {
  std::string key;
  std::string expected;
  std::string computed;
  double expected_deviation = 0; ///< numeric oracle against the expected value
  double computed_deviation = 0; ///< numeric oracle against the computed value
  std::string supported;         ///< "computation", "expected" or "inconclusive"
  bool documented = false;
  std::string note;

  bool blocking() const { return !documented || supported != "computation"; }
};

struct FieldVerdicts {
  std::string name;
  std::vector<MembershipVerdict> verdicts;
};

struct SetAnalysis {
  std::string name;
  std::vector<std::string> members;
  std::vector<FieldVerdicts> membership;
  std::optional<StructureConstants> sc;
  std::string closure_error;
  bool semisimple = false;
  bool simple = false;
  std::string killing_determinant;
  std::size_t derived_dim = 0;
  std::size_t center_dim = 0;
  std::vector<std::string> radical;
  std::vector<std::string> levi;
  std::vector<std::vector<std::string>> abelian_coordinate_ideals;
  std::size_t derivation_dim = 0;
  std::size_t inner_dim = 0;
  std::size_t outer_dim = 0;
};

struct AnalysisReport {
  std::string title;
  std::string source;
  int dim = 0;
  std::uint64_t seed = default_seed;
  int points = default_points;
  std::vector<std::string> spray;
  std::vector<std::string> gamma; ///< nonzero Gamma^j_i as "Gamma^j_i = ..."
  bool curvature_zero = false;
  bool potential_zero = false;
  std::vector<int> nullity_per_point;
  std::size_t constant_nullity_dim = 0;
  std::vector<Check> invariants;
  std::vector<SetAnalysis> sets;
  std::vector<Check> claims;
  std::vector<Discrepancy> discrepancies;
  std::vector<std::string> notes;
  std::string fatal; ///< internal invariant failure that aborted the analysis

  int exit_code() const
  {
    if (!fatal.empty()) return exit_invariant;
    for (const auto& c : invariants)
      if (!c.ok) return exit_invariant;
    for (const auto& c : claims)
      if (!c.ok) return exit_mismatch;
    for (const auto& d : discrepancies)
      if (d.blocking()) return exit_mismatch;
    return exit_ok;
  }
};

// ---------------------------------------------------------------------------

namespace detail {

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::vector<std::string> labels(const StructureConstants& sc, const Subspace& s)
{
  std::vector<std::string> out;
  for (const auto& v : s.basis()) out.push_back(sc.label(v));
  return out;
}

inline Subspace span_of(const NamedSet& set, const json& list)
{
  std::vector<RationalVector> vs;
  for (const auto& t : list) vs.push_back(parse_combination(t.get<std::string>(), set.members));
  return Subspace::span(set.members.size(), vs);
}

/// Rank of the span of base fields, by coefficient matching.
inline std::size_t field_rank(const std::vector<BaseField>& fs)
{
  if (fs.empty()) return 0;
  std::vector<FlatVector> cols;
  for (const auto& f : fs) cols.push_back(flatten(f));
  return rank(coefficient_matrix(cols));
}

inline std::string expr_str(const TMField& X) { return X.str(); }

inline Discrepancy discrepancy(std::string key, std::string expected, std::string computed)
{
  Discrepancy d;
  d.key = std::move(key);
  d.expected = std::move(expected);
  d.computed = std::move(computed);
  return d;
}

inline std::string supported_side(double expected_dev, double computed_dev)
{
  const bool e = expected_dev <= fd_tolerance, c = computed_dev <= fd_tolerance;
  if (c && !e) return "computation";
  if (e && !c) return "expected";
  return "inconclusive";
}

inline void add_structural(AnalysisReport& rep, std::string name, bool ok, std::string detail = {})
{
  rep.invariants.push_back({std::move(name), ok, std::move(detail), "structural"});
}

inline void pipeline_invariants(AnalysisReport& rep, const Geometry& geo)
{
  const int n = geo.dim();
  const auto& c = geo.connection;

  bool euler = true;
  for (int k = 0; k < n; ++k) {
    Expr e;
    for (int i = 0; i < n; ++i) e += Expr::y(i + 1) * geo.spray[k].diff(Variable::y(i + 1));
    euler = euler && e == geo.spray[k].scaled(Rational(2));
  }
  add_structural(rep, "Euler homogeneity y^i dG^k/dy^i = 2 G^k", euler);

  bool torsion = true, contraction = true;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Expr e;
      for (int l = 0; l < n; ++l) {
        torsion = torsion && c.gamma2(j, i, l) == c.gamma2(j, l, i);
        e += c.gamma2(j, i, l) * Expr::y(l + 1);
      }
      contraction = contraction && e == c.gamma1(j, i);
    }
  add_structural(rep, "torsion-free Gamma^j_{il} = Gamma^j_{li}", torsion);
  add_structural(rep, "Gamma^j_i = Gamma^j_{il} y^l", contraction);

  bool anti = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) anti = anti && geo.curvature.r1(k, i, j) == -geo.curvature.r1(k, j, i);
  add_structural(rep, "curvature antisymmetry R^k_{ij} = -R^k_{ji}", anti);

  const Projectors pr = projectors(c);
  const VectorOneForm I = VectorOneForm::identity(n);
  add_structural(rep, "h^2 = h", pr.h * pr.h == pr.h);
  add_structural(rep, "v^2 = v", pr.v * pr.v == pr.v);
  add_structural(rep, "hv = vh = 0", (pr.h * pr.v).is_zero() && (pr.v * pr.h).is_zero());
  add_structural(rep, "h + v = I", pr.h + pr.v == I);

  const VectorOneForm J = tangent_structure(n);
  const TMField C = liouville(n);
  const TMField S = spray_field(geo.spray);
  add_structural(rep, "J^2 = 0 and J(C) = 0", (J * J).is_zero() && J.apply(C).is_zero());
  add_structural(rep, "[C, S] = S", bracket_tm(C, S) == S);
  add_structural(rep, "[C, J] = -J", lie_derivative_oneform(C, J) == J.scaled(Rational(-1)));
  const VectorOneForm Gamma = connection_form(c);
  add_structural(rep, "[J, S] = Gamma = 2h - I", lie_derivative_oneform(S, J).scaled(Rational(-1)) == Gamma);
  add_structural(rep, "Gamma^2 = I", Gamma * Gamma == I);

  const VectorTwoForm R = semibasic_form(geo.curvature);
  add_structural(rep, "R = 1/2 [h, h]", nijenhuis(pr.h) == R);
  add_structural(rep, "R = 1/8 [Gamma, Gamma]", fn_bracket(Gamma, Gamma).scaled(Rational(1, 8)) == R);
  add_structural(rep, "[J, J] = 0", fn_bracket(J, J).is_zero());
  const bool pot_zero = curvature_potential(geo.spray, geo.curvature).is_zero();
  add_structural(rep, "potential R° zero exactly when R zero", pot_zero == geo.curvature.is_zero());
}

inline void compare_pipeline(AnalysisReport& rep, const ProblemFile& pf, const Geometry& geo, std::span<const Point> pts)
{
  const int n = geo.dim();
  auto documented = [&](Discrepancy& d) {
    const auto it = pf.known_discrepancies.find(d.key);
    if (it != pf.known_discrepancies.end()) {
      d.documented = true;
      d.note = it->second;
    }
  };

  if (pf.expected_spray) {
    for (int k = 0; k < n; ++k) {
      const Expr& want = (*pf.expected_spray)[k];
      if (want == geo.spray[k]) continue;
      Discrepancy d = discrepancy("spray:" + std::to_string(k + 1), want.str(), geo.spray[k].str());
      for (const auto& p : pts) {
        const auto chr = numeric_christoffel(geo.metric, p);
        double g = 0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            g += 0.5 * chr[static_cast<std::size_t>((k * n + i) * n + j)] * to_double(p.at(Variable::y(i + 1))) * to_double(p.at(Variable::y(j + 1)));
        d.expected_deviation = std::max(d.expected_deviation, relative_deviation(want.eval(p), g));
        d.computed_deviation = std::max(d.computed_deviation, relative_deviation(geo.spray[k].eval(p), g));
      }
      d.supported = supported_side(d.expected_deviation, d.computed_deviation);
      documented(d);
      rep.discrepancies.push_back(std::move(d));
    }
  }

  if (pf.expected_gamma) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto it = pf.expected_gamma->find({j + 1, i + 1});
        const Expr want = it == pf.expected_gamma->end() ? Expr() : it->second;
        const Expr& got = geo.connection.gamma1(j, i);
        if (want == got) continue;
        Discrepancy d = discrepancy("gamma:" + std::to_string(j + 1) + "," + std::to_string(i + 1), want.str(), got.str());
        for (const auto& p : pts) {
          const double N = numeric_connection(geo.metric, p)[static_cast<std::size_t>(j * n + i)];
          d.expected_deviation = std::max(d.expected_deviation, relative_deviation(want.eval(p), N));
          d.computed_deviation = std::max(d.computed_deviation, relative_deviation(got.eval(p), N));
        }
        d.supported = supported_side(d.expected_deviation, d.computed_deviation);
        documented(d);
        rep.discrepancies.push_back(std::move(d));
      }
  }

  if (pf.horizontal_frame) {
    const VectorOneForm h = projectors(geo.connection).h;
    for (int i = 0; i < n; ++i) {
      const TMField& want = (*pf.horizontal_frame)[i];
      const TMField got = h.image(i);
      if (want == got) continue;
      Discrepancy d = discrepancy("frame:" + std::to_string(i + 1), want.str(), got.str());
      for (const auto& p : pts) {
        const auto num = numeric_horizontal(geo.metric, p, i);
        for (int s = 0; s < 2 * n; ++s) {
          d.expected_deviation = std::max(d.expected_deviation, relative_deviation(want[s].eval(p), num[static_cast<std::size_t>(s)]));
          d.computed_deviation = std::max(d.computed_deviation, relative_deviation(got[s].eval(p), num[static_cast<std::size_t>(s)]));
        }
      }
      d.supported = supported_side(d.expected_deviation, d.computed_deviation);
      documented(d);
      rep.discrepancies.push_back(std::move(d));
    }
  }
}

inline SetAnalysis analyze_set(AnalysisReport& rep, const ProblemFile& pf, const NamedSet& set, const Geometry& geo)
{
  SetAnalysis sa;
  sa.name = set.name;
  sa.members = set.members;
  for (std::size_t a = 0; a < set.fields.size(); ++a) {
    const BaseField& X = set.fields[a];
    FieldVerdicts fv{set.members[a], {}};
    const auto as = in_AS(X, geo.spray);
    const auto ag = in_AGamma(X, geo.connection);
    const auto iso = in_Ag(X, geo.metric, geo.spray);
    const auto hor = is_horizontal(X, geo.connection);
    const auto nul = in_nullity(X, geo.curvature);
    fv.verdicts = {as, ag, iso, hor, nul};
    const std::string who = set.name + "." + set.members[a];
    if (as.holds != ag.holds) add_structural(rep, who + ": spray symmetry agrees with affine", false);
    if (iso.holds && !ag.holds) add_structural(rep, who + ": isometry implies affine", false);
    if (hor.holds && !nul.holds) add_structural(rep, who + ": horizontal implies curvature nullity", false);
    sa.membership.push_back(std::move(fv));
  }

  try {
    sa.sc = structure_constants_from_fields<BaseField>(set.fields, set.members, bracket_base);
  } catch (const DomainError& e) {
    sa.closure_error = e.what();
    return sa;
  }
  const StructureConstants& sc = *sa.sc;
  const std::size_t m = sc.dim();

  add_structural(rep, set.name + ": structure constants antisymmetric", sc.is_antisymmetric());
  const JacobiVerdict jv = jacobi_check(sc);
  add_structural(rep, set.name + ": Jacobi identity", jv.holds,
                 jv.holds ? "" : "fails at (" + sc.names()[jv.i] + ", " + sc.names()[jv.j] + ", " + sc.names()[jv.k] + ") component " + sc.names()[jv.s]);

  const KillingMatrix K = killing_form(sc);
  bool adinv = true;
  for (std::size_t x = 0; x < m && adinv; ++x)
    for (std::size_t y = 0; y < m && adinv; ++y)
      for (std::size_t z = 0; z < m && adinv; ++z) {
        const RationalVector xy = sc.bracket_basis(x, y), xz = sc.bracket_basis(x, z);
        adinv = dot(K.matrix.apply(xy), unit_vector(m, z)) + dot(K.matrix.apply(unit_vector(m, y)), xz) == 0;
      }
  add_structural(rep, set.name + ": Killing form ad-invariant", adinv);

  const Rational det = K.determinant();
  sa.killing_determinant = to_string(det);
  sa.semisimple = !det.is_zero();
  const Subspace der = derived_subalgebra(sc);
  sa.derived_dim = der.dim();
  std::vector<BaseField> brs;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) brs.push_back(bracket_base(set.fields[a], set.fields[b]));
  add_structural(rep, set.name + ": derived algebra from constants matches re-bracketed fields", field_rank(brs) == der.dim(),
                 std::to_string(der.dim()));
  sa.center_dim = center(sc).dim();
  sa.simple = is_simple(sc);

  const LeviResult lr = levi_decomposition(sc);
  sa.radical = labels(sc, lr.radical);
  sa.levi = labels(sc, lr.levi);
  if (m <= coordinate_search_limit)
    for (const auto& s : find_abelian_ideals_coordinate(sc)) sa.abelian_coordinate_ideals.push_back(labels(sc, s));
  const DerivationSpace ds = derivations(sc);
  for (const auto& D : ds.basis)
    if (!is_derivation(sc, D)) add_structural(rep, set.name + ": derivation basis satisfies the derivation identity", false);
  sa.derivation_dim = ds.dim();
  sa.inner_dim = ds.inner_dim();
  sa.outer_dim = ds.outer_dim();

  const auto it = pf.expected_tables.find(set.name);
  if (it != pf.expected_tables.end()) {
    const auto pts = sample_points(geo.dim(), default_points, rep.seed);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const RationalVector want = parse_combination(it->second[a][b], set.members);
        const RationalVector got = sc.bracket_basis(a, b);
        if (want == got) continue;
        Discrepancy d = discrepancy("table:" + set.name + ":" + set.members[a] + "," + set.members[b], sc.label(want), sc.label(got));
        d.expected_deviation = cell_evidence(set, a, b, want, pts).fd_vs_cell;
        d.computed_deviation = cell_evidence(set, a, b, got, pts).fd_vs_cell;
        d.supported = supported_side(d.expected_deviation, d.computed_deviation);
        const auto kd = pf.known_discrepancies.find(d.key);
        if (kd != pf.known_discrepancies.end()) {
          d.documented = true;
          d.note = kd->second;
        }
        rep.discrepancies.push_back(std::move(d));
      }
  }
  return sa;
}

inline ConditionSet conditions_from(const json& list)
{
  ConditionSet cs;
  for (const auto& c : list) {
    const std::string s = c.get<std::string>();
    if (s == "spray-symmetry") cs.add(Condition::spray_symmetry);
    else if (s == "isometry") cs.add(Condition::isometry);
    else if (s == "horizontality" || s == "horizontal") cs.add(Condition::horizontality);
    else throw InputError("unknown condition '" + s + "'");
  }
  return cs;
}

inline const SetAnalysis& set_analysis(const AnalysisReport& rep, const std::string& name)
{
  for (const auto& s : rep.sets)
    if (s.name == name) return s;
  throw InputError("claim refers to unknown set '" + name + "'");
}

inline Check evaluate_claim(const AnalysisReport& rep, const ProblemFile& pf, const Geometry& geo, const Claim& cl)
{
  const json& j = cl.spec;
  const std::string& k = cl.kind;
  Check c{k + (cl.set.empty() ? "" : " [" + cl.set + "]"), true, {}, "exact linear algebra"};

  auto need_sc = [&]() -> const StructureConstants& {
    const SetAnalysis& sa = set_analysis(rep, cl.set);
    if (!sa.sc) throw InputError("claim '" + k + "' needs set '" + cl.set + "' to close: " + sa.closure_error);
    return *sa.sc;
  };

  if (k == "membership") {
    c.provenance = "structural";
    const SetAnalysis& sa = set_analysis(rep, cl.set);
    std::vector<std::string> preds;
    for (const auto& p : j.at("predicates")) preds.push_back(p.get<std::string>());
    for (const auto& fv : sa.membership)
      for (const auto& v : fv.verdicts)
        if (std::find(preds.begin(), preds.end(), v.predicate) != preds.end() && !v.holds) {
          c.ok = false;
          c.detail += fv.name + " fails " + v.predicate + " (" + v.location + ": " + (v.residual ? v.residual->str() : "") + "); ";
        }
    if (c.ok) c.detail = "all members pass";
  } else if (k == "curvature-zero") {
    c.provenance = "structural";
    c.ok = geo.curvature.is_zero() == j.at("expect").get<bool>();
    c.detail = "curvature zero: " + yes(geo.curvature.is_zero());
  } else if (k == "nullity") {
    const int want = j.at("expect").get<int>();
    int minimum = geo.dim();
    for (int v : rep.nullity_per_point) minimum = std::min(minimum, v);
    c.ok = minimum == want;
    c.detail = "numeric nullity " + std::to_string(minimum) + ", expected " + std::to_string(want);
    c.provenance = "numeric rank at " + std::to_string(rep.points) + " points, seed " + std::to_string(rep.seed);
  } else if (k == "verdict") {
    const SetAnalysis& sa = set_analysis(rep, cl.set);
    need_sc();
    const std::string got = sa.simple ? "simple" : sa.semisimple ? "semisimple-not-simple" : "not-semisimple";
    c.ok = got == j.at("expect").get<std::string>();
    c.detail = got;
  } else if (k == "derived") {
    const StructureConstants& sc = need_sc();
    const bool whole = derived_subalgebra(sc).is_whole();
    c.ok = whole == j.at("whole").get<bool>();
    c.detail = std::string("derived algebra ") + (whole ? "is" : "is not") + " the whole algebra";
  } else if (k == "radical") {
    const StructureConstants& sc = need_sc();
    const Subspace want = span_of(pf.set(cl.set), j.at("span"));
    const Subspace got = radical(sc);
    c.ok = want == got;
    c.detail = "computed radical dim " + std::to_string(got.dim());
  } else if (k == "levi-complement") {
    const StructureConstants& sc = need_sc();
    const Subspace s = span_of(pf.set(cl.set), j.at("span"));
    const Subspace rad = radical(sc);
    const bool complement = s.dim() + rad.dim() == sc.dim() && intersect(s, rad).is_zero();
    const bool sub = is_subalgebra(sc, s);
    bool semisimple = false, simple = false;
    if (sub) {
      const StructureConstants r = sc.restricted(s);
      semisimple = is_semisimple(r);
      simple = is_simple(r);
    }
    c.ok = complement && sub && semisimple && (!j.value("simple", false) || simple);
    c.detail = "complement " + yes(complement) + ", subalgebra " + yes(sub) + ", semisimple " + yes(semisimple) + ", simple " + yes(simple);
  } else if (k == "abelian-ideal") {
    const StructureConstants& sc = need_sc();
    c.ok = abelian_ideal_check(sc, span_of(pf.set(cl.set), j.at("span")));
    c.detail = c.ok ? "ideal and abelian" : "not an abelian ideal";
  } else if (k == "derivations") {
    const SetAnalysis& sa = set_analysis(rep, cl.set);
    need_sc();
    if (j.contains("outer_dim")) c.ok = sa.outer_dim == j["outer_dim"].get<std::size_t>();
    if (j.contains("outer_dim_min")) c.ok = c.ok && sa.outer_dim >= j["outer_dim_min"].get<std::size_t>();
    c.detail = "Der " + std::to_string(sa.derivation_dim) + ", inner " + std::to_string(sa.inner_dim) + ", outer " + std::to_string(sa.outer_dim);
  } else if (k == "outer-derivation") {
    const StructureConstants& sc = need_sc();
    const NamedSet& set = pf.set(cl.set);
    RationalMatrix D(sc.dim(), sc.dim());
    for (const auto& [from, to] : j.at("map").items()) {
      const std::size_t col = set.index_of(from);
      const RationalVector img = parse_combination(to.get<std::string>(), set.members);
      for (std::size_t r = 0; r < sc.dim(); ++r) D(r, col) = img[r];
    }
    const bool der = is_derivation(sc, D);
    const bool inner = is_inner_derivation(sc, D);
    c.ok = der && !inner;
    c.detail = "derivation " + yes(der) + ", inner " + yes(inner);
  } else if (k == "classify") {
    const StructureConstants& sc = need_sc();
    const Subspace s = span_of(pf.set(cl.set), j.at("span"));
    if (!is_subalgebra(sc, s)) {
      c.ok = false;
      c.detail = "span is not closed under the bracket";
    } else {
      const std::string got = to_string(classify_3dim_simple(sc, s));
      c.ok = got == j.at("type").get<std::string>();
      c.detail = got;
    }
  } else if (k == "solve") {
    const NamedSet& dict = pf.set(j.at("dict").get<std::string>());
    const SpanSolution sol = solve_in_span(dict.fields, conditions_from(j.at("conditions")), geo);
    c.ok = sol.dim() == j.at("dim").get<std::size_t>();
    c.detail = "solution dimension " + std::to_string(sol.dim());
    if (j.contains("span_of")) {
      const NamedSet& target = pf.set(j["span_of"].get<std::string>());
      std::vector<BaseField> both = sol.fields;
      both.insert(both.end(), target.fields.begin(), target.fields.end());
      const bool same = field_rank(both) == sol.dim() && field_rank(target.fields) == sol.dim();
      c.ok = c.ok && same;
      c.detail += same ? ", equals span of " + target.name : ", differs from span of " + target.name;
    }
  } else if (k == "horizontal") {
    c.provenance = "structural";
    std::vector<BaseField> fs;
    for (const auto& f : j.at("fields")) {
      const std::string name = f.get<std::string>();
      const BaseField& X = pf.field(name);
      fs.push_back(X);
      if (!is_horizontal(X, geo.connection)) {
        c.ok = false;
        c.detail += name + " not horizontal; ";
      }
      if (!in_nullity(X, geo.curvature)) {
        c.ok = false;
        c.detail += name + " not in curvature nullity; ";
      }
    }
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = a + 1; b < fs.size(); ++b)
        if (!bracket_base(fs[a], fs[b]).is_zero()) {
          c.ok = false;
          c.detail += "brackets do not vanish; ";
        }
    if (c.ok) c.detail = "horizontal, in the curvature nullity, pairwise commuting";
  } else {
    throw InputError("unknown claim kind '" + k + "'");
  }
  return c;
}

} // namespace detail

/// Runs every stage; exceptions other than input errors are recorded as internal failures.
inline AnalysisReport analyze(const ProblemFile& pf, std::string source = {}, std::uint64_t seed = default_seed)
{
  AnalysisReport rep;
  rep.title = pf.title;
  rep.source = std::move(source);
  rep.dim = pf.dim;
  rep.seed = seed;
  try {
    const Geometry geo = Geometry::from_metric(pf.metric);
    const int n = geo.dim();
    for (int k = 0; k < n; ++k) rep.spray.push_back("G^" + std::to_string(k + 1) + " = " + geo.spray[k].str());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (!geo.connection.gamma1(j, i).is_zero())
          rep.gamma.push_back("Gamma^" + std::to_string(j + 1) + "_" + std::to_string(i + 1) + " = " + geo.connection.gamma1(j, i).str());
    rep.curvature_zero = geo.curvature.is_zero();
    rep.potential_zero = curvature_potential(geo.spray, geo.curvature).is_zero();
    const auto pts = sample_points(n, rep.points, seed);
    rep.nullity_per_point = nullity_rank_numeric(geo.curvature, pts).nullities();
    rep.constant_nullity_dim = constant_nullity_basis(geo.curvature).size();

    detail::pipeline_invariants(rep, geo);
    detail::compare_pipeline(rep, pf, geo, pts);
    for (const auto& set : pf.sets) rep.sets.push_back(detail::analyze_set(rep, pf, set, geo));
    for (const auto& cl : pf.claims) rep.claims.push_back(detail::evaluate_claim(rep, pf, geo, cl));

    for (const auto& [key, note] : pf.known_discrepancies) {
      bool seen = false;
      for (const auto& d : rep.discrepancies) seen = seen || d.key == key;
      if (!seen) rep.notes.push_back("documented discrepancy '" + key + "' was not observed");
    }
  } catch (const InputError&) {
    throw;
  } catch (const InvariantError& e) {
    rep.fatal = e.what();
  }
  return rep;
}

// ---------------------------------------------------------------------------

inline std::string table_csv(const StructureConstants& sc)
{
  std::string s = "[.,.]";
  for (const auto& n : sc.names()) s += "," + n;
  s += "\n";
  for (std::size_t a = 0; a < sc.dim(); ++a) {
    s += sc.names()[a];
    for (std::size_t b = 0; b < sc.dim(); ++b) s += "," + sc.label(sc.bracket_basis(a, b));
    s += "\n";
  }
  return s;
}

inline std::string table_markdown(const StructureConstants& sc)
{
  std::string s = "| [.,.] |";
  for (const auto& n : sc.names()) s += " " + n + " |";
  s += "\n|---|";
  for (std::size_t b = 0; b < sc.dim(); ++b) s += "---|";
  s += "\n";
  for (std::size_t a = 0; a < sc.dim(); ++a) {
    s += "| " + sc.names()[a] + " |";
    for (std::size_t b = 0; b < sc.dim(); ++b) s += " " + sc.label(sc.bracket_basis(a, b)) + " |";
    s += "\n";
  }
  return s;
}

inline std::string render_markdown(const AnalysisReport& rep)
{
  std::ostringstream o;
  o << "# Analysis" << (rep.title.empty() ? "" : ": " + rep.title) << "\n\n";
  if (!rep.source.empty()) o << "Source: `" << rep.source << "`  \n";
  o << "Dimension: " << rep.dim << "  \nOracle seed: " << rep.seed << ", points: " << rep.points << "\n\n";
  if (!rep.fatal.empty()) o << "**Internal invariant failure:** " << rep.fatal << "\n\n";

  o << "## Spray\n\n";
  for (const auto& s : rep.spray) o << "- " << s << "\n";
  o << "\n## Connection (nonzero coefficients)\n\n";
  for (const auto& s : rep.gamma) o << "- " << s << "\n";
  o << "\n## Curvature\n\n- zero: " << detail::yes(rep.curvature_zero) << "\n- potential zero: " << detail::yes(rep.potential_zero)
    << "\n- numeric nullity per point:";
  for (int v : rep.nullity_per_point) o << " " << v;
  o << "\n- constant-coefficient nullity dimension (exact): " << rep.constant_nullity_dim << "\n\n";

  o << "## Invariants\n\n";
  for (const auto& c : rep.invariants)
    o << "- [" << (c.ok ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << " - " << c.provenance << "\n";

  for (const auto& sa : rep.sets) {
    o << "\n## Set " << sa.name << "\n\n### Membership\n\n| field | spray-symmetry | affine | isometry | horizontal | curvature-nullity |\n|---|---|---|---|---|---|\n";
    for (const auto& fv : sa.membership) {
      o << "| " << fv.name << " |";
      for (const auto& v : fv.verdicts) o << " " << detail::yes(v.holds) << " |";
      o << "\n";
    }
    if (!sa.sc) {
      o << "\nNot closed: " << sa.closure_error << "\n";
      continue;
    }
    o << "\n### Multiplication table\n\n```csv\n" << table_csv(*sa.sc) << "```\n\n### Algebra\n\n";
    o << "- dimension: " << sa.members.size() << "\n- Killing determinant: " << sa.killing_determinant << "\n- semisimple: " << detail::yes(sa.semisimple)
      << "\n- simple: " << detail::yes(sa.simple) << "\n- derived dimension: " << sa.derived_dim << "\n- center dimension: " << sa.center_dim << "\n";
    auto list = [&](const std::vector<std::string>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
      return s + "}";
    };
    o << "- radical: " << list(sa.radical) << "\n- Levi factor: " << list(sa.levi) << "\n- coordinate abelian ideals:";
    if (sa.abelian_coordinate_ideals.empty()) o << " none";
    for (const auto& id : sa.abelian_coordinate_ideals) o << " " << list(id);
    o << "\n- derivations: " << sa.derivation_dim << " (inner " << sa.inner_dim << ", outer " << sa.outer_dim << ")\n";
  }

  if (!rep.claims.empty()) {
    o << "\n## Claims\n\n";
    for (const auto& c : rep.claims) o << "- [" << (c.ok ? "ok" : "FAIL") << "] " << c.name << ": " << c.detail << " - " << c.provenance << "\n";
  }

  o << "\n## Discrepancies\n\n";
  if (rep.discrepancies.empty()) o << "none\n";
  for (const auto& d : rep.discrepancies) {
    o << "- `" << d.key << "`" << (d.documented ? " (documented)" : " (UNDOCUMENTED)") << ": expected `" << d.expected << "`, computed `"
      << d.computed << "`; oracle deviation expected " << d.expected_deviation << ", computed " << d.computed_deviation << "; supports "
      << d.supported;
    if (!d.note.empty()) o << "; " << d.note;
    o << "\n";
  }
  for (const auto& n : rep.notes) o << "\nNote: " << n << "\n";
  o << "\nExit status: " << rep.exit_code() << "\n";
  return o.str();
}

inline json render_json(const AnalysisReport& rep)
{
  json j;
  j["title"] = rep.title;
  j["source"] = rep.source;
  j["dim"] = rep.dim;
  j["oracle"] = {{"seed", rep.seed}, {"points", rep.points}};
  j["spray"] = rep.spray;
  j["connection"] = rep.gamma;
  j["curvature"] = {{"zero", rep.curvature_zero},
                    {"potential_zero", rep.potential_zero},
                    {"nullity_per_point", rep.nullity_per_point},
                    {"constant_nullity_dim", rep.constant_nullity_dim}};
  j["invariants"] = json::array();
  for (const auto& c : rep.invariants)
    j["invariants"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}, {"provenance", c.provenance}});
  j["sets"] = json::array();
  for (const auto& sa : rep.sets) {
    json s;
    s["name"] = sa.name;
    s["members"] = sa.members;
    s["membership"] = json::array();
    for (const auto& fv : sa.membership) {
      json f{{"field", fv.name}};
      for (const auto& v : fv.verdicts) {
        json r{{"holds", v.holds}};
        if (v.residual) r["residual"] = v.residual->str(), r["location"] = v.location;
        f[v.predicate] = r;
      }
      s["membership"].push_back(f);
    }
    if (sa.sc) {
      json t = json::array();
      for (std::size_t a = 0; a < sa.sc->dim(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < sa.sc->dim(); ++b) row.push_back(sa.sc->label(sa.sc->bracket_basis(a, b)));
        t.push_back(row);
      }
      s["table"] = t;
      s["killing_determinant"] = sa.killing_determinant;
      s["semisimple"] = sa.semisimple;
      s["simple"] = sa.simple;
      s["derived_dim"] = sa.derived_dim;
      s["center_dim"] = sa.center_dim;
      s["radical"] = sa.radical;
      s["levi"] = sa.levi;
      s["abelian_coordinate_ideals"] = sa.abelian_coordinate_ideals;
      s["derivations"] = {{"dim", sa.derivation_dim}, {"inner", sa.inner_dim}, {"outer", sa.outer_dim}};
    } else {
      s["closure_error"] = sa.closure_error;
    }
    j["sets"].push_back(s);
  }
  j["claims"] = json::array();
  for (const auto& c : rep.claims)
    j["claims"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}, {"provenance", c.provenance}});
  j["discrepancies"] = json::array();
  for (const auto& d : rep.discrepancies)
    j["discrepancies"].push_back({{"key", d.key},
                                  {"expected", d.expected},
                                  {"computed", d.computed},
                                  {"expected_deviation", d.expected_deviation},
                                  {"computed_deviation", d.computed_deviation},
                                  {"supported", d.supported},
                                  {"documented", d.documented},
                                  {"note", d.note}});
  j["notes"] = rep.notes;
  if (!rep.fatal.empty()) j["fatal"] = rep.fatal;
  j["exit_code"] = rep.exit_code();
  return j;
}

} // namespace spraylie::cli

#endif // SPRAYLIE_CLI_ANALYZE_HPP
