#ifndef SPRAYLIE_CLI_ORACLE_HPP
#define SPRAYLIE_CLI_ORACLE_HPP

// Numeric arbitration. Symbolic identities are evaluated pointwise, symbolic
// derivatives are compared with central differences, and disputed values are
// recomputed from the metric by finite differences without touching the
// symbolic differentiation code.

#include "spraylie/cli/problem.hpp"
#include "spraylie/fields.hpp"
#include "spraylie/liealg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace spraylie::cli {

inline constexpr std::uint64_t default_seed = 20220626;
inline constexpr int default_points = 10;
inline constexpr double identity_tolerance = 1e-12;
inline constexpr double fd_tolerance = 1e-6;

/// Finite-difference step as an exact rational so shifted points stay exact.
inline const Rational& fd_step()
{
  static const Rational h(1, 10000);
  return h;
}

inline double relative_deviation(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

/// Points with every x and y coordinate drawn from {-2, -3/2, ..., 2} \ {0}.
inline std::vector<Point> sample_points(int n, int count, std::uint64_t seed)
{
  static const long nums[] = {-4, -3, -2, -1, 1, 2, 3, 4};
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) {
    Point p;
    for (int i = 1; i <= n; ++i) p[Variable::x(i)] = make_rational(nums[rng() % 8], 2);
    for (int i = 1; i <= n; ++i) p[Variable::y(i)] = make_rational(nums[rng() % 8], 2);
    out.push_back(std::move(p));
  }
  return out;
}

inline std::string point_str(const Point& p)
{
  std::string s = "{";
  for (const auto& [v, q] : p) s += (s.size() > 1 ? ", " : "") + v.name() + "=" + to_string(q);
  return s + "}";
}

inline double central_difference(const Expr& e, const Point& p, Variable v)
{
  Point lo = p, hi = p;
  lo[v] -= fd_step();
  hi[v] += fd_step();
  return (e.eval(hi) - e.eval(lo)) / (2 * to_double(fd_step()));
}

struct OracleResult {
  std::string selector;
  std::uint64_t seed = default_seed;
  std::size_t points = 0;
  std::size_t comparisons = 0;
  double max_abs = 0;
  double max_rel = 0;
  double tolerance = identity_tolerance;
  std::vector<std::string> notes;

  bool pass() const { return max_rel <= tolerance; }

  void record(double a, double b)
  {
    ++comparisons;
    max_abs = std::max(max_abs, std::abs(a - b));
    max_rel = std::max(max_rel, relative_deviation(a, b));
  }
};

namespace detail {

inline std::vector<Expr> exprs(const VectorOneForm& L)
{
  std::vector<Expr> out;
  for (int r = 0; r < L.slots(); ++r)
    for (int c = 0; c < L.slots(); ++c) out.push_back(L(r, c));
  return out;
}

inline std::vector<Expr> exprs(const VectorTwoForm& W)
{
  std::vector<Expr> out;
  for (int a = 0; a < W.slots(); ++a)
    for (int b = 0; b < W.slots(); ++b)
      for (const auto& e : W(a, b).components()) out.push_back(e);
  return out;
}

inline std::vector<Expr> exprs(const TMField& X) { return X.components(); }

inline void compare_lists(OracleResult& res, const std::vector<Expr>& a, const std::vector<Expr>& b, std::span<const Point> pts)
{
  if (a.size() != b.size()) throw InvariantError("oracle compares objects of different shapes");
  for (const auto& p : pts)
    for (std::size_t i = 0; i < a.size(); ++i) res.record(a[i].eval(p), b[i].eval(p));
}

/// [X, Y] at p with every derivative taken by central differences.
inline std::vector<double> fd_bracket(const TMField& X, const TMField& Y, const Point& p)
{
  const int n = X.dim();
  std::vector<double> xv, yv;
  for (const auto& e : X.components()) xv.push_back(e.eval(p));
  for (const auto& e : Y.components()) yv.push_back(e.eval(p));
  std::vector<double> out(2 * n, 0.0);
  for (int b = 0; b < 2 * n; ++b) {
    const Variable v = TMField::slot_variable(n, b);
    for (int a = 0; a < 2 * n; ++a) {
      if (xv[b] != 0) out[a] += xv[b] * central_difference(Y[a], p, v);
      if (yv[b] != 0) out[a] -= yv[b] * central_difference(X[a], p, v);
    }
  }
  return out;
}

} // namespace detail

// ---------------------------------------------------------------------------

/// Christoffel symbols gamma^k_{ij} at p, from finite differences of the metric entries.
inline std::vector<double> numeric_christoffel(const MetricSpec& m, const Point& p)
{
  const int n = m.dim();
  Eigen::MatrixXd g(n, n);
  std::vector<Eigen::MatrixXd> dg(n, Eigen::MatrixXd(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = m.g()(i, j).eval(p);
      for (int k = 0; k < n; ++k) dg[k](i, j) = central_difference(m.g()(i, j), p, Variable::x(k + 1));
    }
  const Eigen::MatrixXd ginv = g.inverse();
  std::vector<double> out(static_cast<std::size_t>(n * n * n), 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += 0.5 * ginv(k, l) * (dg[i](l, j) + dg[j](i, l) - dg[l](i, j));
        out[static_cast<std::size_t>((k * n + i) * n + j)] = s;
      }
  return out;
}

/// N^k_i = gamma^k_{ij} y^j at p (the connection coefficients Gamma^k_i).
inline std::vector<double> numeric_connection(const MetricSpec& m, const Point& p)
{
  const int n = m.dim();
  const auto chr = numeric_christoffel(m, p);
  std::vector<double> out(static_cast<std::size_t>(n * n), 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(k * n + i)] += chr[static_cast<std::size_t>((k * n + i) * n + j)] * to_double(p.at(Variable::y(j + 1)));
  return out;
}

/// Horizontal lift h(d/dx^i) at p from the numeric connection.
inline std::vector<double> numeric_horizontal(const MetricSpec& m, const Point& p, int i)
{
  const int n = m.dim();
  const auto N = numeric_connection(m, p);
  std::vector<double> v(2 * n, 0.0);
  v[i] = 1;
  for (int j = 0; j < n; ++j) v[n + j] = -N[static_cast<std::size_t>(j * n + i)];
  return v;
}

inline double max_relative(const std::vector<double>& a, const std::vector<double>& b)
{
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, relative_deviation(a[i], b[i]));
  return m;
}

// ---------------------------------------------------------------------------

/// Lifted field for a combination of set members.
inline TMField lifted_combination(const NamedSet& set, std::span<const Rational> coeffs)
{
  const int n = set.fields.empty() ? 0 : set.fields.front().dim();
  BaseField f = BaseField::zero(n);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) f = f + set.fields[k].scaled(coeffs[k]);
  return complete_lift(f);
}

struct CellEvidence {
  double symbolic_vs_cell = 0; ///< symbolic bracket against the candidate cell
  double fd_vs_cell = 0;       ///< finite-difference bracket against the candidate cell
};

/// Pointwise evidence for one table cell value [a, b] = cell.
inline CellEvidence cell_evidence(const NamedSet& set, std::size_t a, std::size_t b, std::span<const Rational> cell,
                                  std::span<const Point> pts)
{
  const TMField X = complete_lift(set.fields[a]);
  const TMField Y = complete_lift(set.fields[b]);
  const TMField sym = bracket_tm(X, Y);
  const TMField C = lifted_combination(set, cell);
  CellEvidence ev;
  for (const auto& p : pts) {
    const auto fd = detail::fd_bracket(X, Y, p);
    for (int s = 0; s < C.slots(); ++s) {
      const double c = C[s].eval(p);
      ev.symbolic_vs_cell = std::max(ev.symbolic_vs_cell, relative_deviation(sym[s].eval(p), c));
      ev.fd_vs_cell = std::max(ev.fd_vs_cell, relative_deviation(fd[static_cast<std::size_t>(s)], c));
    }
  }
  return ev;
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_words(const std::string& s)
{
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string t; in >> t;) w.push_back(t);
  return w;
}

/// Named scalar objects whose derivatives the finite-difference check covers.
inline std::vector<std::pair<std::string, Expr>> derivative_objects(const ProblemFile& pf, const Geometry& geo)
{
  const int n = geo.dim();
  std::vector<std::pair<std::string, Expr>> objs;
  objs.emplace_back("E", geo.metric.energy());
  for (int k = 0; k < n; ++k) objs.emplace_back("G" + std::to_string(k + 1), geo.spray[k]);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) objs.emplace_back("Gamma" + std::to_string(j + 1) + "_" + std::to_string(i + 1), geo.connection.gamma1(j, i));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        objs.emplace_back("R" + std::to_string(k + 1) + "_" + std::to_string(i + 1) + std::to_string(j + 1), geo.curvature.r1(k, i, j));
  for (const auto& [name, f] : pf.fields)
    for (int i = 0; i < n; ++i) objs.emplace_back(name + "[" + std::to_string(i + 1) + "]", f[i]);
  return objs;
}

} // namespace detail

inline const std::vector<std::string>& oracle_selectors()
{
  static const std::vector<std::string> s = {
      "R-vs-half-[h,h]", "R-vs-eighth-[Gamma,Gamma]", "CS-vs-S", "CJ-vs-minus-J", "JS-vs-Gamma", "h-squared-vs-h",
      "h-plus-v-vs-I", "lift-bracket", "jacobi-lifts", "diff-vs-fd", "table-cell", "connection-vs-metric-fd"};
  return s;
}

/// Runs one selector. "diff-vs-fd" accepts an optional object name, "table-cell" takes
/// "<a> <b>" or "<set> <a> <b>".
inline OracleResult run_oracle(const ProblemFile& pf, const Geometry& geo, const std::string& selector, int npoints,
                               std::uint64_t seed)
{
  const auto words = detail::split_words(selector);
  if (words.empty()) throw InputError("empty oracle selector");
  const std::string& name = words[0];
  const int n = geo.dim();
  const auto pts = sample_points(n, npoints, seed);
  OracleResult res;
  res.selector = selector;
  res.seed = seed;
  res.points = pts.size();

  if (name == "R-vs-half-[h,h]" || name == "R-vs-eighth-[Gamma,Gamma]") {
    const VectorTwoForm R = semibasic_form(geo.curvature);
    const VectorTwoForm other = name == "R-vs-half-[h,h]" ? nijenhuis(projectors(geo.connection).h)
                                                          : fn_bracket(connection_form(geo.connection), connection_form(geo.connection)).scaled(Rational(1, 8));
    detail::compare_lists(res, detail::exprs(R), detail::exprs(other), pts);
  } else if (name == "CS-vs-S") {
    const TMField S = spray_field(geo.spray);
    detail::compare_lists(res, detail::exprs(bracket_tm(liouville(n), S)), detail::exprs(S), pts);
  } else if (name == "CJ-vs-minus-J") {
    const VectorOneForm J = tangent_structure(n);
    detail::compare_lists(res, detail::exprs(lie_derivative_oneform(liouville(n), J)), detail::exprs(J.scaled(Rational(-1))), pts);
  } else if (name == "JS-vs-Gamma") {
    // [J, S] = -[S, J] for a vector field S.
    const VectorOneForm JS = lie_derivative_oneform(spray_field(geo.spray), tangent_structure(n)).scaled(Rational(-1));
    detail::compare_lists(res, detail::exprs(JS), detail::exprs(connection_form(geo.connection)), pts);
  } else if (name == "h-squared-vs-h") {
    const VectorOneForm h = projectors(geo.connection).h;
    detail::compare_lists(res, detail::exprs(h * h), detail::exprs(h), pts);
  } else if (name == "h-plus-v-vs-I") {
    const Projectors pr = projectors(geo.connection);
    detail::compare_lists(res, detail::exprs(pr.h + pr.v), detail::exprs(VectorOneForm::identity(n)), pts);
  } else if (name == "lift-bracket" || name == "jacobi-lifts") {
    for (const auto& set : pf.sets) {
      const std::size_t m = set.fields.size();
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
          const TMField X = complete_lift(set.fields[a]), Y = complete_lift(set.fields[b]);
          if (name == "lift-bracket") {
            detail::compare_lists(res, detail::exprs(complete_lift(bracket_base(set.fields[a], set.fields[b]))),
                                  detail::exprs(bracket_tm(X, Y)), pts);
            continue;
          }
          for (std::size_t c = b + 1; c < m; ++c) {
            const TMField Z = complete_lift(set.fields[c]);
            const TMField cyc = bracket_tm(X, bracket_tm(Y, Z)) + bracket_tm(Y, bracket_tm(Z, X)) + bracket_tm(Z, bracket_tm(X, Y));
            detail::compare_lists(res, detail::exprs(cyc), detail::exprs(TMField::zero(n)), pts);
          }
        }
    }
  } else if (name == "diff-vs-fd") {
    res.tolerance = fd_tolerance;
    bool found = words.size() == 1;
    for (const auto& [label, e] : detail::derivative_objects(pf, geo)) {
      if (words.size() > 1 && label != words[1]) continue;
      found = true;
      for (const auto& p : pts)
        for (int s = 0; s < 2 * n; ++s) {
          const Variable v = TMField::slot_variable(n, s);
          res.record(e.diff(v).eval(p), central_difference(e, p, v));
        }
    }
    if (!found) throw InputError("diff-vs-fd: unknown object '" + words[1] + "'");
    res.notes.push_back("central differences with step " + to_string(fd_step()));
  } else if (name == "table-cell") {
    if (words.size() != 3 && words.size() != 4) throw InputError("table-cell needs '<a> <b>' or '<set> <a> <b>'");
    const NamedSet* set = nullptr;
    std::string a = words[words.size() - 2], b = words.back();
    if (words.size() == 4) {
      set = &pf.set(words[1]);
    } else {
      for (const auto& s : pf.sets)
        if (std::count(s.members.begin(), s.members.end(), a) && std::count(s.members.begin(), s.members.end(), b)) {
          set = &s;
          break;
        }
      if (!set) throw InputError("table-cell: no set contains both '" + a + "' and '" + b + "'");
    }
    const auto it = pf.expected_tables.find(set->name);
    if (it == pf.expected_tables.end()) throw InputError("table-cell: set '" + set->name + "' has no expected table");
    const std::size_t ia = set->index_of(a), ib = set->index_of(b);
    const std::string& text = it->second[ia][ib];
    const RationalVector cell = parse_combination(text, set->members);
    const TMField sym = bracket_tm(complete_lift(set->fields[ia]), complete_lift(set->fields[ib]));
    detail::compare_lists(res, detail::exprs(sym), detail::exprs(lifted_combination(*set, cell)), pts);
    const CellEvidence ev = cell_evidence(*set, ia, ib, cell, pts);
    std::ostringstream note;
    note << "[" << a << ", " << b << "] against expected cell '" << text << "'; finite-difference bracket deviation " << ev.fd_vs_cell;
    res.notes.push_back(note.str());
  } else if (name == "connection-vs-metric-fd") {
    res.tolerance = fd_tolerance;
    for (const auto& p : pts) {
      const auto N = numeric_connection(geo.metric, p);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) res.record(geo.connection.gamma1(j, i).eval(p), N[static_cast<std::size_t>(j * n + i)]);
    }
    res.notes.push_back("Christoffel symbols from central differences of the metric entries");
  } else {
    throw InputError("unknown oracle selector '" + name + "'");
  }
  return res;
}

} // namespace spraylie::cli

#endif // SPRAYLIE_CLI_ORACLE_HPP
