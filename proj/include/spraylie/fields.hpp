#ifndef SPRAYLIE_FIELDS_HPP
#define SPRAYLIE_FIELDS_HPP

// Symmetry predicates for base fields: spray symmetries, affine fields,
// isometries, horizontal fields, and the curvature nullity; plus the exact
// span solver that discovers such fields inside a finite dictionary.

#include "spraylie/flatten.hpp"
#include "spraylie/geom.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spraylie {

/// [X, L] Y = [X, LY] - L [X, Y], tabulated on the frame.
inline VectorOneForm lie_derivative_oneform(const TMField& X, const VectorOneForm& L)
{
  const int n = L.dim();
  VectorOneForm out(n);
  for (int b = 0; b < 2 * n; ++b) {
    const TMField Y = TMField::frame(n, b);
    const TMField col = bracket_tm(X, L.image(b)) - L.apply(bracket_tm(X, Y));
    for (int r = 0; r < 2 * n; ++r) out(r, b) = col[r];
  }
  return out;
}

// ---------------------------------------------------------------------------

struct MembershipVerdict {
  std::string predicate;
  bool holds = true;
  std::optional<Expr> residual; ///< first nonzero obstruction when the predicate fails
  std::string location;         ///< where the residual lives, e.g. "d/dy2"

  explicit operator bool() const { return holds; }
};

namespace detail {

inline MembershipVerdict verdict_from(std::string name, const std::vector<std::pair<std::string, Expr>>& obstructions)
{
  MembershipVerdict v{std::move(name), true, std::nullopt, {}};
  for (const auto& [where, e] : obstructions)
    if (!e.is_zero()) {
      v.holds = false;
      v.residual = e;
      v.location = where;
      break;
    }
  return v;
}

inline std::vector<std::pair<std::string, Expr>> labelled(const TMField& f)
{
  std::vector<std::pair<std::string, Expr>> out;
  for (int a = 0; a < f.slots(); ++a) out.emplace_back("d/d" + TMField::slot_variable(f.dim(), a).name(), f[a]);
  return out;
}

inline void require_dim(const BaseField& X, int n)
{
  if (X.dim() != n) throw DomainError("field has " + std::to_string(X.dim()) + " components, expected " + std::to_string(n));
}

} // namespace detail

/// [lift X, S] = 0
inline MembershipVerdict in_AS(const BaseField& X, const SprayData& s)
{
  detail::require_dim(X, s.dim());
  return detail::verdict_from("spray-symmetry", detail::labelled(bracket_tm(complete_lift(X), spray_field(s))));
}

/// [lift X, Gamma] = 0
inline MembershipVerdict in_AGamma(const BaseField& X, const ConnectionData& c)
{
  detail::require_dim(X, c.dim());
  const int n = c.dim();
  const VectorOneForm d = lie_derivative_oneform(complete_lift(X), connection_form(c));
  std::vector<std::pair<std::string, Expr>> obs;
  for (int col = 0; col < 2 * n; ++col)
    for (int row = 0; row < 2 * n; ++row)
      obs.emplace_back("[X,Gamma](d/d" + TMField::slot_variable(n, col).name() + ") along d/d" + TMField::slot_variable(n, row).name(),
                       d(row, col));
  return detail::verdict_from("affine", obs);
}

/// [lift X, S] = 0 and lift X (E) = 0
inline MembershipVerdict in_Ag(const BaseField& X, const MetricSpec& m, const SprayData& s)
{
  MembershipVerdict v = in_AS(X, s);
  if (v.holds) v = detail::verdict_from("isometry", {{"lift(X)(E)", complete_lift(X).apply(m.energy())}});
  v.predicate = "isometry";
  return v;
}

/// dX^j/dx^l + X^i Gamma^j_{il} = 0 for all j, l
inline std::vector<std::pair<std::string, Expr>> horizontality_residuals(const BaseField& X, const ConnectionData& c)
{
  const int n = c.dim();
  std::vector<std::pair<std::string, Expr>> obs;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      Expr e = X[j].diff(Variable::x(l + 1));
      for (int i = 0; i < n; ++i)
        if (!X[i].is_zero() && !c.gamma2(j, i, l).is_zero()) e += X[i] * c.gamma2(j, i, l);
      obs.emplace_back("(j=" + std::to_string(j + 1) + ", l=" + std::to_string(l + 1) + ")", std::move(e));
    }
  return obs;
}

inline MembershipVerdict is_horizontal(const BaseField& X, const ConnectionData& c)
{
  detail::require_dim(X, c.dim());
  return detail::verdict_from("horizontal", horizontality_residuals(X, c));
}

/// X^l R^k_{l,ij} = 0 for all k, i, j
inline MembershipVerdict in_nullity(const BaseField& X, const CurvatureData& r)
{
  detail::require_dim(X, r.dim());
  const int n = r.dim();
  std::vector<std::pair<std::string, Expr>> obs;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Expr e;
        for (int l = 0; l < n; ++l)
          if (!X[l].is_zero() && !r.r2(k, l, i, j).is_zero()) e += X[l] * r.r2(k, l, i, j);
        obs.emplace_back("(k=" + std::to_string(k + 1) + ", i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) + ")",
                         std::move(e));
      }
  return detail::verdict_from("curvature-nullity", obs);
}

// ---------------------------------------------------------------------------

struct NullityReport {
  int dim = 0;
  int max_rank = 0;
  std::vector<int> ranks; ///< per sample point

  std::vector<int> nullities() const
  {
    std::vector<int> out;
    for (int r : ranks) out.push_back(dim - r);
    return out;
  }
  int min_nullity() const { return dim - max_rank; }
};

/// Numeric rank of X -> (X^l R^k_{l,ij})_{k,i,j} at each point.
inline NullityReport nullity_rank_numeric(const CurvatureData& r, std::span<const Point> points)
{
  if (points.empty()) throw DomainError("nullity rank needs at least one sample point");
  const int n = r.dim();
  NullityReport rep;
  rep.dim = n;
  for (const Point& p : points) {
    Eigen::MatrixXd a(n * n * n, n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) a((k * n + i) * n + j, l) = r.r2(k, l, i, j).eval(p);
    int rk = 0;
    if (a.cwiseAbs().maxCoeff() > 0) {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
      qr.setThreshold(1e-10);
      rk = static_cast<int>(qr.rank());
    }
    rep.ranks.push_back(rk);
    rep.max_rank = std::max(rep.max_rank, rk);
  }
  return rep;
}

/// Exact dimension of the constant-coefficient fields X with X^l R^k_{l,ij} = 0.
inline std::vector<RationalVector> constant_nullity_basis(const CurvatureData& r)
{
  const int n = r.dim();
  std::vector<FlatVector> cols;
  for (int l = 0; l < n; ++l) {
    std::vector<Expr> comps;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) comps.push_back(r.r2(k, l, i, j));
    cols.push_back(flatten(std::span<const Expr>(comps)));
  }
  return kernel(coefficient_matrix(cols));
}

// ---------------------------------------------------------------------------

enum class Condition : unsigned { spray_symmetry = 1u, isometry = 2u, horizontality = 4u };

struct ConditionSet {
  unsigned bits = 0;

  ConditionSet& add(Condition c)
  {
    bits |= static_cast<unsigned>(c);
    return *this;
  }
  bool has(Condition c) const { return (bits & static_cast<unsigned>(c)) != 0; }
  bool empty() const { return bits == 0; }
};

struct SpanSolution {
  std::vector<RationalVector> coefficients; ///< reduced echelon basis over the dictionary
  std::vector<BaseField> fields;

  std::size_t dim() const { return coefficients.size(); }
};

/// Obstruction expressions of one field for the selected conditions; each is linear in the field.
inline std::vector<Expr> obstructions(const BaseField& X, ConditionSet conds, const Geometry& geo)
{
  std::vector<Expr> out;
  if (conds.has(Condition::spray_symmetry) || conds.has(Condition::isometry)) {
    const TMField b = bracket_tm(complete_lift(X), spray_field(geo.spray));
    out.insert(out.end(), b.components().begin(), b.components().end());
  }
  if (conds.has(Condition::isometry)) out.push_back(complete_lift(X).apply(geo.metric.energy()));
  if (conds.has(Condition::horizontality))
    for (auto& [where, e] : horizontality_residuals(X, geo.connection)) out.push_back(std::move(e));
  return out;
}

/// All Q-combinations of the dictionary satisfying every selected condition.
inline SpanSolution solve_in_span(std::span<const BaseField> dictionary, ConditionSet conds, const Geometry& geo)
{
  if (conds.empty()) throw DomainError("solve_in_span needs at least one condition");
  SpanSolution sol;
  if (dictionary.empty()) return sol;
  std::vector<FlatVector> cols;
  for (const auto& X : dictionary) {
    detail::require_dim(X, geo.dim());
    const std::vector<Expr> obs = obstructions(X, conds, geo);
    cols.push_back(flatten(std::span<const Expr>(obs)));
  }
  const std::size_t m = dictionary.size();
  const Subspace ker = Subspace::span(m, kernel(coefficient_matrix(cols)));
  for (const auto& v : ker.basis()) {
    BaseField f = BaseField::zero(geo.dim());
    for (std::size_t a = 0; a < m; ++a)
      if (!v[a].is_zero()) f = f + dictionary[a].scaled(v[a]);
    sol.coefficients.push_back(v);
    sol.fields.push_back(std::move(f));
  }
  return sol;
}

} // namespace spraylie

#endif // SPRAYLIE_FIELDS_HPP
