#ifndef SPRAYLIE_LIEALG_HPP
#define SPRAYLIE_LIEALG_HPP

// Finite-dimensional Lie algebras over Q given by structure constants:
// Killing form, derived algebra, centre, radical, ideals, derivations,
// Levi decomposition and the real type of 3-dimensional simple algebras.
// Everything here is exact; there are no tolerances.

#include "spraylie/flatten.hpp"
#include "spraylie/linalg.hpp"

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spraylie {

class NonClosureError : public DomainError {
public:
  NonClosureError(std::size_t i, std::size_t j, const std::string& msg) : DomainError(msg), i_(i), j_(j) {}
  std::size_t first() const { return i_; }
  std::size_t second() const { return j_; }

private:
  std::size_t i_;
  std::size_t j_;
};

/// [b_i, b_j] = c^k_{ij} b_k
class StructureConstants {
public:
  StructureConstants() = default;
  explicit StructureConstants(std::vector<std::string> names)
      : names_(std::move(names)), m_(names_.size()), c_(m_ * m_ * m_)
  {
  }

  std::size_t dim() const { return m_; }
  const std::vector<std::string>& names() const { return names_; }

  Rational& operator()(std::size_t k, std::size_t i, std::size_t j) { return c_[(k * m_ + i) * m_ + j]; }
  const Rational& operator()(std::size_t k, std::size_t i, std::size_t j) const { return c_[(k * m_ + i) * m_ + j]; }

  RationalVector bracket_basis(std::size_t i, std::size_t j) const
  {
    RationalVector v(m_);
    for (std::size_t k = 0; k < m_; ++k) v[k] = (*this)(k, i, j);
    return v;
  }

  RationalVector bracket(std::span<const Rational> u, std::span<const Rational> v) const
  {
    RationalVector out(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < m_; ++j) {
        if (v[j].is_zero()) continue;
        const Rational f = u[i] * v[j];
        for (std::size_t k = 0; k < m_; ++k)
          if (!(*this)(k, i, j).is_zero()) out[k] += f * (*this)(k, i, j);
      }
    }
    return out;
  }

  /// ad(u) as a matrix acting on coordinate columns.
  RationalMatrix ad(std::span<const Rational> u) const
  {
    RationalMatrix a(m_, m_);
    for (std::size_t j = 0; j < m_; ++j) {
      const RationalVector col = bracket(u, unit_vector(m_, j));
      for (std::size_t k = 0; k < m_; ++k) a(k, j) = col[k];
    }
    return a;
  }

  RationalMatrix ad_basis(std::size_t i) const { return ad(unit_vector(m_, i)); }

  bool is_antisymmetric() const
  {
    for (std::size_t k = 0; k < m_; ++k)
      for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = i; j < m_; ++j)
          if ((*this)(k, i, j) != -(*this)(k, j, i)) return false;
    return true;
  }

  /// Structure constants of a subalgebra in the echelon basis of sub.
  StructureConstants restricted(const Subspace& sub) const
  {
    std::vector<std::string> names;
    for (std::size_t a = 0; a < sub.dim(); ++a) names.push_back(label(sub.basis()[a]));
    StructureConstants r(std::move(names));
    for (std::size_t a = 0; a < sub.dim(); ++a)
      for (std::size_t b = 0; b < sub.dim(); ++b) {
        const auto coords = sub.coordinates(bracket(sub.basis()[a], sub.basis()[b]));
        if (!coords) throw NonClosureError(a, b, "subspace is not closed under the bracket: [" + r.names_[a] + ", " + r.names_[b] + "] escapes");
        for (std::size_t k = 0; k < sub.dim(); ++k) r(k, a, b) = (*coords)[k];
      }
    return r;
  }

  /// Human-readable combination of basis names, e.g. "1/2*e2 - e4".
  std::string label(std::span<const Rational> v) const
  {
    std::string s;
    for (std::size_t k = 0; k < m_; ++k) {
      if (v[k].is_zero()) continue;
      const bool neg = v[k] < 0;
      const Rational mag = neg ? Rational(-v[k]) : v[k];
      s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (mag != 1) s += to_string(mag) + "*";
      s += names_[k];
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) { return a.m_ == b.m_ && a.c_ == b.c_; }

private:
  std::vector<std::string> names_;
  std::size_t m_ = 0;
  std::vector<Rational> c_;
};

// ---------------------------------------------------------------------------

template <class F>
concept LinearField = requires(const F& f) {
  { flatten(f) } -> std::convertible_to<FlatVector>;
  { f.str() } -> std::convertible_to<std::string>;
};

/// Expresses every bracket of the generators in their span by coefficient matching.
template <LinearField Field, class Bracket>
StructureConstants structure_constants_from_fields(std::span<const Field> gens, std::vector<std::string> names, Bracket&& bracket)
{
  const std::size_t m = gens.size();
  if (names.size() != m) throw DomainError("one name per generator is required");
  std::vector<FlatVector> cols;
  for (const auto& g : gens) cols.push_back(flatten(g));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Field> brackets;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      brackets.push_back(bracket(gens[i], gens[j]));
      cols.push_back(flatten(brackets.back()));
      pairs.emplace_back(i, j);
    }
  const EchelonForm e = rref(coefficient_matrix(cols));
  for (std::size_t p = 0; p < m; ++p)
    if (p >= e.rank() || e.pivots[p] != p) throw DomainError("generators are linearly dependent (" + names[std::min(p, m - 1)] + ")");
  if (e.rank() > m) {
    const std::size_t col = e.pivots[m] - m;
    const auto [i, j] = pairs[col];
    throw NonClosureError(i, j, "bracket [" + names[i] + ", " + names[j] + "] = " + brackets[col].str() + " is not in the span of the generators");
  }
  StructureConstants sc(std::move(names));
  for (std::size_t col = 0; col < pairs.size(); ++col) {
    const auto [i, j] = pairs[col];
    for (std::size_t k = 0; k < m; ++k) {
      const Rational v = e.reduced(k, m + col);
      sc(k, i, j) = v;
      sc(k, j, i) = -v;
    }
  }
  return sc;
}

// ---------------------------------------------------------------------------

struct JacobiVerdict {
  bool holds = true;
  std::size_t i = 0, j = 0, k = 0, s = 0; ///< first violated component
  Rational value;
};

/// Exhaustive check of sum_l c^l_{ij} c^s_{lk} + c^l_{jk} c^s_{li} + c^l_{ki} c^s_{lj} = 0 over i<j<k.
inline JacobiVerdict jacobi_check(const StructureConstants& sc)
{
  const std::size_t m = sc.dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        for (std::size_t s = 0; s < m; ++s) {
          Rational v(0);
          for (std::size_t l = 0; l < m; ++l)
            v += sc(l, i, j) * sc(s, l, k) + sc(l, j, k) * sc(s, l, i) + sc(l, k, i) * sc(s, l, j);
          if (!v.is_zero()) return {false, i, j, k, s, v};
        }
  return {};
}

struct KillingMatrix {
  RationalMatrix matrix;

  Rational determinant() const { return spraylie::determinant(matrix); }
  bool is_nondegenerate() const { return !determinant().is_zero(); }
};

/// kappa(b_i, b_j) = tr(ad b_i ad b_j) = sum_{k,l} c^k_{il} c^l_{jk}
inline KillingMatrix killing_form(const StructureConstants& sc)
{
  const std::size_t m = sc.dim();
  RationalMatrix K(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Rational t(0);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l)
          if (!sc(k, i, l).is_zero() && !sc(l, j, k).is_zero()) t += sc(k, i, l) * sc(l, j, k);
      K(i, j) = t;
      K(j, i) = t;
    }
  return {std::move(K)};
}

/// Span of [u, v] for u in a, v in b.
inline Subspace bracket_span(const StructureConstants& sc, const Subspace& a, const Subspace& b)
{
  std::vector<RationalVector> vs;
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) vs.push_back(sc.bracket(u, v));
  return Subspace::span(sc.dim(), vs);
}

inline Subspace derived_subalgebra(const StructureConstants& sc)
{
  const Subspace all = Subspace::whole(sc.dim());
  return bracket_span(sc, all, all);
}

/// Kernel of x -> ([x, b_1], ..., [x, b_m]).
inline Subspace center(const StructureConstants& sc)
{
  const std::size_t m = sc.dim();
  RationalMatrix M(m * m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < m; ++i) M(j * m + k, i) = sc(k, i, j);
  return Subspace::span(m, kernel(M));
}

inline bool is_subalgebra(const StructureConstants& sc, const Subspace& s) { return s.contains(bracket_span(sc, s, s)); }

inline bool is_ideal(const StructureConstants& sc, const Subspace& s)
{
  return s.contains(bracket_span(sc, Subspace::whole(sc.dim()), s));
}

/// s, [s,s], [[s,s],[s,s]], ... down to the first repeated term.
inline std::vector<Subspace> derived_series(const StructureConstants& sc, const Subspace& s)
{
  std::vector<Subspace> series{s};
  while (!series.back().is_zero()) {
    Subspace next = bracket_span(sc, series.back(), series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline bool is_solvable(const StructureConstants& sc, const Subspace& s) { return derived_series(sc, s).back().is_zero(); }

/// Radical as the Killing-orthogonal of the derived algebra; verified to be a solvable ideal.
inline Subspace radical(const StructureConstants& sc)
{
  const std::size_t m = sc.dim();
  const RationalMatrix K = killing_form(sc).matrix;
  const Subspace d = derived_subalgebra(sc);
  Subspace rad;
  if (d.is_zero()) {
    rad = Subspace::whole(m);
  } else {
    std::vector<RationalVector> rows;
    for (const auto& v : d.basis()) rows.push_back(K.apply(v));
    rad = Subspace::span(m, kernel(RationalMatrix::from_rows(rows, m)));
  }
  if (!is_ideal(sc, rad)) throw InvariantError("computed radical is not an ideal");
  if (!is_solvable(sc, rad)) throw InvariantError("computed radical is not solvable");
  return rad;
}

inline bool is_semisimple(const StructureConstants& sc) { return sc.dim() > 0 && killing_form(sc).is_nondegenerate(); }

/// Smallest ideal containing the given vectors.
inline Subspace ideal_generated(const StructureConstants& sc, const std::vector<RationalVector>& vs)
{
  Subspace s = Subspace::span(sc.dim(), vs);
  const Subspace all = Subspace::whole(sc.dim());
  for (;;) {
    Subspace next = s + bracket_span(sc, all, s);
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
}

inline constexpr std::size_t coordinate_search_limit = 16;

namespace detail {

inline bool coordinate_subset_is_ideal(const StructureConstants& sc, std::uint32_t mask, bool require_abelian)
{
  const std::size_t m = sc.dim();
  for (std::size_t i = 0; i < m; ++i) {
    if (!(mask >> i & 1u)) continue;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        if (sc(k, i, j).is_zero()) continue;
        if (!(mask >> k & 1u)) return false;
        if (require_abelian && (mask >> j & 1u)) return false;
      }
  }
  return true;
}

inline std::vector<Subspace> coordinate_ideals(const StructureConstants& sc, bool abelian)
{
  const std::size_t m = sc.dim();
  if (m > coordinate_search_limit)
    throw DomainError("coordinate ideal search is limited to dimension " + std::to_string(coordinate_search_limit));
  std::vector<Subspace> out;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (!coordinate_subset_is_ideal(sc, mask, abelian)) continue;
    std::vector<RationalVector> vs;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) vs.push_back(unit_vector(m, i));
    out.push_back(Subspace::span(m, vs));
  }
  return out;
}

} // namespace detail

/// Nonzero coordinate-aligned ideals (spans of subsets of the basis), in subset-index order.
inline std::vector<Subspace> find_ideals_coordinate(const StructureConstants& sc) { return detail::coordinate_ideals(sc, false); }

/// Nonzero coordinate-aligned abelian ideals. This is not an enumeration of all abelian ideals.
inline std::vector<Subspace> find_abelian_ideals_coordinate(const StructureConstants& sc)
{
  return detail::coordinate_ideals(sc, true);
}

inline bool abelian_ideal_check(const StructureConstants& sc, const Subspace& s)
{
  return is_ideal(sc, s) && bracket_span(sc, s, s).is_zero();
}

/// A proper nonzero ideal found either as a coordinate span or as the ideal generated by a basis vector.
inline std::optional<Subspace> find_proper_ideal(const StructureConstants& sc)
{
  const std::size_t m = sc.dim();
  for (std::size_t i = 0; i < m; ++i) {
    Subspace s = ideal_generated(sc, {unit_vector(m, i)});
    if (!s.is_zero() && !s.is_whole()) return s;
  }
  if (m <= coordinate_search_limit)
    for (auto& s : find_ideals_coordinate(sc))
      if (!s.is_whole()) return s;
  return std::nullopt;
}

inline bool is_simple(const StructureConstants& sc) { return is_semisimple(sc) && !find_proper_ideal(sc).has_value(); }

// ---------------------------------------------------------------------------

struct DerivationSpace {
  std::vector<RationalMatrix> basis;       ///< all derivations
  std::vector<RationalMatrix> inner_basis; ///< independent ad(b_i)

  std::size_t dim() const { return basis.size(); }
  std::size_t inner_dim() const { return inner_basis.size(); }
  std::size_t outer_dim() const { return dim() - inner_dim(); }
};

inline bool is_derivation(const StructureConstants& sc, const RationalMatrix& D)
{
  const std::size_t m = sc.dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const RationalVector lhs = D.apply(sc.bracket_basis(i, j));
      RationalVector rhs = sc.bracket(D.column(i), unit_vector(m, j));
      const RationalVector t = sc.bracket(unit_vector(m, i), D.column(j));
      for (std::size_t k = 0; k < m; ++k) rhs[k] += t[k];
      if (lhs != rhs) return false;
    }
  return true;
}

namespace detail {

inline RationalVector vectorize(const RationalMatrix& a)
{
  RationalVector v;
  v.reserve(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) v.push_back(a(r, c));
  return v;
}

inline RationalMatrix unvectorize(const RationalVector& v, std::size_t m)
{
  RationalMatrix a(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) a(r, c) = v[r * m + c];
  return a;
}

inline Subspace inner_span(const StructureConstants& sc)
{
  std::vector<RationalVector> vs;
  for (std::size_t i = 0; i < sc.dim(); ++i) vs.push_back(vectorize(sc.ad_basis(i)));
  return Subspace::span(sc.dim() * sc.dim(), vs);
}

} // namespace detail

inline bool is_inner_derivation(const StructureConstants& sc, const RationalMatrix& D)
{
  return detail::inner_span(sc).contains(detail::vectorize(D));
}

/// Solves D[b_i,b_j] = [D b_i, b_j] + [b_i, D b_j] for the m^2 entries of D.
inline DerivationSpace derivations(const StructureConstants& sc)
{
  const std::size_t m = sc.dim();
  auto var = [m](std::size_t r, std::size_t c) { return r * m + c; };
  RationalMatrix A(m * (m * (m - 1) / 2), m * m);
  std::size_t row = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t s = 0; s < m; ++s, ++row) {
        for (std::size_t k = 0; k < m; ++k)
          if (!sc(k, i, j).is_zero()) A(row, var(s, k)) += sc(k, i, j);
        for (std::size_t l = 0; l < m; ++l) {
          if (!sc(s, l, j).is_zero()) A(row, var(l, i)) -= sc(s, l, j);
          if (!sc(s, i, l).is_zero()) A(row, var(l, j)) -= sc(s, i, l);
        }
      }
  DerivationSpace out;
  const std::vector<RationalVector> ker = m > 1 ? kernel(A) : std::vector<RationalVector>{unit_vector(1, 0)};
  const Subspace all = Subspace::span(m * m, ker);
  const Subspace inner = detail::inner_span(sc);
  for (const auto& v : all.basis()) out.basis.push_back(detail::unvectorize(v, m));
  for (const auto& v : inner.basis()) out.inner_basis.push_back(detail::unvectorize(v, m));
  return out;
}

// ---------------------------------------------------------------------------

struct LeviResult {
  Subspace radical;
  Subspace levi;
};

/// Levi subalgebra by lifting a complement of the radical through the derived
/// series of the radical, one abelian layer at a time.
inline LeviResult levi_decomposition(const StructureConstants& sc)
{
  const std::size_t m = sc.dim();
  LeviResult out{radical(sc), Subspace(m)};
  const Subspace& rad = out.radical;
  if (rad.is_zero()) {
    out.levi = Subspace::whole(m);
    return out;
  }
  if (rad.is_whole()) return out;

  // Complement of the radical and the quotient structure constants in it.
  std::vector<RationalVector> xs = rad.coordinate_complement().basis();
  std::vector<std::size_t> comp_cols;
  for (const auto& x : xs)
    for (std::size_t c = 0; c < m; ++c)
      if (!x[c].is_zero()) comp_cols.push_back(c);
  const std::size_t s = xs.size();
  auto quotient_coords = [&](RationalVector v) {
    for (std::size_t r = 0; r < rad.dim(); ++r) {
      const Rational f = v[rad.pivots()[r]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < m; ++c) v[c] -= f * rad.basis()[r][c];
    }
    RationalVector a(s);
    for (std::size_t p = 0; p < s; ++p) a[p] = v[comp_cols[p]];
    return a;
  };
  std::vector<std::vector<RationalVector>> cbar(s, std::vector<RationalVector>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) cbar[i][j] = quotient_coords(sc.bracket(xs[i], xs[j]));

  auto defect = [&](std::size_t i, std::size_t j) {
    RationalVector d = sc.bracket(xs[i], xs[j]);
    for (std::size_t q = 0; q < s; ++q)
      if (!cbar[i][j][q].is_zero())
        for (std::size_t c = 0; c < m; ++c) d[c] -= cbar[i][j][q] * xs[q][c];
    return d;
  };

  const std::vector<Subspace> series = derived_series(sc, rad);
  for (std::size_t t = 0; t + 1 < series.size() || (t + 1 == series.size() && !series[t].is_zero()); ++t) {
    const Subspace& layer = series[t];
    const Subspace next = t + 1 < series.size() ? series[t + 1] : Subspace(m);
    const RationalMatrix Q = next.annihilator();
    const std::size_t w = layer.dim();
    const std::size_t nvars = s * w;
    std::vector<RationalVector> rows;
    RationalVector rhs;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) {
        // Column (p, a): contribution of y_p = w_a to the corrected defect of (i, j).
        std::vector<RationalVector> contrib(nvars, RationalVector(m));
        for (std::size_t a = 0; a < w; ++a) {
          const RationalVector& wa = layer.basis()[a];
          const RationalVector xi_w = sc.bracket(xs[i], wa);
          const RationalVector w_xj = sc.bracket(wa, xs[j]);
          for (std::size_t c = 0; c < m; ++c) {
            contrib[j * w + a][c] += xi_w[c];
            contrib[i * w + a][c] += w_xj[c];
          }
          for (std::size_t p = 0; p < s; ++p)
            if (!cbar[i][j][p].is_zero())
              for (std::size_t c = 0; c < m; ++c) contrib[p * w + a][c] -= cbar[i][j][p] * wa[c];
        }
        const RationalVector d = Q.apply(defect(i, j));
        std::vector<RationalVector> qc;
        for (const auto& v : contrib) qc.push_back(Q.apply(v));
        for (std::size_t r = 0; r < Q.rows(); ++r) {
          RationalVector eq(nvars);
          for (std::size_t u = 0; u < nvars; ++u) eq[u] = qc[u][r];
          rows.push_back(std::move(eq));
          rhs.push_back(-d[r]);
        }
      }
    if (rows.empty()) continue;
    const auto z = solve(RationalMatrix::from_rows(rows, nvars), rhs);
    if (!z) throw InvariantError("Levi lifting system is inconsistent at layer " + std::to_string(t));
    for (std::size_t p = 0; p < s; ++p)
      for (std::size_t a = 0; a < w; ++a)
        if (!(*z)[p * w + a].is_zero())
          for (std::size_t c = 0; c < m; ++c) xs[p][c] += (*z)[p * w + a] * layer.basis()[a][c];
  }

  out.levi = Subspace::span(m, xs);
  if (out.levi.dim() + rad.dim() != m || !intersect(out.levi, rad).is_zero())
    throw InvariantError("Levi factor is not a complement of the radical");
  if (!is_subalgebra(sc, out.levi)) throw InvariantError("Levi factor is not a subalgebra");
  if (!killing_form(sc.restricted(out.levi)).is_nondegenerate()) throw InvariantError("Levi factor is not semisimple");
  return out;
}

// ---------------------------------------------------------------------------

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

/// Signature of a symmetric rational matrix by congruence diagonalisation.
inline Inertia inertia(RationalMatrix a)
{
  const std::size_t n = a.rows();
  Inertia in;
  std::size_t done = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (a(p, p).is_zero()) {
      // Bring a nonzero diagonal entry to p, or create one from an off-diagonal pair.
      std::size_t q = p + 1;
      while (q < n && a(q, q).is_zero()) ++q;
      if (q < n) {
        for (std::size_t c = 0; c < n; ++c) std::swap(a(p, c), a(q, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(a(r, p), a(r, q));
      } else {
        q = p + 1;
        while (q < n && a(p, q).is_zero()) ++q;
        if (q == n) {
          ++in.zero;
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) a(p, c) += a(q, c);
        for (std::size_t r = 0; r < n; ++r) a(r, p) += a(r, q);
      }
    }
    const Rational d = a(p, p);
    (d > 0 ? in.positive : in.negative) += 1;
    for (std::size_t r = p + 1; r < n; ++r) {
      if (a(r, p).is_zero()) continue;
      const Rational f = a(r, p) / d;
      for (std::size_t c = p; c < n; ++c) a(r, c) -= f * a(p, c);
      for (std::size_t c = p; c < n; ++c) a(c, r) = a(r, c);
    }
    ++done;
  }
  return in;
}

enum class Simple3Type { sl2, so3, not_simple };

inline std::string to_string(Simple3Type t)
{
  switch (t) {
  case Simple3Type::sl2: return "sl2-type";
  case Simple3Type::so3: return "so3-type";
  case Simple3Type::not_simple: return "not-simple";
  }
  return "?";
}

/// Real type of a 3-dimensional subalgebra from the signature of its Killing form.
inline Simple3Type classify_3dim_simple(const StructureConstants& sc, const Subspace& sub)
{
  if (sub.dim() != 3) throw DomainError("classification needs a 3-dimensional subalgebra");
  const StructureConstants r = sc.restricted(sub);
  const Inertia in = inertia(killing_form(r).matrix);
  if (in.zero > 0) return Simple3Type::not_simple;
  if (in.positive == 2 && in.negative == 1) return Simple3Type::sl2;
  if (in.negative == 3) return Simple3Type::so3;
  throw InvariantError("3-dimensional algebra with impossible Killing signature");
}

inline Simple3Type classify_3dim_simple(const StructureConstants& sc)
{
  return classify_3dim_simple(sc, Subspace::whole(sc.dim()));
}

} // namespace spraylie

#endif // SPRAYLIE_LIEALG_HPP
