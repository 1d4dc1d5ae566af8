#ifndef SPRAYLIE_LINALG_HPP
#define SPRAYLIE_LINALG_HPP

// Exact linear algebra over Q: reduced row echelon form, kernels, subspaces.

#include "spraylie/rational.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spraylie {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n)
  {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols)
  {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }

  RationalVector column(std::size_t c) const
  {
    RationalVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  RationalMatrix transpose() const
  {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
  {
    RationalMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  RationalVector apply(std::span<const Rational> v) const
  {
    RationalVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero() const
  {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q.is_zero(); });
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct EchelonForm {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots; ///< pivot column of each nonzero row, increasing

  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination; the pivot of each column is the first remaining row
/// with a nonzero entry there.
inline EchelonForm rref(RationalMatrix m)
{
  EchelonForm out;
  std::size_t row = 0;
  std::vector<std::size_t> nz;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    const Rational inv = Rational(1) / m(row, col);
    nz.clear();
    for (std::size_t c = col; c < m.cols(); ++c) {
      if (m(row, c).is_zero()) continue;
      m(row, c) *= inv;
      nz.push_back(c);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rational f = m(r, col);
      for (std::size_t c : nz) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank(); }

/// Basis of {v : m v = 0}, one vector per free column, in increasing free-column order.
inline std::vector<RationalVector> kernel(const RationalMatrix& m)
{
  const EchelonForm e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, or nullopt when inconsistent.
inline std::optional<RationalVector> solve(const RationalMatrix& a, std::span<const Rational> b)
{
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const EchelonForm e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  RationalVector x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

inline Rational determinant(RationalMatrix m)
{
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const Rational f = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

inline bool is_zero_vector(std::span<const Rational> v)
{
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.is_zero(); });
}

inline RationalVector unit_vector(std::size_t n, std::size_t i)
{
  RationalVector v(n);
  v[i] = 1;
  return v;
}

// ---------------------------------------------------------------------------

/// Linear subspace of Q^ambient, stored as the nonzero rows of its reduced echelon form.
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<RationalVector>& vectors)
  {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    const EchelonForm e = rref(RationalMatrix::from_rows(vectors, ambient));
    for (std::size_t r = 0; r < e.rank(); ++r) s.basis_.push_back(e.reduced.row(r));
    s.pivots_ = e.pivots;
    return s;
  }

  static Subspace whole(std::size_t ambient)
  {
    std::vector<RationalVector> vs;
    for (std::size_t i = 0; i < ambient; ++i) vs.push_back(unit_vector(ambient, i));
    return span(ambient, vs);
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_whole() const { return basis_.size() == ambient_; }
  const std::vector<RationalVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Coordinates of v in the echelon basis, or nullopt when v is outside.
  std::optional<RationalVector> coordinates(std::span<const Rational> v) const
  {
    RationalVector coords(basis_.size());
    RationalVector rest(v.begin(), v.end());
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const Rational f = rest[pivots_[r]];
      coords[r] = f;
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < ambient_; ++c)
        if (!basis_[r][c].is_zero()) rest[c] -= f * basis_[r][c];
    }
    if (!is_zero_vector(rest)) return std::nullopt;
    return coords;
  }

  bool contains(std::span<const Rational> v) const { return coordinates(v).has_value(); }

  bool contains(const Subspace& o) const
  {
    return std::all_of(o.basis_.begin(), o.basis_.end(), [this](const RationalVector& v) { return contains(v); });
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b)
  {
    std::vector<RationalVector> vs = a.basis_;
    vs.insert(vs.end(), b.basis_.begin(), b.basis_.end());
    return span(a.ambient_, vs);
  }

  friend Subspace intersect(const Subspace& a, const Subspace& b)
  {
    // Solve sum_i s_i a_i - sum_j t_j b_j = 0 and map the s-part back.
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    if (na == 0 || nb == 0) return Subspace(a.ambient_);
    RationalMatrix m(a.ambient_, na + nb);
    for (std::size_t c = 0; c < a.ambient_; ++c) {
      for (std::size_t i = 0; i < na; ++i) m(c, i) = a.basis_[i][c];
      for (std::size_t j = 0; j < nb; ++j) m(c, na + j) = -b.basis_[j][c];
    }
    std::vector<RationalVector> vs;
    for (const auto& k : kernel(m)) {
      RationalVector v(a.ambient_);
      for (std::size_t i = 0; i < na; ++i)
        if (!k[i].is_zero())
          for (std::size_t c = 0; c < a.ambient_; ++c) v[c] += k[i] * a.basis_[i][c];
      vs.push_back(std::move(v));
    }
    return span(a.ambient_, vs);
  }

  /// Coordinate complement: unit vectors on the non-pivot columns.
  Subspace coordinate_complement() const
  {
    std::vector<bool> is_pivot(ambient_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<RationalVector> vs;
    for (std::size_t i = 0; i < ambient_; ++i)
      if (!is_pivot[i]) vs.push_back(unit_vector(ambient_, i));
    return span(ambient_, vs);
  }

  /// Rows spanning the annihilator: A v = 0 exactly when v lies in the subspace.
  RationalMatrix annihilator() const
  {
    if (basis_.empty()) return RationalMatrix::identity(ambient_);
    const auto ann = kernel(RationalMatrix::from_rows(basis_, ambient_));
    if (ann.empty()) return RationalMatrix(0, ambient_);
    return RationalMatrix::from_rows(ann, ambient_);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.ambient_ == b.ambient_ && a.basis_ == b.basis_; }

private:
  std::size_t ambient_ = 0;
  std::vector<RationalVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// "(a, b, c)" rendering of a coordinate vector.
inline std::string to_string(std::span<const Rational> v)
{
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

} // namespace spraylie

#endif // SPRAYLIE_LINALG_HPP
