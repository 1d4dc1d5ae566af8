#ifndef SPRAYLIE_GEOM_HPP
#define SPRAYLIE_GEOM_HPP

// Metric -> Christoffel data -> canonical spray -> connection -> curvature,
// together with the vector 1-forms on TM (tangent structure, projectors) and
// the Froelicher-Nijenhuis bracket used to cross-check the curvature.

#include "spraylie/tensor.hpp"
#include "spraylie/vector_fields.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spraylie {

enum class MetricKind { diagonal, general };

class MetricSpec {
public:
  MetricSpec() = default;
  MetricSpec(ExprMatrix g, MetricKind kind, std::optional<ExprMatrix> g_inv = std::nullopt)
      : g_(std::move(g)), kind_(kind)
  {
    const int n = g_.dim();
    if (n < 2) throw DomainError("metric dimension must be at least 2");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!g_(i, j).is_x_only()) throw DomainError("metric entry g" + idx(i, j) + " depends on y");
        if (g_(i, j) != g_(j, i)) throw DomainError("metric is not symmetric at g" + idx(i, j));
      }
    if (kind_ == MetricKind::diagonal) {
      ExprMatrix inv(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i != j && !g_(i, j).is_zero()) throw DomainError("diagonal metric has off-diagonal entry g" + idx(i, j));
          if (i == j) {
            if (!g_(i, i).is_unit()) throw DomainError("diagonal entry g" + idx(i, i) + " is not invertible: " + g_(i, i).str());
            inv(i, i) = g_(i, i).unit_inverse();
          }
        }
      inv_ = std::move(inv);
    } else {
      if (!g_inv) throw DomainError("general metric requires an explicit inverse");
      if (g_inv->dim() != n) throw DomainError("inverse has wrong dimension");
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Expr s;
          for (int l = 0; l < n; ++l) s += g_(i, l) * (*g_inv)(l, j);
          if (s != Expr(i == j ? 1 : 0)) throw DomainError("metric inverse check failed at (g g^-1)" + idx(i, j) + " = " + s.str());
        }
      inv_ = std::move(*g_inv);
    }
  }

  static MetricSpec diagonal(const std::vector<Expr>& entries)
  {
    ExprMatrix g(static_cast<int>(entries.size()));
    for (int i = 0; i < g.dim(); ++i) g(i, i) = entries[i];
    return MetricSpec(std::move(g), MetricKind::diagonal);
  }

  int dim() const { return g_.dim(); }
  MetricKind kind() const { return kind_; }
  const ExprMatrix& g() const { return g_; }
  const ExprMatrix& inverse() const { return inv_; }

  /// E = 1/2 g_ij y^i y^j
  Expr energy() const
  {
    Expr e;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (!g_(i, j).is_zero()) e += g_(i, j) * Expr::y(i + 1) * Expr::y(j + 1);
    return e.scaled(Rational(1, 2));
  }

private:
  static std::string idx(int i, int j) { return "_" + std::to_string(i + 1) + std::to_string(j + 1); }

  ExprMatrix g_;
  MetricKind kind_ = MetricKind::diagonal;
  ExprMatrix inv_;
};

/// gamma_{ikj} = 1/2 (d_i g_kj + d_j g_ik - d_k g_ij), stored at (i, k, j).
inline ExprTensor<3> christoffel_lower(const MetricSpec& m)
{
  const int n = m.dim();
  ExprTensor<3> out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        Expr s = m.g()(k, j).diff(Variable::x(i + 1)) + m.g()(i, k).diff(Variable::x(j + 1)) -
                 m.g()(i, j).diff(Variable::x(k + 1));
        out(i, k, j) = s.scaled(Rational(1, 2));
      }
  return out;
}

/// gamma^k_{ij} = g^{kl} gamma_{ilj}, stored at (k, i, j).
inline ExprTensor<3> christoffel_upper(const MetricSpec& m, const ExprTensor<3>& lower)
{
  const int n = m.dim();
  ExprTensor<3> out(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Expr s;
        for (int l = 0; l < n; ++l)
          if (!m.inverse()(k, l).is_zero() && !lower(i, l, j).is_zero()) s += m.inverse()(k, l) * lower(i, l, j);
        out(k, i, j) = s;
      }
  return out;
}

// ---------------------------------------------------------------------------

/// Spray coefficients G^k of S = y^i d/dx^i - 2 G^i d/dy^i.
class SprayData {
public:
  explicit SprayData(std::vector<Expr> G) : G_(std::move(G))
  {
    for (std::size_t k = 0; k < G_.size(); ++k)
      if (!G_[k].is_y_homogeneous(2))
        throw DomainError("spray coefficient G" + std::to_string(k + 1) + " is not homogeneous of degree 2 in y: " + G_[k].str());
  }

  int dim() const { return static_cast<int>(G_.size()); }
  const Expr& operator[](int k) const { return G_[k]; }
  const std::vector<Expr>& coefficients() const { return G_; }

  friend bool operator==(const SprayData&, const SprayData&) = default;

private:
  std::vector<Expr> G_;
};

/// G^k = 1/2 y^i y^j gamma^k_{ij}
inline SprayData spray_from_metric(const MetricSpec& m)
{
  const int n = m.dim();
  const ExprTensor<3> up = christoffel_upper(m, christoffel_lower(m));
  std::vector<Expr> G(n);
  for (int k = 0; k < n; ++k) {
    Expr s;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!up(k, i, j).is_zero()) s += up(k, i, j) * Expr::y(i + 1) * Expr::y(j + 1);
    G[k] = s.scaled(Rational(1, 2));
  }
  return SprayData(std::move(G));
}

/// S as a field on TM.
inline TMField spray_field(const SprayData& s)
{
  const int n = s.dim();
  TMField S = TMField::zero(n);
  for (int i = 0; i < n; ++i) {
    S[i] = Expr::y(i + 1);
    S[n + i] = s[i].scaled(Rational(-2));
  }
  return S;
}

/// C = y^i d/dy^i
inline TMField liouville(int n)
{
  TMField C = TMField::zero(n);
  for (int i = 0; i < n; ++i) C[n + i] = Expr::y(i + 1);
  return C;
}

// ---------------------------------------------------------------------------

struct ConnectionData {
  ExprMatrix gamma1;    ///< (j, i) -> Gamma^j_i = dG^j/dy^i
  ExprTensor<3> gamma2; ///< (j, i, l) -> Gamma^j_{il} = d^2 G^j / dy^i dy^l

  int dim() const { return gamma1.dim(); }
};

inline ConnectionData connection_from_spray(const SprayData& s)
{
  const int n = s.dim();
  ConnectionData c{ExprMatrix(n), ExprTensor<3>(n)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      c.gamma1(j, i) = s[j].diff(Variable::y(i + 1));
      for (int l = 0; l < n; ++l) {
        c.gamma2(j, i, l) = c.gamma1(j, i).diff(Variable::y(l + 1));
        if (!c.gamma2(j, i, l).is_x_only()) throw InvariantError("connection coefficient depends on y");
      }
    }
  return c;
}

// ---------------------------------------------------------------------------

/// Endomorphism field of TM; column b holds the image of frame field b.
class VectorOneForm {
public:
  VectorOneForm() = default;
  explicit VectorOneForm(int n) : n_(n), m_(static_cast<std::size_t>(4 * n * n)) {}

  static VectorOneForm identity(int n)
  {
    VectorOneForm I(n);
    for (int a = 0; a < 2 * n; ++a) I(a, a) = Expr(1);
    return I;
  }

  int dim() const { return n_; }
  int slots() const { return 2 * n_; }

  Expr& operator()(int row, int col) { return m_[static_cast<std::size_t>(row * slots() + col)]; }
  const Expr& operator()(int row, int col) const { return m_[static_cast<std::size_t>(row * slots() + col)]; }

  TMField image(int col) const
  {
    TMField f = TMField::zero(n_);
    for (int r = 0; r < slots(); ++r) f[r] = (*this)(r, col);
    return f;
  }

  TMField apply(const TMField& X) const
  {
    TMField f = TMField::zero(n_);
    for (int b = 0; b < slots(); ++b) {
      if (X[b].is_zero()) continue;
      for (int r = 0; r < slots(); ++r)
        if (!(*this)(r, b).is_zero()) f[r] += (*this)(r, b) * X[b];
    }
    return f;
  }

  /// (K * L)(X) = K(L(X))
  friend VectorOneForm operator*(const VectorOneForm& K, const VectorOneForm& L)
  {
    VectorOneForm P(K.n_);
    for (int c = 0; c < K.slots(); ++c) {
      const TMField img = K.apply(L.image(c));
      for (int r = 0; r < K.slots(); ++r) P(r, c) = img[r];
    }
    return P;
  }

  friend VectorOneForm operator+(VectorOneForm a, const VectorOneForm& b)
  {
    for (std::size_t i = 0; i < a.m_.size(); ++i) a.m_[i] += b.m_[i];
    return a;
  }
  friend VectorOneForm operator-(VectorOneForm a, const VectorOneForm& b)
  {
    for (std::size_t i = 0; i < a.m_.size(); ++i) a.m_[i] -= b.m_[i];
    return a;
  }

  VectorOneForm scaled(const Rational& s) const
  {
    VectorOneForm r(*this);
    for (auto& e : r.m_) e = e.scaled(s);
    return r;
  }

  bool is_zero() const
  {
    for (const auto& e : m_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend bool operator==(const VectorOneForm&, const VectorOneForm&) = default;

private:
  int n_ = 0;
  std::vector<Expr> m_;
};

/// J(d/dx^i) = d/dy^i, J(d/dy^i) = 0.
inline VectorOneForm tangent_structure(int n)
{
  if (n < 2) throw DomainError("dimension must be at least 2");
  VectorOneForm J(n);
  for (int i = 0; i < n; ++i) J(n + i, i) = Expr(1);
  return J;
}

struct Projectors {
  VectorOneForm h;
  VectorOneForm v;
};

/// h(d/dx^i) = d/dx^i - Gamma^j_i d/dy^j, h(d/dy^j) = 0, v = I - h.
inline Projectors projectors(const ConnectionData& c)
{
  const int n = c.dim();
  VectorOneForm h(n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = Expr(1);
    for (int j = 0; j < n; ++j) h(n + j, i) = -c.gamma1(j, i);
  }
  VectorOneForm v = VectorOneForm::identity(n) - h;
  return {std::move(h), std::move(v)};
}

/// Gamma = 2h - I as a vector 1-form.
inline VectorOneForm connection_form(const ConnectionData& c)
{
  return projectors(c).h.scaled(Rational(2)) - VectorOneForm::identity(c.dim());
}

// ---------------------------------------------------------------------------

/// Vector-valued 2-form on TM, tabulated on pairs of frame fields.
class VectorTwoForm {
public:
  VectorTwoForm() = default;
  explicit VectorTwoForm(int n) : n_(n), table_(static_cast<std::size_t>(4 * n * n), TMField::zero(n)) {}

  int dim() const { return n_; }
  int slots() const { return 2 * n_; }

  TMField& operator()(int a, int b) { return table_[static_cast<std::size_t>(a * slots() + b)]; }
  const TMField& operator()(int a, int b) const { return table_[static_cast<std::size_t>(a * slots() + b)]; }

  VectorTwoForm scaled(const Rational& s) const
  {
    VectorTwoForm r(*this);
    for (auto& f : r.table_) f = f.scaled(s);
    return r;
  }

  bool is_antisymmetric() const
  {
    for (int a = 0; a < slots(); ++a)
      for (int b = a; b < slots(); ++b)
        if ((*this)(a, b) + (*this)(b, a) != TMField::zero(n_)) return false;
    return true;
  }

  bool is_zero() const
  {
    for (const auto& f : table_)
      if (!f.is_zero()) return false;
    return true;
  }

  friend bool operator==(const VectorTwoForm&, const VectorTwoForm&) = default;

private:
  int n_ = 0;
  std::vector<TMField> table_;
};

/// [K,L](X,Y) = [KX,LY] + [LX,KY] + KL[X,Y] + LK[X,Y] - K[LX,Y] - L[KX,Y] - K[X,LY] - L[X,KY]
inline TMField fn_bracket_on(const VectorOneForm& K, const VectorOneForm& L, const TMField& X, const TMField& Y)
{
  const TMField KX = K.apply(X), LX = L.apply(X), KY = K.apply(Y), LY = L.apply(Y);
  const TMField XY = bracket_tm(X, Y);
  TMField out = bracket_tm(KX, LY) + bracket_tm(LX, KY);
  if (!XY.is_zero()) out += K.apply(L.apply(XY)) + L.apply(K.apply(XY));
  out -= K.apply(bracket_tm(LX, Y));
  out -= L.apply(bracket_tm(KX, Y));
  out -= K.apply(bracket_tm(X, LY));
  out -= L.apply(bracket_tm(X, KY));
  return out;
}

inline VectorTwoForm fn_bracket(const VectorOneForm& K, const VectorOneForm& L)
{
  const int n = K.dim();
  VectorTwoForm out(n);
  for (int a = 0; a < 2 * n; ++a) {
    const TMField X = TMField::frame(n, a);
    for (int b = a + 1; b < 2 * n; ++b) {
      out(a, b) = fn_bracket_on(K, L, X, TMField::frame(n, b));
      out(b, a) = out(a, b).scaled(Rational(-1));
    }
  }
  return out;
}

/// N_L = 1/2 [L, L]
inline VectorTwoForm nijenhuis(const VectorOneForm& L) { return fn_bracket(L, L).scaled(Rational(1, 2)); }

// ---------------------------------------------------------------------------

struct CurvatureData {
  ExprTensor<3> r1; ///< (k, i, j) -> R^k_{ij}, linear in y
  ExprTensor<4> r2; ///< (k, l, i, j) -> R^k_{l,ij}, x only

  int dim() const { return r1.dim(); }
  bool is_zero() const { return r1.is_zero(); }
};

/// R^k_{ij} = dGamma^k_i/dx^j - dGamma^k_j/dx^i + Gamma^l_i dGamma^k_j/dy^l - Gamma^l_j dGamma^k_i/dy^l
inline CurvatureData curvature(const ConnectionData& c)
{
  const int n = c.dim();
  CurvatureData r{ExprTensor<3>(n), ExprTensor<4>(n)};
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Expr s = c.gamma1(k, i).diff(Variable::x(j + 1)) - c.gamma1(k, j).diff(Variable::x(i + 1));
        for (int l = 0; l < n; ++l) {
          const Variable yl = Variable::y(l + 1);
          if (!c.gamma1(l, i).is_zero()) s += c.gamma1(l, i) * c.gamma1(k, j).diff(yl);
          if (!c.gamma1(l, j).is_zero()) s -= c.gamma1(l, j) * c.gamma1(k, i).diff(yl);
        }
        r.r1(k, i, j) = s;
      }
  // Semi-basic components by coefficient matching in y.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Expr back;
        for (int l = 0; l < n; ++l) {
          Expr e = r.r1(k, i, j).diff(Variable::y(l + 1));
          if (!e.is_x_only()) throw InvariantError("curvature component is not linear in y");
          back += Expr::y(l + 1) * e;
          r.r2(k, l, i, j) = std::move(e);
        }
        if (back != r.r1(k, i, j)) throw InvariantError("curvature component has residual y-degree other than 1");
      }
  return r;
}

/// R(d/dx^i, d/dx^j) = R^k_{ij} d/dy^k, zero on every pair involving a vertical field.
inline VectorTwoForm semibasic_form(const CurvatureData& r)
{
  const int n = r.dim();
  VectorTwoForm out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i, j)[n + k] = r.r1(k, i, j);
  return out;
}

/// Potential R° = i_S R, stored at (k, j) as y^i R^k_{ij}.
inline ExprMatrix curvature_potential(const SprayData& s, const CurvatureData& r)
{
  const int n = s.dim();
  ExprMatrix out(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      Expr e;
      for (int i = 0; i < n; ++i)
        if (!r.r1(k, i, j).is_zero()) e += Expr::y(i + 1) * r.r1(k, i, j);
      out(k, j) = e;
    }
  return out;
}

/// Every pipeline stage for one metric.
struct Geometry {
  MetricSpec metric;
  SprayData spray;
  ConnectionData connection;
  CurvatureData curvature;

  static Geometry from_metric(MetricSpec m)
  {
    SprayData s = spray_from_metric(m);
    ConnectionData c = connection_from_spray(s);
    CurvatureData r = ::spraylie::curvature(c);
    return Geometry{std::move(m), std::move(s), std::move(c), std::move(r)};
  }

  int dim() const { return metric.dim(); }
};

} // namespace spraylie

#endif // SPRAYLIE_GEOM_HPP
