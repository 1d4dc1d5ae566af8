#ifndef SPRAYLIE_VECTOR_FIELDS_HPP
#define SPRAYLIE_VECTOR_FIELDS_HPP

// Vector fields on M (x-only components) and on TM (components over the
// frame d/dx^1..d/dx^n, d/dy^1..d/dy^n), their brackets and the complete lift.

#include "spraylie/symexpr.hpp"

#include <string>
#include <vector>

namespace spraylie {

class BaseField {
public:
  BaseField() = default;
  explicit BaseField(std::vector<Expr> components) : comps_(std::move(components))
  {
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (!comps_[i].is_x_only())
        throw DomainError("base field component " + std::to_string(i + 1) + " depends on y: " + comps_[i].str());
  }

  static BaseField zero(int n) { return BaseField(std::vector<Expr>(n)); }

  /// d/dx^i, 1-based.
  static BaseField coordinate(int n, int i)
  {
    std::vector<Expr> c(n);
    c[i - 1] = Expr(1);
    return BaseField(std::move(c));
  }

  int dim() const { return static_cast<int>(comps_.size()); }
  const Expr& operator[](int i) const { return comps_[i]; }
  const std::vector<Expr>& components() const { return comps_; }

  bool is_zero() const
  {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// X(f) = X^i df/dx^i
  Expr apply(const Expr& f) const
  {
    Expr out;
    for (int i = 0; i < dim(); ++i)
      if (!comps_[i].is_zero()) out += comps_[i] * f.diff(Variable::x(i + 1));
    return out;
  }

  friend BaseField operator+(const BaseField& a, const BaseField& b)
  {
    std::vector<Expr> c(a.comps_);
    for (int i = 0; i < a.dim(); ++i) c[i] += b.comps_[i];
    return BaseField(std::move(c));
  }
  friend BaseField operator-(const BaseField& a, const BaseField& b) { return a + b.scaled(Rational(-1)); }

  BaseField scaled(const Rational& s) const
  {
    std::vector<Expr> c;
    for (const auto& e : comps_) c.push_back(e.scaled(s));
    return BaseField(std::move(c));
  }

  friend bool operator==(const BaseField&, const BaseField&) = default;

  std::string str() const
  {
    std::string s;
    for (int i = 0; i < dim(); ++i) {
      if (comps_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + comps_[i].str() + ")*d/dx" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
  }

private:
  std::vector<Expr> comps_;
};

class TMField {
public:
  TMField() = default;
  explicit TMField(std::vector<Expr> components) : comps_(std::move(components))
  {
    if (comps_.size() % 2 != 0) throw DomainError("tangent-bundle field needs 2n components");
  }

  static TMField zero(int n) { return TMField(std::vector<Expr>(2 * n)); }

  /// Frame field with 0-based slot a in [0, 2n): a < n is d/dx^(a+1), else d/dy^(a-n+1).
  static TMField frame(int n, int a)
  {
    std::vector<Expr> c(2 * n);
    c[a] = Expr(1);
    return TMField(std::move(c));
  }

  int dim() const { return static_cast<int>(comps_.size() / 2); }
  int slots() const { return static_cast<int>(comps_.size()); }
  const Expr& operator[](int a) const { return comps_[a]; }
  Expr& operator[](int a) { return comps_[a]; }
  const std::vector<Expr>& components() const { return comps_; }

  static Variable slot_variable(int n, int a) { return a < n ? Variable::x(a + 1) : Variable::y(a - n + 1); }

  bool is_zero() const
  {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  bool is_projectable() const
  {
    for (int i = 0; i < dim(); ++i)
      if (!comps_[i].is_x_only()) return false;
    return true;
  }

  /// Directional derivative X(f).
  Expr apply(const Expr& f) const
  {
    const int n = dim();
    Expr out;
    for (int a = 0; a < slots(); ++a)
      if (!comps_[a].is_zero()) out += comps_[a] * f.diff(slot_variable(n, a));
    return out;
  }

  TMField& operator+=(const TMField& o)
  {
    for (int a = 0; a < slots(); ++a) comps_[a] += o.comps_[a];
    return *this;
  }
  TMField& operator-=(const TMField& o)
  {
    for (int a = 0; a < slots(); ++a) comps_[a] -= o.comps_[a];
    return *this;
  }
  friend TMField operator+(TMField a, const TMField& b) { return a += b; }
  friend TMField operator-(TMField a, const TMField& b) { return a -= b; }

  TMField scaled(const Rational& s) const
  {
    TMField r(*this);
    for (auto& c : r.comps_) c = c.scaled(s);
    return r;
  }

  friend TMField operator*(const Expr& f, const TMField& X)
  {
    TMField r(X);
    for (auto& c : r.comps_) c = f * c;
    return r;
  }

  friend bool operator==(const TMField&, const TMField&) = default;

  std::string str() const
  {
    const int n = dim();
    std::string s;
    for (int a = 0; a < slots(); ++a) {
      if (comps_[a].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + comps_[a].str() + ")*d/d" + slot_variable(n, a).name();
    }
    return s.empty() ? "0" : s;
  }

private:
  std::vector<Expr> comps_;
};

/// [X, Y]^a = X(Y^a) - Y(X^a)
inline TMField bracket_tm(const TMField& X, const TMField& Y)
{
  TMField out = TMField::zero(X.dim());
  for (int a = 0; a < X.slots(); ++a) out[a] = X.apply(Y[a]) - Y.apply(X[a]);
  return out;
}

inline BaseField bracket_base(const BaseField& X, const BaseField& Y)
{
  std::vector<Expr> c(X.dim());
  for (int i = 0; i < X.dim(); ++i) c[i] = X.apply(Y[i]) - Y.apply(X[i]);
  return BaseField(std::move(c));
}

/// X^i d/dx^i + y^j dX^i/dx^j d/dy^i
inline TMField complete_lift(const BaseField& X)
{
  const int n = X.dim();
  TMField out = TMField::zero(n);
  for (int i = 0; i < n; ++i) {
    out[i] = X[i];
    Expr vert;
    for (int j = 0; j < n; ++j) {
      Expr d = X[i].diff(Variable::x(j + 1));
      if (!d.is_zero()) vert += Expr::y(j + 1) * d;
    }
    out[n + i] = vert;
  }
  return out;
}

} // namespace spraylie

#endif // SPRAYLIE_VECTOR_FIELDS_HPP
