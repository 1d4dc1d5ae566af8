#ifndef SPRAYLIE_SYMEXPR_HPP
#define SPRAYLIE_SYMEXPR_HPP

// Exact scalar ring Q[x1..xn, y1..yn] (x) exp(Q-linear forms in x).
//
// Every element is stored in a unique normal form: a map from
// (exponential factor, monomial) keys to nonzero rational coefficients.
// Distinct keys are linearly independent functions, so structural equality
// of two normal forms decides mathematical equality.

#include "spraylie/rational.hpp"

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

namespace spraylie {

enum class VarKind : std::uint8_t { x = 0, y = 1 };

/// Coordinate variable x^i (base) or y^i (fibre), 1-based index.
struct Variable {
  VarKind kind = VarKind::x;
  int index = 1;

  static constexpr Variable x(int i) { return {VarKind::x, i}; }
  static constexpr Variable y(int i) { return {VarKind::y, i}; }

  std::string name() const { return (kind == VarKind::x ? "x" : "y") + std::to_string(index); }

  friend constexpr auto operator<=>(const Variable&, const Variable&) = default;
};

/// Assignment of rational values to variables.
using Point = std::map<Variable, Rational>;

inline void require_declared(Variable v)
{
  if (v.index < 1) throw DomainError("undeclared variable " + v.name());
}

// ---------------------------------------------------------------------------

/// Q-linear form sum_i c_i x^i in the base variables; used as an exponent.
class LinForm {
public:
  using CoefficientMap = std::map<int, Rational>;

  LinForm() = default;

  static LinForm variable(int i, const Rational& c = Rational(1))
  {
    LinForm l;
    l.add(i, c);
    return l;
  }

  const CoefficientMap& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  Rational coefficient(int i) const
  {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add(int i, const Rational& c)
  {
    require_declared(Variable::x(i));
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  LinForm& operator+=(const LinForm& o)
  {
    for (const auto& [i, c] : o.coeffs_) add(i, c);
    return *this;
  }
  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  LinForm operator-() const { return scaled(Rational(-1)); }
  friend LinForm operator-(LinForm a, const LinForm& b) { return a += -b; }

  LinForm scaled(const Rational& s) const
  {
    LinForm r;
    if (s.is_zero()) return r;
    for (const auto& [i, c] : coeffs_) r.coeffs_.emplace(i, c * s);
    return r;
  }

  Rational value_at(const Point& p) const
  {
    Rational v(0);
    for (const auto& [i, c] : coeffs_) {
      auto it = p.find(Variable::x(i));
      if (it == p.end()) throw DomainError("missing assignment for " + Variable::x(i).name());
      v += c * it->second;
    }
    return v;
  }

  friend bool operator==(const LinForm&, const LinForm&) = default;

  /// Lexicographic by (variable index, coefficient).
  friend std::strong_ordering compare(const LinForm& a, const LinForm& b)
  {
    auto ia = a.coeffs_.begin();
    auto ib = b.coeffs_.begin();
    for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first <=> ib->first;
      if (ia->second != ib->second)
        return ia->second < ib->second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (ia == a.coeffs_.end() && ib == b.coeffs_.end()) return std::strong_ordering::equal;
    return ia == a.coeffs_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  std::string str() const
  {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : coeffs_) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (mag != 1) out += to_string(mag) + "*";
      out += Variable::x(i).name();
      first = false;
    }
    return out;
  }

private:
  CoefficientMap coeffs_;
};

// ---------------------------------------------------------------------------

/// Power product of x and y variables with positive exponents.
class Monomial {
public:
  using ExponentMap = std::map<int, int>;

  Monomial() = default;

  static Monomial variable(Variable v, int e = 1)
  {
    Monomial m;
    m.multiply(v, e);
    return m;
  }

  const ExponentMap& x_exponents() const { return x_; }
  const ExponentMap& y_exponents() const { return y_; }

  int exponent(Variable v) const
  {
    const auto& m = v.kind == VarKind::x ? x_ : y_;
    auto it = m.find(v.index);
    return it == m.end() ? 0 : it->second;
  }

  void multiply(Variable v, int e)
  {
    require_declared(v);
    if (e == 0) return;
    auto& m = v.kind == VarKind::x ? x_ : y_;
    int& slot = m[v.index];
    slot += e;
    if (slot < 0) throw InvariantError("negative monomial exponent");
    if (slot == 0) m.erase(v.index);
  }

  friend Monomial operator*(Monomial a, const Monomial& b)
  {
    for (const auto& [i, e] : b.x_) a.multiply(Variable::x(i), e);
    for (const auto& [i, e] : b.y_) a.multiply(Variable::y(i), e);
    return a;
  }

  bool is_one() const { return x_.empty() && y_.empty(); }
  int x_degree() const { return sum(x_); }
  int y_degree() const { return sum(y_); }
  int degree() const { return x_degree() + y_degree(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Graded order: lower total degree first; within a degree, the monomial with
  /// the larger exponent on the earliest variable (x1 < ... < xn < y1 < ...) first.
  friend std::strong_ordering compare(const Monomial& a, const Monomial& b)
  {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = lex(a.x_, b.x_); c != 0) return c;
    return lex(a.y_, b.y_);
  }

  std::string str() const
  {
    std::string out;
    auto emit = [&out](VarKind k, const ExponentMap& m) {
      for (const auto& [i, e] : m) {
        if (!out.empty()) out += "*";
        out += Variable{k, i}.name();
        if (e != 1) out += "^" + std::to_string(e);
      }
    };
    emit(VarKind::x, x_);
    emit(VarKind::y, y_);
    return out.empty() ? "1" : out;
  }

private:
  static int sum(const ExponentMap& m)
  {
    int s = 0;
    for (const auto& [i, e] : m) s += e;
    return s;
  }

  static std::strong_ordering lex(const ExponentMap& a, const ExponentMap& b)
  {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first < ib->first ? std::strong_ordering::less : std::strong_ordering::greater;
      if (ia->second != ib->second) return ia->second > ib->second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (ia == a.end() && ib == b.end()) return std::strong_ordering::equal;
    return ia == a.end() ? std::strong_ordering::greater : std::strong_ordering::less;
  }

  ExponentMap x_;
  ExponentMap y_;
};

/// Key of one term: exponential factor first, then the monomial.
struct TermKey {
  LinForm exponent;
  Monomial monomial;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend bool operator<(const TermKey& a, const TermKey& b)
  {
    if (auto c = compare(a.exponent, b.exponent); c != 0) return c < 0;
    return compare(a.monomial, b.monomial) < 0;
  }
};

// ---------------------------------------------------------------------------

/// Canonical expression: finite sum of c * monomial * exp(linear form).
class Expr {
public:
  using TermMap = std::map<TermKey, Rational>;

  Expr() = default;
  Expr(const Rational& c) { add_term(TermKey{}, c); }
  Expr(long c) : Expr(Rational(c)) {}
  Expr(int c) : Expr(Rational(c)) {}

  static Expr variable(Variable v) { return term(Rational(1), Monomial::variable(v), LinForm{}); }
  static Expr x(int i) { return variable(Variable::x(i)); }
  static Expr y(int i) { return variable(Variable::y(i)); }
  static Expr exponential(const LinForm& l) { return term(Rational(1), Monomial{}, l); }

  static Expr term(const Rational& c, Monomial m, LinForm l)
  {
    Expr e;
    e.add_term(TermKey{std::move(l), std::move(m)}, c);
    return e;
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::optional<Rational> constant_value() const
  {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first == TermKey{}) return terms_.begin()->second;
    return std::nullopt;
  }

  bool is_x_only() const
  {
    for (const auto& [k, c] : terms_)
      if (!k.monomial.y_exponents().empty()) return false;
    return true;
  }

  /// True when every term has y-degree exactly d (vacuously for zero).
  bool is_y_homogeneous(int d) const
  {
    for (const auto& [k, c] : terms_)
      if (k.monomial.y_degree() != d) return false;
    return true;
  }

  /// Units of the ring: c * exp(l) with c != 0.
  bool is_unit() const { return terms_.size() == 1 && terms_.begin()->first.monomial.is_one(); }

  Expr unit_inverse() const
  {
    if (!is_unit()) throw DomainError("division by non-unit " + str());
    const auto& [k, c] = *terms_.begin();
    return term(Rational(1) / c, Monomial{}, -k.exponent);
  }

  std::set<Variable> variables() const
  {
    std::set<Variable> vs;
    for (const auto& [k, c] : terms_) {
      for (const auto& [i, e] : k.monomial.x_exponents()) vs.insert(Variable::x(i));
      for (const auto& [i, e] : k.monomial.y_exponents()) vs.insert(Variable::y(i));
      for (const auto& [i, a] : k.exponent.coefficients()) vs.insert(Variable::x(i));
    }
    return vs;
  }

  Expr diff(Variable v) const
  {
    require_declared(v);
    Expr out;
    for (const auto& [k, c] : terms_) {
      if (const int e = k.monomial.exponent(v); e > 0) {
        Monomial m = k.monomial;
        m.multiply(v, -1);
        out.add_term(TermKey{k.exponent, std::move(m)}, c * e);
      }
      if (v.kind == VarKind::x) {
        if (Rational a = k.exponent.coefficient(v.index); !a.is_zero()) out.add_term(k, c * a);
      }
    }
    return out;
  }

  /// Floating-point value at a rational point; the exponential of each term is applied last.
  double eval(const Point& p) const
  {
    double total = 0.0;
    for (const auto& [k, c] : terms_) {
      double v = to_double(c);
      auto power = [&](VarKind kind, const Monomial::ExponentMap& m) {
        for (const auto& [i, e] : m) {
          auto it = p.find(Variable{kind, i});
          if (it == p.end()) throw DomainError("missing assignment for " + Variable{kind, i}.name());
          v *= std::pow(to_double(it->second), e);
        }
      };
      power(VarKind::x, k.monomial.x_exponents());
      power(VarKind::y, k.monomial.y_exponents());
      if (!k.exponent.empty()) v *= std::exp(to_double(k.exponent.value_at(p)));
      total += v;
    }
    return total;
  }

  Expr& operator+=(const Expr& o)
  {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  Expr& operator-=(const Expr& o)
  {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  Expr& operator*=(const Expr& o)
  {
    *this = *this * o;
    return *this;
  }

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  Expr operator-() const { return scaled(Rational(-1)); }

  friend Expr operator*(const Expr& a, const Expr& b)
  {
    Expr out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        out.add_term(TermKey{ka.exponent + kb.exponent, ka.monomial * kb.monomial}, ca * cb);
    return out;
  }

  Expr scaled(const Rational& s) const
  {
    Expr out;
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * s);
    return out;
  }

  Expr pow(int e) const
  {
    if (e < 0) return unit_inverse().pow(-e);
    Expr result(1);
    Expr base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Expr&, const Expr&) = default;

  /// Canonical text in the input grammar; parsing it reproduces the same normal form.
  std::string str() const
  {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string factors;
      auto push = [&factors](const std::string& f) {
        if (!factors.empty()) factors += "*";
        factors += f;
      };
      if (!k.monomial.is_one()) push(k.monomial.str());
      if (!k.exponent.empty()) push("exp(" + k.exponent.str() + ")");
      if (factors.empty())
        out += to_string(mag);
      else if (mag == 1)
        out += factors;
      else
        out += to_string(mag) + "*" + factors;
      first = false;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

private:
  void add_term(const TermKey& k, const Rational& c)
  {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TermMap terms_;
};

inline Expr operator*(const Rational& s, const Expr& e) { return e.scaled(s); }

inline Expr diff(const Expr& e, Variable v) { return e.diff(v); }

inline double eval_at(const Expr& e, const Point& p) { return e.eval(p); }

} // namespace spraylie

#endif // SPRAYLIE_SYMEXPR_HPP
