#ifndef SPRAYLIE_TESTS_SUPPORT_HPP
#define SPRAYLIE_TESTS_SUPPORT_HPP

#include "spraylie/cli/problem.hpp"
#include "spraylie/geom.hpp"
#include "spraylie/liealg.hpp"
#include "spraylie/parser.hpp"
#include "spraylie/vector_fields.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace spraylie;

inline Expr E(const std::string& s) { return parse_expr(s); }

inline std::string problem_path(const std::string& name) { return std::string(SPRAYLIE_PROBLEMS_DIR) + "/" + name; }

inline MetricSpec diag(std::initializer_list<const char*> entries)
{
  std::vector<Expr> d;
  for (const char* e : entries) d.push_back(E(e));
  return MetricSpec::diagonal(d);
}

inline MetricSpec euclidean(int n)
{
  return MetricSpec::diagonal(std::vector<Expr>(static_cast<std::size_t>(n), Expr(1)));
}

/// diag(e^{x3}, e^{x3}, 1) on R^3.
inline MetricSpec warped_metric() { return diag({"exp(x3)", "exp(x3)", "1"}); }
/// diag(e^{x2}, 1, e^{x4}, 1) on R^4.
inline MetricSpec product_metric() { return diag({"exp(x2)", "1", "exp(x4)", "1"}); }
/// diag(e^{x1}, e^{x2}, e^{x3}) on R^3.
inline MetricSpec flat_metric() { return diag({"exp(x1)", "exp(x2)", "exp(x3)"}); }

inline BaseField field(std::initializer_list<const char*> comps)
{
  std::vector<Expr> c;
  for (const char* e : comps) c.push_back(E(e));
  return BaseField(std::move(c));
}

inline TMField tm_field(std::initializer_list<const char*> comps)
{
  std::vector<Expr> c;
  for (const char* e : comps) c.push_back(E(e));
  return TMField(std::move(c));
}

inline cli::ProblemFile problem(const std::string& file) { return cli::load_problem_file(problem_path(file)); }

inline StructureConstants structure_constants(const cli::NamedSet& set)
{
  return structure_constants_from_fields<BaseField>(set.fields, set.members, bracket_base);
}

/// Structure constants read off a transcribed multiplication table.
inline StructureConstants table_constants(const cli::ProblemFile& pf, const std::string& name)
{
  const cli::NamedSet& set = pf.set(name);
  const auto& cells = pf.expected_tables.at(name);
  StructureConstants sc(set.members);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < cells[i].size(); ++j) {
      const RationalVector v = cli::parse_combination(cells[i][j], set.members);
      for (std::size_t k = 0; k < v.size(); ++k) sc(k, i, j) = v[k];
    }
  return sc;
}

inline StructureConstants abelian(std::size_t m)
{
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("b" + std::to_string(i));
  return StructureConstants(names);
}

inline Subspace span_of(const cli::NamedSet& set, std::initializer_list<const char*> combos)
{
  std::vector<RationalVector> vs;
  for (const char* c : combos) vs.push_back(cli::parse_combination(c, set.members));
  return Subspace::span(set.members.size(), vs);
}

/// Small random elements of the ring; y-free when with_y is false.
class RandomExpr {
public:
  explicit RandomExpr(std::uint64_t seed, int n = 3) : rng_(seed), n_(n) {}

  Rational small_rational()
  {
    static const long nums[] = {-3, -2, -1, 1, 2, 3};
    static const long dens[] = {1, 1, 2, 3};
    return make_rational(nums[rng_() % 6], dens[rng_() % 4]);
  }

  LinForm linear_form()
  {
    static const long half[] = {-2, -1, 0, 0, 1, 2};
    LinForm l;
    for (int i = 1; i <= n_; ++i) l += LinForm::variable(i, make_rational(half[rng_() % 6], 2));
    return l;
  }

  Expr term(bool with_y)
  {
    Monomial m;
    for (int i = 1; i <= n_; ++i) {
      const int ex = static_cast<int>(rng_() % 4) - 1;
      if (ex > 0) m.multiply(Variable::x(i), ex);
      if (with_y) {
        const int ey = static_cast<int>(rng_() % 3) - 1;
        if (ey > 0) m.multiply(Variable::y(i), ey);
      }
    }
    const LinForm l = rng_() % 2 ? linear_form() : LinForm{};
    return Expr::term(small_rational(), m, l);
  }

  Expr expr(bool with_y, int max_terms = 3)
  {
    Expr e;
    const int t = 1 + static_cast<int>(rng_() % static_cast<unsigned>(max_terms));
    for (int k = 0; k < t; ++k) e += term(with_y);
    return e;
  }

  BaseField base_field(int max_terms = 2)
  {
    std::vector<Expr> c;
    for (int i = 0; i < n_; ++i) c.push_back(rng_() % 3 ? expr(false, max_terms) : Expr());
    return BaseField(std::move(c));
  }

  /// diag(c_i exp(l_i)) with positive c_i.
  MetricSpec diagonal_exponential_metric()
  {
    std::vector<Expr> d;
    for (int i = 0; i < n_; ++i) {
      Rational c = small_rational();
      if (c < 0) c = -c;
      d.push_back(Expr::term(c, Monomial{}, linear_form()));
    }
    return MetricSpec::diagonal(d);
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
  int n_;
};

} // namespace testing_support

#endif
