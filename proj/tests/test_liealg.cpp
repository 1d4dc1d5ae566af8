#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace spraylie;
using namespace testing_support;

namespace {

const cli::ProblemFile& warped() { static const cli::ProblemFile p = problem("warped_r3.json"); return p; }
const cli::ProblemFile& product() { static const cli::ProblemFile p = problem("product_r4.json"); return p; }
const cli::ProblemFile& flat() { static const cli::ProblemFile p = problem("flat_exponential_r3.json"); return p; }

const StructureConstants& warped_sc() { static const StructureConstants s = structure_constants(warped().set("A")); return s; }
const StructureConstants& product_sc() { static const StructureConstants s = structure_constants(product().set("A")); return s; }
const StructureConstants& flat_as_sc() { static const StructureConstants s = structure_constants(flat().set("AS")); return s; }
const StructureConstants& flat_ag_sc() { static const StructureConstants s = structure_constants(flat().set("Ag")); return s; }

/// Structure constants in the basis f_j = sum_a P(a, j) b_a.
StructureConstants change_basis(const StructureConstants& sc, const RationalMatrix& P)
{
  const std::size_t m = sc.dim();
  StructureConstants out(sc.names());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const RationalVector b = sc.bracket(P.column(i), P.column(j));
      const auto c = solve(P, b);
      if (!c) throw std::runtime_error("singular basis change");
      for (std::size_t k = 0; k < m; ++k) out(k, i, j) = (*c)[k];
    }
  return out;
}

std::set<std::pair<std::string, std::string>> mismatched_cells(const StructureConstants& a, const StructureConstants& b)
{
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.bracket_basis(i, j) != b.bracket_basis(i, j)) out.emplace(a.names()[i], a.names()[j]);
  return out;
}

RationalVector cell(const StructureConstants& sc, const cli::NamedSet& set, const char* a, const char* b)
{
  return sc.bracket_basis(set.index_of(a), set.index_of(b));
}

RationalVector combo(const cli::NamedSet& set, const char* text) { return cli::parse_combination(text, set.members); }

} // namespace

// --- structure constants ----------------------------------------------------

TEST(StructureConstantsTest, WarpedMatchesTranscribedTable)
{
  EXPECT_EQ(warped_sc(), table_constants(warped(), "A"));
  const auto& A = warped().set("A");
  EXPECT_EQ(cell(warped_sc(), A, "e1", "e4"), combo(A, "-e1"));
  EXPECT_EQ(cell(warped_sc(), A, "e3", "e5"), combo(A, "e6"));
  EXPECT_EQ(cell(warped_sc(), A, "e5", "e1"), combo(A, "-e4/2"));
  EXPECT_EQ(cell(warped_sc(), A, "e1", "e3"), combo(A, "e2/2"));
}

TEST(StructureConstantsTest, ProductTableIsTheTranscribedTableUpToRescaling)
{
  const auto& A = product().set("A");
  EXPECT_EQ(cell(product_sc(), A, "e1", "e2"), combo(A, "e1/2"));
  EXPECT_EQ(cell(product_sc(), A, "e4", "e6"), combo(A, "-e5"));
  for (const char* a : {"e1", "e2", "e3"})
    for (const char* b : {"e4", "e5", "e6"}) EXPECT_EQ(cell(product_sc(), A, a, b), combo(A, "0"));
  // The transcribed table is the table of (e1, -2 e2, e3, e4, -2 e5, e6).
  const StructureConstants transcribed = table_constants(product(), "A");
  EXPECT_EQ(mismatched_cells(product_sc(), transcribed).size(), 12u);
  RationalMatrix P = RationalMatrix::identity(6);
  P(1, 1) = -2;
  P(4, 4) = -2;
  EXPECT_EQ(change_basis(product_sc(), P), transcribed);
}

TEST(StructureConstantsTest, FlatIsometriesMatchTranscribedTable)
{
  EXPECT_EQ(flat_ag_sc(), table_constants(flat(), "Ag"));
  const auto& Ag = flat().set("Ag");
  EXPECT_EQ(cell(flat_ag_sc(), Ag, "g1", "g2"), combo(Ag, "g4/2"));
}

TEST(StructureConstantsTest, FlatSymmetryTableDiffersInThreeCells)
{
  const StructureConstants transcribed = table_constants(flat(), "AS");
  const std::set<std::pair<std::string, std::string>> expected = {{"e2", "e8"}, {"e8", "e2"}, {"e10", "e7"}};
  EXPECT_EQ(mismatched_cells(flat_as_sc(), transcribed), expected);
  // The transcription is not antisymmetric at (e7, e10); the computed table is.
  EXPECT_FALSE(transcribed.is_antisymmetric());
  EXPECT_TRUE(flat_as_sc().is_antisymmetric());
}

TEST(StructureConstantsTest, AbelianPair)
{
  const std::vector<BaseField> gens = {BaseField::coordinate(2, 1), BaseField::coordinate(2, 2)};
  const StructureConstants sc = structure_constants_from_fields<BaseField>(gens, {"d1", "d2"}, bracket_base);
  EXPECT_EQ(sc, abelian(2));
}

TEST(StructureConstantsTest, NonClosureNamesThePair)
{
  const std::vector<BaseField> gens = {BaseField::coordinate(2, 1), field({"0", "x1^2"})};
  try {
    structure_constants_from_fields<BaseField>(gens, {"a", "b"}, bracket_base);
    FAIL() << "expected NonClosureError";
  } catch (const NonClosureError& e) {
    EXPECT_EQ(e.first(), 0u);
    EXPECT_EQ(e.second(), 1u);
    EXPECT_NE(std::string(e.what()).find("[a, b] = "), std::string::npos) << e.what();
  }
}

TEST(StructureConstantsTest, DependentGeneratorsAreRejected)
{
  const std::vector<BaseField> gens = {BaseField::coordinate(2, 1), BaseField::coordinate(2, 1).scaled(2)};
  EXPECT_THROW(structure_constants_from_fields<BaseField>(gens, {"a", "b"}, bracket_base), DomainError);
  EXPECT_THROW(structure_constants_from_fields<BaseField>(gens, {"a"}, bracket_base), DomainError);
}

TEST(StructureConstantsTest, RestrictionToNonSubalgebraFails)
{
  const auto& A = warped().set("A");
  EXPECT_THROW(warped_sc().restricted(span_of(A, {"e1", "e3"})), NonClosureError);
}

// --- Jacobi -----------------------------------------------------------------

TEST(Jacobi, ComputedTablesPass)
{
  for (const auto* sc : {&warped_sc(), &product_sc(), &flat_as_sc(), &flat_ag_sc()}) EXPECT_TRUE(jacobi_check(*sc).holds);
  EXPECT_TRUE(jacobi_check(table_constants(warped(), "A")).holds);
  EXPECT_TRUE(jacobi_check(table_constants(product(), "A")).holds);
}

TEST(Jacobi, FaultInjectionIsLocated)
{
  StructureConstants sc = warped_sc();
  sc(1, 0, 2) += 1; // [e1, e3] gains +e2
  const JacobiVerdict v = jacobi_check(sc);
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.value.is_zero());
  EXPECT_LT(v.i, v.j);
  EXPECT_LT(v.j, v.k);
  const bool touches = v.i == 0 || v.j == 0 || v.k == 0 || v.i == 2 || v.j == 2 || v.k == 2;
  EXPECT_TRUE(touches);
}

TEST(Jacobi, TranscribedFlatTableFails)
{
  EXPECT_FALSE(jacobi_check(table_constants(flat(), "AS")).holds);
}

// --- Killing form -----------------------------------------------------------

TEST(Killing, AbelianIsZero) { EXPECT_TRUE(killing_form(abelian(4)).matrix.is_zero()); }

TEST(Killing, Determinants)
{
  EXPECT_EQ(killing_form(warped_sc()).determinant(), Rational(-1024));
  EXPECT_TRUE(killing_form(product_sc()).is_nondegenerate());
  EXPECT_FALSE(killing_form(flat_as_sc()).is_nondegenerate());
  EXPECT_FALSE(killing_form(flat_ag_sc()).is_nondegenerate());
}

TEST(Killing, AdInvariant)
{
  // kappa([x, y], z) = -kappa(y, [x, z])
  for (const auto* sc : {&warped_sc(), &product_sc(), &flat_as_sc(), &flat_ag_sc()}) {
    const RationalMatrix K = killing_form(*sc).matrix;
    const std::size_t m = sc->dim();
    auto form = [&](const RationalVector& a, const RationalVector& b) { return dot(a, K.apply(b)); };
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = 0; z < m; ++z) {
          const RationalVector ex = unit_vector(m, x), ey = unit_vector(m, y), ez = unit_vector(m, z);
          ASSERT_EQ(form(sc->bracket(ex, ey), ez), -form(ey, sc->bracket(ex, ez)));
        }
  }
}

// --- radical, semisimplicity, derived algebra -------------------------------

TEST(Radical, Examples)
{
  EXPECT_TRUE(radical(product_sc()).is_zero());
  EXPECT_TRUE(radical(warped_sc()).is_zero());
  const auto& AS = flat().set("AS");
  EXPECT_EQ(radical(flat_as_sc()), span_of(AS, {"e1 + e6 + e11", "e3", "e7", "e12"}));
  EXPECT_EQ(radical(flat_ag_sc()), span_of(flat().set("Ag"), {"g2", "g4", "g6"}));
  EXPECT_TRUE(radical(abelian(3)).is_whole());
}

TEST(Radical, IsSolvableIdeal)
{
  for (const auto* sc : {&flat_as_sc(), &flat_ag_sc()}) {
    const Subspace r = radical(*sc);
    EXPECT_TRUE(is_ideal(*sc, r));
    EXPECT_TRUE(is_solvable(*sc, r));
  }
}

TEST(Semisimple, Verdicts)
{
  EXPECT_TRUE(is_simple(warped_sc()));
  EXPECT_TRUE(is_semisimple(product_sc()));
  EXPECT_FALSE(is_simple(product_sc()));
  EXPECT_FALSE(is_semisimple(flat_as_sc()));
  EXPECT_FALSE(is_semisimple(flat_ag_sc()));
  EXPECT_FALSE(is_semisimple(abelian(2)));
  EXPECT_FALSE(is_semisimple(abelian(0)));
}

TEST(Derived, Examples)
{
  EXPECT_TRUE(derived_subalgebra(flat_ag_sc()).is_whole());
  EXPECT_FALSE(derived_subalgebra(flat_as_sc()).is_whole());
  EXPECT_EQ(derived_subalgebra(flat_as_sc()).dim(), 11u);
  EXPECT_TRUE(derived_subalgebra(warped_sc()).is_whole());
  EXPECT_TRUE(derived_subalgebra(abelian(3)).is_zero());
  EXPECT_TRUE(center(abelian(3)).is_whole());
  EXPECT_TRUE(center(warped_sc()).is_zero());
}

TEST(Derived, SeriesOfRadicalTerminates)
{
  const auto series = derived_series(flat_as_sc(), radical(flat_as_sc()));
  EXPECT_TRUE(series.back().is_zero());
  for (std::size_t k = 1; k < series.size(); ++k) EXPECT_TRUE(series[k - 1].contains(series[k]));
}

// --- ideals -----------------------------------------------------------------

TEST(Ideals, AbelianIdealCheck)
{
  EXPECT_TRUE(abelian_ideal_check(flat_as_sc(), span_of(flat().set("AS"), {"e3", "e7", "e12"})));
  EXPECT_TRUE(abelian_ideal_check(flat_ag_sc(), span_of(flat().set("Ag"), {"g2", "g4", "g6"})));
  EXPECT_FALSE(abelian_ideal_check(warped_sc(), span_of(warped().set("A"), {"e1"})));
  EXPECT_FALSE(is_ideal(warped_sc(), span_of(warped().set("A"), {"e1"})));
}

TEST(Ideals, CoordinateSearch)
{
  EXPECT_TRUE(find_abelian_ideals_coordinate(warped_sc()).empty());
  const auto& AS = flat().set("AS");
  const auto found = find_abelian_ideals_coordinate(flat_as_sc());
  const Subspace target = span_of(AS, {"e3", "e7", "e12"});
  std::size_t inside = 0;
  bool has_target = false;
  for (const auto& s : found) {
    has_target |= s == target;
    inside += target.contains(s);
  }
  EXPECT_TRUE(has_target);
  // No proper coordinate sub-span of {e3, e7, e12} is an ideal: [e5, e3] = -e7/2.
  EXPECT_EQ(inside, 1u);
  EXPECT_EQ(cell(flat_as_sc(), AS, "e5", "e3"), combo(AS, "-e7/2"));
  EXPECT_FALSE(is_ideal(flat_as_sc(), span_of(AS, {"e3"})));
  EXPECT_EQ(find_abelian_ideals_coordinate(abelian(2)).size(), 3u);
  EXPECT_EQ(find_ideals_coordinate(product_sc()).size(), 3u);
  EXPECT_THROW(find_abelian_ideals_coordinate(abelian(17)), DomainError);
}

TEST(Ideals, ProperIdealOfProduct)
{
  const auto ideal = find_proper_ideal(product_sc());
  ASSERT_TRUE(ideal.has_value());
  EXPECT_EQ(ideal->dim(), 3u);
  EXPECT_FALSE(find_proper_ideal(warped_sc()).has_value());
}

// --- derivations ------------------------------------------------------------

TEST(Derivations, AdjointMapsAreDerivations)
{
  for (const auto* sc : {&warped_sc(), &flat_as_sc(), &flat_ag_sc()})
    for (std::size_t i = 0; i < sc->dim(); ++i) {
      EXPECT_TRUE(is_derivation(*sc, sc->ad_basis(i)));
      EXPECT_TRUE(is_inner_derivation(*sc, sc->ad_basis(i)));
    }
}

TEST(Derivations, FlatSymmetriesHaveOnlyInner)
{
  const DerivationSpace d = derivations(flat_as_sc());
  EXPECT_EQ(d.outer_dim(), 0u);
  EXPECT_EQ(d.dim(), 12u);
}

TEST(Derivations, FlatIsometriesHaveDiagonalOuter)
{
  const DerivationSpace d = derivations(flat_ag_sc());
  EXPECT_GE(d.outer_dim(), 1u);
  RationalMatrix D(6, 6);
  for (std::size_t i : {1u, 3u, 5u}) D(i, i) = 1;
  EXPECT_TRUE(is_derivation(flat_ag_sc(), D));
  EXPECT_FALSE(is_inner_derivation(flat_ag_sc(), D));
  RationalMatrix bad(6, 6);
  bad(0, 0) = 1;
  EXPECT_FALSE(is_derivation(flat_ag_sc(), bad));
}

TEST(Derivations, SemisimpleHasOnlyInner)
{
  EXPECT_EQ(derivations(warped_sc()).outer_dim(), 0u);
  EXPECT_EQ(derivations(product_sc()).outer_dim(), 0u);
  EXPECT_EQ(derivations(abelian(2)).dim(), 4u);
}

// --- Levi decomposition -----------------------------------------------------

TEST(Levi, FlatSymmetries)
{
  const LeviResult lr = levi_decomposition(flat_as_sc());
  EXPECT_EQ(lr.radical.dim(), 4u);
  EXPECT_EQ(lr.levi.dim(), 8u);
  EXPECT_TRUE(is_subalgebra(flat_as_sc(), lr.levi));
  EXPECT_TRUE(is_semisimple(flat_as_sc().restricted(lr.levi)));
  EXPECT_TRUE(intersect(lr.levi, lr.radical).is_zero());
}

TEST(Levi, TranscribedComplementIsValid)
{
  const auto& AS = flat().set("AS");
  const Subspace s = span_of(AS, {"e1 - e11", "e2", "e4", "e5", "e6 - e11", "e8", "e9", "e10"});
  EXPECT_EQ(s.dim(), 8u);
  EXPECT_TRUE(is_subalgebra(flat_as_sc(), s));
  EXPECT_TRUE(is_semisimple(flat_as_sc().restricted(s)));
  EXPECT_TRUE(intersect(s, radical(flat_as_sc())).is_zero());
}

TEST(Levi, FlatIsometries)
{
  const LeviResult lr = levi_decomposition(flat_ag_sc());
  EXPECT_EQ(lr.radical.dim(), 3u);
  EXPECT_EQ(lr.levi.dim(), 3u);
  EXPECT_TRUE(is_semisimple(flat_ag_sc().restricted(lr.levi)));
}

TEST(Levi, DegenerateCases)
{
  const LeviResult ss = levi_decomposition(product_sc());
  EXPECT_TRUE(ss.radical.is_zero());
  EXPECT_TRUE(ss.levi.is_whole());
  const LeviResult ab = levi_decomposition(abelian(3));
  EXPECT_TRUE(ab.radical.is_whole());
  EXPECT_TRUE(ab.levi.is_zero());
}

// --- inertia and classification ---------------------------------------------

TEST(Inertia, Examples)
{
  RationalMatrix a(3, 3);
  a(0, 0) = 2;
  a(1, 1) = -3;
  const Inertia in = inertia(a);
  EXPECT_EQ(in.positive, 1u);
  EXPECT_EQ(in.negative, 1u);
  EXPECT_EQ(in.zero, 1u);
  RationalMatrix h(2, 2); // hyperbolic plane
  h(0, 1) = 1;
  h(1, 0) = 1;
  const Inertia hi = inertia(h);
  EXPECT_EQ(hi.positive, 1u);
  EXPECT_EQ(hi.negative, 1u);
}

TEST(Classify, ThreeDimensionalBlocks)
{
  EXPECT_EQ(classify_3dim_simple(product_sc(), span_of(product().set("A"), {"e1", "e2", "e3"})), Simple3Type::sl2);
  EXPECT_EQ(classify_3dim_simple(product_sc(), span_of(product().set("A"), {"e4", "e5", "e6"})), Simple3Type::sl2);
  EXPECT_EQ(classify_3dim_simple(flat_ag_sc(), span_of(flat().set("Ag"), {"g1", "g3", "g5"})), Simple3Type::so3);
  EXPECT_EQ(classify_3dim_simple(abelian(3)), Simple3Type::not_simple);
  EXPECT_THROW(classify_3dim_simple(abelian(2)), DomainError);
  EXPECT_EQ(to_string(Simple3Type::so3), "so3-type");
}
