#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rumin/errors.hpp"
#include "rumin/slicing.hpp"
#include "support/chains.hpp"

using namespace rumin;
using namespace rumin::testing;

namespace {

using Q = Rational;

Q q(long a, long b = 1) {
  Q r(a, b);
  r.canonicalize();
  return r;
}

AffineFunction coordinate(HeisParams h, int index) {
  std::vector<Q> c(h.dim());
  c[index] = 1;
  return AffineFunction(h, c);
}

AffineFunction diagonal() {
  const Q s = exact_from_double(1 / std::sqrt(2.0));
  return AffineFunction(HeisParams(1), {s, s, 0});
}

SimplicialCurrent unit_segment() {
  HeisParams h(1);
  return segment(h, pt(h, {0, 0, 0}), pt(h, {1, 0, 0}));
}

// Two collinear pieces from the origin to (1,0,0) and on to (3/2,0,0).
SimplicialCurrent broken_segment() {
  HeisParams h(1);
  auto T = segment(h, pt(h, {0, 0, 0}), pt(h, {1, 0, 0}));
  T += segment(h, pt(h, {1, 0, 0}), pt(h, {q(3, 2), 0, 0}));
  return T;
}

SimplicialCurrent triangle_h1() {
  HeisParams h(1);
  SimplicialCurrent T(h, 2);
  T.add(simplex({pt(h, {0, 0, 0}), pt(h, {1, 0, 0}), pt(h, {0, 1, 0})}));
  return T;
}

}  // namespace

TEST(AffineFunction, FromPolyAndEvaluation) {
  HeisParams h(1);
  Poly p = Poly::variable(3, 0) * q(2) + Poly::variable(3, 2) * q(-1, 3) + Poly(3, q(5));
  auto f = AffineFunction::from_poly(h, p);
  EXPECT_EQ(f(pt(h, {1, 7, 3})), q(6));
  EXPECT_FALSE(f.is_horizontal());
  EXPECT_FALSE(f.lipschitz_closed_form().has_value());
  EXPECT_THROW(AffineFunction::from_poly(h, Poly::variable(3, 0) * Poly::variable(3, 1)), ParameterError);
  auto g = AffineFunction(h, {3, 4, 0}, 1);
  EXPECT_DOUBLE_EQ(*g.lipschitz_closed_form(), 5.0);
}

TEST(Slice, SegmentAtHalf) {
  HeisParams h(1);
  auto r = slice_plus(unit_segment(), coordinate(h, 0), q(1, 2));
  ASSERT_EQ(r.slice.size(), 1u);
  EXPECT_EQ(r.slice.simplices()[0].vertices[0], pt(h, {q(1, 2), 0, 0}));
  EXPECT_EQ(r.slice.simplices()[0].multiplicity, Q(1));
  EXPECT_DOUBLE_EQ(r.mass, 1.0);
  EXPECT_TRUE(r.formula_chain_matches);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_FALSE(r.middle_dimension);
}

TEST(Slice, ReversedSegmentFlipsSign) {
  HeisParams h(1);
  auto T = segment(h, pt(h, {1, 0, 0}), pt(h, {0, 0, 0}));
  auto r = slice_plus(T, coordinate(h, 0), q(1, 3));
  ASSERT_EQ(r.slice.size(), 1u);
  EXPECT_EQ(r.slice.simplices()[0].multiplicity, Q(-1));
  EXPECT_TRUE(r.formula_chain_matches);
}

TEST(Slice, CubeAtHalf) {
  auto cube = unit_cube();
  auto r = slice_plus(cube, coordinate(cube.params(), 0), q(1, 2));
  EXPECT_EQ(r.slice.degree(), 2);
  auto m = mass_exact(r.slice);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, Q(1));
  EXPECT_TRUE(r.formula_chain_matches);
  EXPECT_LE(r.residual, 1e-9);
  EXPECT_FALSE(r.middle_dimension);
}

TEST(Slice, BelowTheSupportIsEmpty) {
  auto cube = unit_cube();
  auto f = coordinate(cube.params(), 0);
  auto r = slice_plus(cube, f, q(-1));
  EXPECT_TRUE(r.slice.empty());
  EXPECT_TRUE(slice_formula(cube, f, q(-1)).empty());
  EXPECT_TRUE(slice_plus(cube, f, q(2)).slice.empty());
}

TEST(Slice, VertexLevelIsDegenerate) {
  auto cube = unit_cube();
  EXPECT_THROW(slice_plus(cube, coordinate(cube.params(), 0), q(0)), DegenerateLevelError);
  EXPECT_THROW(slice_minus(cube, coordinate(cube.params(), 0), q(1)), DegenerateLevelError);
}

TEST(Slice, PlusEqualsMinusAndFormulaOnGenericLevels) {
  auto cube = unit_cube();
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> u(-3, 3);
  for (int trial = 0; trial < 6; ++trial) {
    AffineFunction f(cube.params(), {u(rng), u(rng), u(rng)}, 0);
    if (f.is_constant()) continue;
    for (const auto& t : generic_levels(cube, f, 4)) {
      auto plus = slice_plus(cube, f, t);
      auto minus = slice_minus(cube, f, t);
      EXPECT_TRUE(plus.slice.same_chain(minus.slice));
      EXPECT_TRUE(plus.formula_chain_matches);
      EXPECT_TRUE(minus.formula_chain_matches);
      EXPECT_EQ(plus.residual, 0.0);
    }
  }
}

TEST(Slice, MiddleDimensionIsFlagged) {
  auto T = triangle_h1();
  auto r = slice_plus(T, coordinate(T.params(), 0), q(1, 3));
  EXPECT_TRUE(r.middle_dimension);
  EXPECT_EQ(r.slice.degree(), 1);
  EXPECT_THROW(coarea_sweep(T, coordinate(T.params(), 0), q(0), q(1), 10), ScopeError);
  EXPECT_THROW(property_report(T, coordinate(T.params(), 0)), ScopeError);
  EXPECT_THROW(band_bound_trend(T, coordinate(T.params(), 0), {q(1, 3)}), ScopeError);
}

TEST(Slice, BoundaryAnticommutes) {
  auto cube = unit_cube();
  auto f = AffineFunction(cube.params(), {1, 2, -1}, 0);
  auto dT = boundary(cube);
  for (const auto& t : generic_levels(cube, f, 10))
    EXPECT_TRUE(boundary(slice_direct(cube, f, t)).same_chain(-slice_direct(dT, f, t)));
}

TEST(GammaH, Values) {
  EXPECT_EQ(gamma_h_eval(0.3, 0.3, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(gamma_h_eval(0.35, 0.3, 0.1), 0.5);
  EXPECT_DOUBLE_EQ(gamma_h_eval(0.5, 0.3, 0.1), 1.0);
  EXPECT_EQ(gamma_h_eval(-4.0, 0.3, 0.1), 0.0);
  EXPECT_EQ(gamma_h_eval(q(1, 2), q(1, 4), q(1, 2)), q(1, 2));
  for (int i = -20; i <= 40; ++i) {
    Q s = q(i, 40), t = q(1, 8), h = q(1, 4);
    EXPECT_DOUBLE_EQ(gamma_h_eval(to_double(s), to_double(t), to_double(h)), to_double(gamma_h_eval(s, t, h)));
  }
  EXPECT_THROW(gamma_h_eval(0.0, 0.0, 0.0), ParameterError);
  EXPECT_THROW(gamma_h_eval(q(0), q(0), q(-1)), ParameterError);
}

TEST(Lipschitz, ClosedFormsBoundSamples) {
  HeisParams h(2);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<std::pair<Point<double>, Point<double>>> pairs;
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> a(h.dim()), b(h.dim());
    for (auto& v : a) v = u(rng);
    for (int j = 0; j < h.dim(); ++j) b[j] = a[j] + u(rng) * (i % 2 ? 1e-3 : 1.0);
    pairs.emplace_back(Point<double>(h, a), Point<double>(h, b));
  }
  pairs.emplace_back(pairs[0].first, pairs[0].first);

  auto e = lipschitz_estimate(coordinate(h, 0), pairs);
  EXPECT_DOUBLE_EQ(*e.closed_form, 1.0);
  EXPECT_LE(e.sampled, 1.0 + 1e-9);
  EXPECT_GT(e.sampled, 0.9);

  EXPECT_EQ(lipschitz_estimate(AffineFunction(h, std::vector<Q>(h.dim()), 3), pairs).sampled, 0.0);

  for (double bw : {0.5, 0.1}) {
    double s = lipschitz_sampled([&](const Point<double>& p) { return gamma_h_eval(p[0], 0.0, bw); }, pairs);
    EXPECT_LE(s, 1.0 / bw + 1e-9);
  }
}

TEST(Levels, AtomsAndGenericLevels) {
  auto cube = unit_cube();
  EXPECT_TRUE(atom_levels(cube, coordinate(cube.params(), 0)).empty());
  auto surface = boundary(cube);
  auto atoms = atom_levels(surface, coordinate(cube.params(), 0));
  EXPECT_EQ(atoms, (std::vector<Q>{0, 1}));
  auto levels = generic_levels(cube, coordinate(cube.params(), 0), 20);
  ASSERT_EQ(levels.size(), 20u);
  for (const auto& t : levels) {
    EXPECT_GT(t, 0);
    EXPECT_LT(t, 1 - Q(1, 256));
  }
}

TEST(Coarea, CubeEqualityCase) {
  auto cube = unit_cube();
  auto sweep = coarea_sweep(cube, coordinate(cube.params(), 0), q(0), q(1), 100);
  ASSERT_EQ(sweep.rows.size(), 100u);
  EXPECT_NEAR(sweep.integral, 1.0, 1e-12);
  EXPECT_NEAR(sweep.band_measure, 1.0, 1e-12);
  EXPECT_NEAR(sweep.ratio, 1.0, 1e-3);
  EXPECT_EQ(sweep.rows.front().t, q(1, 200));
}

TEST(Coarea, DiagonalFunction) {
  auto cube = unit_cube();
  auto f = diagonal();
  auto [lo, hi] = level_range(cube, f);
  auto sweep = coarea_sweep(cube, f, lo, hi, 100);
  EXPECT_LE(sweep.ratio, 1.0 + 1e-2);
  EXPECT_GT(sweep.ratio, 0.9);
}

TEST(Coarea, SupportBelowTheBand) {
  auto cube = unit_cube();
  auto sweep = coarea_sweep(cube, coordinate(cube.params(), 0), q(2), q(3), 10);
  EXPECT_EQ(sweep.integral, 0.0);
  EXPECT_EQ(sweep.ratio, 0.0);
}

TEST(Coarea, GridThroughAVertexLevelIsDegenerate) {
  auto cube = unit_cube();
  auto f = AffineFunction(cube.params(), {1, 1, 0}, 0);
  EXPECT_THROW(coarea_sweep(cube, f, q(0), q(2), 25), DegenerateLevelError);
}

TEST(Coarea, CsvIsThreadCountIndependent) {
  auto cube = unit_cube();
  auto f = AffineFunction(cube.params(), {1, 1, 0}, 0);
  auto one = coarea_sweep(cube, f, q(0), q(2), 24, 1);
  auto many = coarea_sweep(cube, f, q(0), q(2), 24, 8);
  EXPECT_EQ(one.csv(), many.csv());
  EXPECT_EQ(one.csv().substr(0, 24), "t,mass,band_bound,ratio\n");
}

TEST(Coarea, RejectsVerticalFunction) {
  auto cube = unit_cube();
  EXPECT_THROW(coarea_sweep(cube, coordinate(cube.params(), 2), q(0), q(1), 10), ParameterError);
}

TEST(BandBound, CubeAndSquareTrends) {
  auto cube = unit_cube();
  auto f = coordinate(cube.params(), 0);
  auto trend = band_bound_trend(cube, f, generic_levels(cube, f, 20));
  EXPECT_TRUE(trend.monotone);
  EXPECT_LE(trend.last, 1e-3);
  ASSERT_EQ(trend.epsilon.size(), 7u);

  auto sq = horizontal_square();
  auto g = coordinate(sq.params(), 0);
  auto strend = band_bound_trend(sq, g, generic_levels(sq, g, 20));
  EXPECT_TRUE(strend.monotone);
  EXPECT_LE(strend.last, 1e-3);
}

TEST(GammaH, BandFunctionalConvergesToSlice) {
  auto cube = unit_cube();
  auto check = gamma_convergence(cube, coordinate(cube.params(), 0), q(3, 10));
  EXPECT_TRUE(check.decreasing);
  EXPECT_LT(check.error.back().second, check.error.front().second);
  EXPECT_LE(check.error.back().second, 0.1);
}

TEST(Report, CubeAllPass) {
  auto cube = unit_cube();
  auto report = property_report(cube, coordinate(cube.params(), 0));
  ASSERT_EQ(report.lines.size(), 7u);
  EXPECT_TRUE(report.all_pass()) << report.text();
}

TEST(Report, HorizontalSquareAllPass) {
  auto sq = horizontal_square();
  auto report = property_report(sq, coordinate(sq.params(), 0));
  EXPECT_TRUE(report.all_pass()) << report.text();
}

TEST(Report, SegmentWithBoundary) {
  auto T = broken_segment();
  auto report = property_report(T, coordinate(T.params(), 0));
  EXPECT_TRUE(report.all_pass()) << report.text();
}
