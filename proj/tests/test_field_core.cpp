#include <gtest/gtest.h>

#include <cmath>

#include "elasto/field.hpp"
#include "elasto/spectral.hpp"

using namespace elasto;

namespace {

Grid grid32() { return make_grid(32, M_PI); }

ScalarField wave(const Grid& g, int m1, int m2) {
  return ScalarField::sample(g, [=](double x, double y) { return std::sin(m1 * x + m2 * y); });
}

}  // namespace

TEST(Grid, RejectsOddOrSmallSizes) {
  EXPECT_THROW(make_grid(15, 1.0), Error);
  EXPECT_THROW(make_grid(8, 1.0), Error);
  EXPECT_THROW(make_grid(32, -1.0), Error);
  const Grid g = make_grid(32, 2.0);
  EXPECT_DOUBLE_EQ(g.dx(), 0.125);
  EXPECT_DOUBLE_EQ(g.coord(16), 0.0);
  EXPECT_EQ(g.mode(17), -15);
}

TEST(Spectral, DerivativeOfTrigPolynomialIsExact) {
  const Grid g = grid32();
  const ScalarField f = wave(g, 3, -2);
  const ScalarField d1 = derivative(f, 0), d2 = derivative(f, 1);
  const ScalarField e1 = ScalarField::sample(g, [](double x, double y) { return 3 * std::cos(3 * x - 2 * y); });
  const ScalarField e2 = ScalarField::sample(g, [](double x, double y) { return -2 * std::cos(3 * x - 2 * y); });
  EXPECT_LT(max_abs(d1 - e1), 1e-12);
  EXPECT_LT(max_abs(d2 - e2), 1e-12);
}

TEST(Spectral, InverseLaplacianUndoesLaplacianUpToMean) {
  const Grid g = grid32();
  ScalarField f = wave(g, 2, 1) + ScalarField(g, 0.7);
  const ScalarField back = inverse_laplacian(laplacian(f));
  EXPECT_NEAR(mean(back), 0.0, 1e-13);
  EXPECT_LT(max_abs(back - (f - ScalarField(g, 0.7))), 1e-12);
}

TEST(Spectral, RieszTraceIsIdentityOnMeanFreeFields) {
  const Grid g = grid32();
  const ScalarField f = wave(g, 1, 4) + wave(g, -5, 2);
  EXPECT_LT(max_abs(riesz(f, 0, 0) + riesz(f, 1, 1) - f), 1e-12);
}

TEST(Spectral, LerayProjectionRemovesGradientsAndIsIdempotent) {
  const Grid g = grid32();
  const ScalarField phi = wave(g, 2, 3);
  const ScalarField psi = wave(g, 1, -1);
  const VectorField u = gradient(phi) + perp_gradient(psi);
  const VectorField pu = leray_project(u);
  EXPECT_LT(l2_norm(pu - perp_gradient(psi)), 1e-11);
  EXPECT_LT(l2_norm(leray_project(pu) - pu), 1e-13);
  EXPECT_LT(l2_norm(divergence(pu)), 1e-11);
}

TEST(Spectral, ColumnProjectionMakesColumnsDivergenceFree) {
  const Grid g = grid32();
  MatrixField m(g);
  m(0, 0) = wave(g, 1, 2);
  m(1, 0) = wave(g, 3, 1);
  m(0, 1) = wave(g, -2, 2);
  m(1, 1) = wave(g, 1, 1);
  const MatrixField p = project_columns(m);
  EXPECT_LT(l2_norm(divergence(p.column(0))), 1e-11);
  EXPECT_LT(l2_norm(divergence(p.column(1))), 1e-11);
}

TEST(Spectral, DealiasKeepsLowModesAndDropsHighOnes) {
  const Grid g = grid32();
  const ScalarField low = wave(g, 3, 4);
  const ScalarField high = wave(g, 12, 0);
  EXPECT_LT(max_abs(dealias(low) - low), 1e-13);
  EXPECT_LT(max_abs(dealias(high)), 1e-13);
  EXPECT_NEAR(dealias_tail_fraction(low + high), 0.5, 1e-12);
}

TEST(Field, IntegralAndNormsMatchClosedForms) {
  const Grid g = grid32();
  const ScalarField s = wave(g, 1, 0);
  // integral of sin^2 over (2 pi)^2 is 2 pi^2
  EXPECT_NEAR(integral(s * s), 2 * M_PI * M_PI, 1e-10);
  EXPECT_NEAR(l2_norm(s), std::sqrt(2.0) * M_PI, 1e-10);
  const PairField u(VectorField(s, s), MatrixField::identity(g));
  EXPECT_NEAR(norm_squared(u), 4 * M_PI * M_PI + 2 * 4 * M_PI * M_PI, 1e-9);
}

TEST(Field, MismatchedGridsThrow) {
  const ScalarField a(make_grid(32, 1.0)), b(make_grid(16, 1.0));
  EXPECT_THROW(a + b, Error);
}
