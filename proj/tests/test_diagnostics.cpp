#include <gtest/gtest.h>

#include <cmath>

#include "elasto/diagnostics.hpp"
#include "elasto/harness.hpp"
#include "elasto/spectral.hpp"

using namespace elasto;

TEST(Ghost, WeightIsBoundedArctan) {
  EXPECT_DOUBLE_EQ(ghost_weight(0.0), 0.0);
  EXPECT_NEAR(ghost_weight(1e9), M_PI / 2, 1e-8);
  EXPECT_NEAR(ghost_weight(-1e9), -M_PI / 2, 1e-8);
  const double h = 1e-5;
  for (double s : {-3.0, -0.5, 0.0, 2.0})
    EXPECT_NEAR((ghost_weight(s + h) - ghost_weight(s - h)) / (2 * h), ghost_weight_derivative(s), 1e-9);
}

TEST(Monitors, GrowthStatisticClosedForm) {
  EXPECT_DOUBLE_EQ(growth_statistic(0.0, 1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(growth_statistic(3.0, -1.0, 2.0), 0.0);
  EXPECT_NEAR(growth_statistic(0.0, 2.0, 4.0), 2.0 / 8.0, 1e-15);
  // <t> = sqrt(1 + t^2)
  EXPECT_NEAR(growth_statistic(std::sqrt(3.0), 1.0, 1.0), 2.0, 1e-14);
}

TEST(Energies, OrderZeroEnergiesMatchPlainNorms) {
  Config c = reference_config(0.01);
  c.n = 128;
  const State s = initial_state(c);
  const Frame fr = make_frame(s.grid(), c.resolved_r_min());
  GammaContext ctx(s, fr);
  EXPECT_NEAR(energy_Ek(ctx, 0), norm_squared(s.pair()), 1e-15 * norm_squared(s.pair()));
  EXPECT_NEAR(initial_norm_HkLambda(s.v, s.G, 0), std::sqrt(norm_squared(s.pair())),
              1e-12 * std::sqrt(norm_squared(s.pair())));
  // e^{-pi/2} E <= Etilde <= e^{pi/2} E
  const double e = energy_Ek(ctx, 1), et = ghost_energy(ctx, 1);
  EXPECT_GE(et, std::exp(-M_PI / 2) * e);
  EXPECT_LE(et, std::exp(M_PI / 2) * e);
}

TEST(Energies, NormalizationHitsTargetAmplitude) {
  Config c = reference_config(0.02);
  c.n = 128;
  const State s = initial_state(c);
  // The linearized unit data are scaled to eps in H^k_Lambda; the nonlinear
  // flow-map data differ at second order.
  EXPECT_NEAR(initial_norm_HkLambda(s.v, s.G, c.k), 0.02, 0.02 * 1e-3);
}

TEST(Diagnose, RowIsFiniteAndConstraintsAreTiny) {
  Config c = reference_config(0.01);
  c.n = 128;
  const State s = initial_state(c);
  const DiagRow row = diagnose_state(s, make_frame(s.grid(), c.resolved_r_min()), 2);
  EXPECT_NEAR(row.E0, norm_squared(s.pair()), 1e-15 * row.E0);
  EXPECT_GT(row.Ek, row.E0);
  EXPECT_LT(row.divV, 1e-14);
  EXPECT_LT(row.divGT, 1e-14);
  EXPECT_LT(row.boundary_fraction, 1e-10);
  EXPECT_GE(row.Xk_excluded, 0.0);
  // the bump sits inside the masked core, so most weighted mass is excluded
  EXPECT_LE(row.Xk_excluded, 1.0);
  for (const auto& [name, value] : row.special) EXPECT_TRUE(std::isfinite(value)) << name;
  EXPECT_EQ(row.special.size(), special_ratio_names().size());
}

TEST(Diagnose, NonHookeanRequiresOrderZero) {
  Config c = reference_config(0.01);
  c.n = 64;
  c.r_min = 1.0;
  const State s = initial_state(c);
  EXPECT_THROW(diagnose_state(s, make_frame(s.grid(), 1.0), 1, Material::stiffening()), Error);
  const DiagRow row = diagnose_state(s, make_frame(s.grid(), 1.0), 0, Material::stiffening());
  EXPECT_DOUBLE_EQ(row.Ek, row.E0);
}

TEST(Mask, ExcludedFractionOfUniformDensity) {
  const Grid g = make_grid(64, 4.0);
  const Frame fr = make_frame(g, 0.25);
  const Mask m = diagnostic_mask(fr);
  const double f = excluded_fraction(ScalarField(g, 1.0), m);
  // boundary band (33 of 64 lines per axis kept) plus the disc of radius 2 r_min
  EXPECT_NEAR(f, 1.0 - (33.0 / 64) * (33.0 / 64) + M_PI * 0.25 / 64.0, 0.005);
}
