#include <gtest/gtest.h>

#include <cmath>

#include "elasto/kinematics.hpp"
#include "elasto/spectral.hpp"

using namespace elasto;

namespace {

StreamSpec spec(StreamShape shape, double amplitude) {
  StreamSpec s;
  s.shape = shape;
  s.amplitude = amplitude;
  s.width = 1.0;
  s.seed = 5;
  return s;
}

}  // namespace

TEST(Stream, ShapeNamesRoundTrip) {
  for (auto sh : {StreamShape::GaussianBump, StreamShape::Ring, StreamShape::RandomBandLimited})
    EXPECT_EQ(parse_stream_shape(to_string(sh)), sh);
  EXPECT_THROW(parse_stream_shape("square"), Error);
}

TEST(Stream, VelocityIsDivergenceFreeAndMatchesAnalyticGradient) {
  const Grid g = make_grid(128, 4 * M_PI);
  const auto sp = spec(StreamShape::Ring, 0.3);
  const VectorField v = stream_velocity(sp, g);
  EXPECT_LT(l2_norm(divergence(v)), 1e-10 * l2_norm(v));
  const StreamProfile prof(sp);
  const VectorField exact(ScalarField::sample(g, [&](double x, double y) { return prof.eval(x, y).grad[1]; }),
                          ScalarField::sample(g, [&](double x, double y) { return -prof.eval(x, y).grad[0]; }));
  EXPECT_LT(max_abs(v - exact), 1e-9);
}

TEST(Stream, SupportTouchingTheBoundaryBandIsRejected) {
  const Grid g = make_grid(64, 2.0);
  auto sp = spec(StreamShape::GaussianBump, 0.1);
  sp.width = 1.5;
  EXPECT_THROW(stream_velocity(sp, g), Error);
}

TEST(FlowMap, DeformationIsVolumePreservingAndCompatible) {
  // 128^2 leaves a 1e-3 relative defect from truncated modes; 256^2 resolves the data.
  const Grid g = make_grid(256, 4 * M_PI);
  const auto sp = spec(StreamShape::RandomBandLimited, 1e-3);
  const InitialData d = make_initial_data(sp, g);
  EXPECT_LT(d.max_det_error, 1e-9);
  ConstraintResiduals r = constraint_residuals(d.v, d.G);
  EXPECT_LT(r.div_v, 1e-12);
  EXPECT_LT(r.div_GT, 1e-12);
  // The defect vanishes for exact flow-map data; the curl alone is O(a^2).
  const VectorField curl(derivative(d.G(0, 1), 0) - derivative(d.G(0, 0), 1),
                         derivative(d.G(1, 1), 0) - derivative(d.G(1, 0), 1));
  EXPECT_LT(r.compat, 1e-9 * l2_norm(curl));
}

TEST(FlowMap, SmallAmplitudeMatchesLinearization) {
  // G0 = grad u + O(a^2) for the time-one map of u.
  const Grid g = make_grid(128, 4 * M_PI);
  const auto sp = spec(StreamShape::GaussianBump, 1e-4);
  const MatrixField G = flow_deformation(sp, g, 64);
  const MatrixField lin = jacobian(stream_velocity(sp, g));
  EXPECT_LT(l2_norm(G - lin), 1e-3 * l2_norm(lin));
}

TEST(FlowMap, ZeroAmplitudeGivesZero) {
  const Grid g = make_grid(32, 4.0);
  const MatrixField G = flow_deformation(spec(StreamShape::GaussianBump, 0.0), g, 32);
  EXPECT_EQ(max_abs(G), 0.0);
  EXPECT_THROW(flow_deformation(spec(StreamShape::GaussianBump, 0.0), g, 8), Error);
}

TEST(Compatibility, GradientsOfMapsHaveNoDefect) {
  // G = grad X for X = x + a(sin y, 0) written as F^{-1} - I is compatible.
  const Grid g = make_grid(64, M_PI);
  const double a = 0.2;
  MatrixField G(g);
  // F = I + a cos(x2) e1 (x) e2; F^{-1} - I = -a cos(x2) e1 (x) e2.
  G(0, 1) = ScalarField::sample(g, [&](double, double y) { return -a * std::cos(y); });
  EXPECT_LT(l2_norm(compatibility_defect(G)), 1e-12);
  MatrixField H(g);
  H(0, 0) = ScalarField::sample(g, [&](double, double y) { return std::sin(y); });
  EXPECT_GT(l2_norm(compatibility_defect(H)), 1.0);
}
