#include <gtest/gtest.h>

#include <cmath>

#include "elasto/diagnostics.hpp"
#include "elasto/gamma.hpp"
#include "elasto/harness.hpp"
#include "elasto/spectral.hpp"

using namespace elasto;

namespace {

Config small_config() {
  Config c = reference_config(0.01);
  c.shape = StreamShape::RandomBandLimited;
  c.seed = 3;
  c.center = {0.6, -0.4};
  return c;
}

}  // namespace

TEST(Words, EnumerationCountsAndNames) {
  EXPECT_EQ(words_up_to(0).size(), 1u);
  EXPECT_EQ(words_up_to(1).size(), 6u);
  EXPECT_EQ(words_up_to(2).size(), 31u);
  for (const Word& w : words_up_to(2)) EXPECT_EQ(parse_word(to_string(w)), w);
  EXPECT_EQ(to_string(Word{}), "e");
  EXPECT_THROW(parse_word("D3"), Error);
}

TEST(TildeRotation, AnnihilatesRotationEquivariantFields) {
  const Grid g = make_grid(128, 4 * M_PI);
  auto bump = [](double x, double y) { return std::exp(-(x * x + y * y)); };
  const ScalarField f = ScalarField::sample(g, bump);
  EXPECT_LT(max_abs(tilde_rotate(f)), 1e-10);
  // v = J x g(r) is equivariant; Omega alone does not kill it.
  const VectorField v(ScalarField::sample(g, [&](double x, double y) { return -y * bump(x, y); }),
                      ScalarField::sample(g, [&](double x, double y) { return x * bump(x, y); }));
  EXPECT_LT(max_abs(tilde_rotate(v)), 1e-10);
  EXPECT_LT(max_abs(tilde_rotate(jacobian(v))), 1e-9);
}

TEST(TildeRotation, CommutesWithDivergence) {
  const Grid g = make_grid(128, 4 * M_PI);
  const VectorField v(ScalarField::sample(g, [](double x, double y) { return x * std::exp(-(x * x + 2 * y * y)); }),
                      ScalarField::sample(g, [](double x, double y) { return std::exp(-((x - 1) * (x - 1) + y * y)); }));
  EXPECT_LT(max_abs(divergence(tilde_rotate(v)) - tilde_rotate(divergence(v))), 1e-9);
}

TEST(GammaWords, TimeLetterEqualsSystemRightHandSide) {
  const Config c = small_config();
  const State s = initial_state(c);
  const Frame fr = make_frame(s.grid(), c.resolved_r_min());
  GammaContext ctx(s, fr);
  const PairField dt = ctx.word(parse_word("Dt"));
  const PairField rhs = hookean_rhs(s);
  EXPECT_LT(std::sqrt(norm_squared(dt - rhs) / norm_squared(rhs)), 1e-10);
  EXPECT_LT(std::sqrt(norm_squared(ctx.word(Word{}) - s.pair())), 1e-15);
}

TEST(GammaWords, FrameIdentitiesHoldOnFlowData) {
  const Config c = small_config();
  const State s = initial_state(c);
  const Frame fr = make_frame(s.grid(), c.resolved_r_min());
  GammaContext ctx(s, fr);
  for (const Word& w : {Word{}, parse_word("D1"), parse_word("Om")}) {
    for (const auto& [name, value] : special_identity_residuals(ctx, w)) {
      EXPECT_LT(value, 1e-8) << name << " at " << to_string(w);
    }
  }
}

TEST(GammaWords, CommutationResidualIsSecondOrderInTime) {
  const Config c = small_config();
  const State s0 = initial_state(c);
  const Frame fr = make_frame(s0.grid(), c.resolved_r_min());
  const Word w = parse_word("D1");
  double res[2];
  for (int level = 0; level < 2; ++level) {
    const double h = 0.08 / (1 << level);
    const State a = rk4_step(s0, h, hookean_dynamics());
    const State b = rk4_step(a, h, hookean_dynamics());
    res[level] = commutation_residual(w, s0, a, b, fr);
  }
  EXPECT_GT(res[0] / res[1], 3.0);
  EXPECT_LT(res[0] / res[1], 5.0);
}
