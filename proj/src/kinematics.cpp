#include "elasto/kinematics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "elasto/spectral.hpp"

namespace elasto {

StreamShape parse_stream_shape(const std::string& name) {
  if (name == "gaussian-bump") return StreamShape::GaussianBump;
  if (name == "ring") return StreamShape::Ring;
  if (name == "random-band-limited") return StreamShape::RandomBandLimited;
  throw Error("unknown stream shape '" + name + "'");
}

std::string to_string(StreamShape shape) {
  switch (shape) {
    case StreamShape::GaussianBump: return "gaussian-bump";
    case StreamShape::Ring: return "ring";
    case StreamShape::RandomBandLimited: return "random-band-limited";
  }
  return "?";
}

StreamProfile::StreamProfile(const StreamSpec& spec) : spec_(spec) {
  if (!(spec.width > 0.0)) throw Error("stream profile: width must be positive");
  if (spec.shape == StreamShape::RandomBandLimited) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> coeff(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(modes_.size()));
    for (auto& m : modes_) {
      const double k = radius(rng) / spec.width;
      const double th = angle(rng);
      m = {k * std::cos(th), k * std::sin(th), scale * coeff(rng), scale * coeff(rng)};
    }
  }
}

StreamProfile::Jet StreamProfile::eval(double x1, double x2) const {
  const double w2 = spec_.width * spec_.width;
  const double d1 = x1 - spec_.center[0], d2 = x2 - spec_.center[1];
  const double rho2 = d1 * d1 + d2 * d2;

  // Gaussian envelope g = exp(-rho^2 / w^2) and its derivatives.
  const double g = std::exp(-rho2 / w2);
  const double g1 = -2.0 * d1 / w2 * g, g2 = -2.0 * d2 / w2 * g;
  const double g11 = (4.0 * d1 * d1 / (w2 * w2) - 2.0 / w2) * g;
  const double g12 = 4.0 * d1 * d2 / (w2 * w2) * g;
  const double g22 = (4.0 * d2 * d2 / (w2 * w2) - 2.0 / w2) * g;

  Jet j;
  switch (spec_.shape) {
    case StreamShape::GaussianBump:
      j = {g, {g1, g2}, g11, g12, g22};
      break;
    case StreamShape::Ring: {
      // (rho^2 / w^2) g, peaked on the circle rho = w.
      const double s = rho2 / w2, s1 = 2.0 * d1 / w2, s2 = 2.0 * d2 / w2, s11 = 2.0 / w2, s22 = 2.0 / w2;
      j.value = s * g;
      j.grad = {s1 * g + s * g1, s2 * g + s * g2};
      j.h11 = s11 * g + 2.0 * s1 * g1 + s * g11;
      j.h12 = s1 * g2 + s2 * g1 + s * g12;
      j.h22 = s22 * g + 2.0 * s2 * g2 + s * g22;
      break;
    }
    case StreamShape::RandomBandLimited: {
      double S = 0, S1 = 0, S2 = 0, S11 = 0, S12 = 0, S22 = 0;
      for (const auto& m : modes_) {
        const double th = m.k1 * d1 + m.k2 * d2;
        const double c = std::cos(th), sn = std::sin(th);
        const double val = m.a * c + m.b * sn;
        const double der = -m.a * sn + m.b * c;
        S += val;
        S1 += der * m.k1;
        S2 += der * m.k2;
        S11 -= val * m.k1 * m.k1;
        S12 -= val * m.k1 * m.k2;
        S22 -= val * m.k2 * m.k2;
      }
      j.value = g * S;
      j.grad = {g1 * S + g * S1, g2 * S + g * S2};
      j.h11 = g11 * S + 2.0 * g1 * S1 + g * S11;
      j.h12 = g12 * S + g1 * S2 + g2 * S1 + g * S12;
      j.h22 = g22 * S + 2.0 * g2 * S2 + g * S22;
      break;
    }
  }
  const double a = spec_.amplitude;
  j.value *= a;
  j.grad[0] *= a;
  j.grad[1] *= a;
  j.h11 *= a;
  j.h12 *= a;
  j.h22 *= a;
  return j;
}

ScalarField stream_function(const StreamSpec& spec, const Grid& grid) {
  const StreamProfile prof(spec);
  return ScalarField::sample(grid, [&](double x1, double x2) { return prof.eval(x1, x2).value; });
}

namespace {

void require_interior_support(const StreamSpec& spec, const Grid& grid) {
  if (spec.amplitude == 0.0) return;
  const StreamProfile prof(spec);
  const double band = grid.half_width() / 2.0;
  double inside = 0.0, outside = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    for (int j = 0; j < grid.n(); ++j) {
      const double x1 = grid.coord(i), x2 = grid.coord(j);
      const auto jet = prof.eval(x1, x2);
      const double m = std::abs(jet.value) + std::hypot(jet.grad[0], jet.grad[1]);
      if (std::max(std::abs(x1), std::abs(x2)) > band) {
        outside = std::max(outside, m);
      } else {
        inside = std::max(inside, m);
      }
    }
  }
  if (outside > 1e-10 * inside) {
    throw Error("stream profile support reaches the boundary band |x|_inf > L/2 (relative size " +
                std::to_string(outside / inside) + ")");
  }
}

}  // namespace

VectorField stream_velocity(const StreamSpec& spec, const Grid& grid) {
  require_interior_support(spec, grid);
  return perp_gradient(stream_function(spec, grid));
}

MatrixField flow_deformation(const StreamSpec& spec, const Grid& grid, int steps) {
  if (steps < 32) throw Error("flow_deformation: at least 32 substeps required");
  require_interior_support(spec, grid);
  const StreamProfile prof(spec);
  using Eigen::Matrix2d;
  using Eigen::Vector2d;

  // Backward field: y' = -u(y), K' = -grad u(y) K, u = (d2 psi, -d1 psi).
  // The displacement z = y - x and D = K - I are integrated instead of y and K
  // so that rounding stays relative to the (small) deformation.
  auto rhs = [&](const Vector2d& x, const Vector2d& z, const Matrix2d& D, Vector2d& dz, Matrix2d& dD) {
    const auto j = prof.eval(x[0] + z[0], x[1] + z[1]);
    dz = Vector2d(-j.grad[1], j.grad[0]);
    Matrix2d gu;
    gu << j.h12, j.h22, -j.h11, -j.h12;
    dD = -gu * (Matrix2d::Identity() + D);
  };

  const double h = 1.0 / steps;
  MatrixField G(grid);
  double worst = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    for (int jj = 0; jj < grid.n(); ++jj) {
      const Vector2d x(grid.coord(i), grid.coord(jj));
      Vector2d z = Vector2d::Zero();
      Matrix2d D = Matrix2d::Zero();
      for (int s = 0; s < steps; ++s) {
        Vector2d k1z, k2z, k3z, k4z;
        Matrix2d k1D, k2D, k3D, k4D;
        rhs(x, z, D, k1z, k1D);
        rhs(x, z + 0.5 * h * k1z, D + 0.5 * h * k1D, k2z, k2D);
        rhs(x, z + 0.5 * h * k2z, D + 0.5 * h * k2D, k3z, k3D);
        rhs(x, z + h * k3z, D + h * k3D, k4z, k4D);
        z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        D += h / 6.0 * (k1D + 2.0 * k2D + 2.0 * k3D + k4D);
      }
      // F = (I + D)^{-1}, G = F - I = (adj(I + D) - det(I + D) I) / det(I + D).
      const double a = D(0, 0), b = D(0, 1), c = D(1, 0), d = D(1, 1);
      const double cross = a * d - b * c;
      const double det_minus_1 = a + d + cross;
      const double det = 1.0 + det_minus_1;
      worst = std::max(worst, std::abs(det_minus_1 / det));
      G(0, 0)(i, jj) = (-a - cross) / det;
      G(0, 1)(i, jj) = -b / det;
      G(1, 0)(i, jj) = -c / det;
      G(1, 1)(i, jj) = (-d - cross) / det;
    }
  }
  if (worst > 1e-8) {
    throw Error("flow_deformation: |det(I+G0) - 1| = " + std::to_string(worst) +
                " exceeds ODE tolerance 1e-8; increase substeps");
  }
  return G;
}

VectorField compatibility_defect(const MatrixField& G) {
  const auto dG = gradient(G);  // dG[2*i+j][m] = d_m G_ij
  auto d = [&](int i, int j, int m) -> const ScalarField& { return dG[2 * i + j][m]; };
  VectorField out(G.grid());
  for (int i = 0; i < 2; ++i) {
    // d_1 G_i2 - d_2 G_i1 - G_m2 d_m G_i1 + G_m1 d_m G_i2  (j = 1, k = 2)
    ScalarField r = d(i, 1, 0) - d(i, 0, 1);
    for (int m = 0; m < 2; ++m) {
      r -= G(m, 1) * d(i, 0, m);
      r += G(m, 0) * d(i, 1, m);
    }
    out[i] = std::move(r);
  }
  return out;
}

ConstraintResiduals constraint_residuals(const VectorField& v, const MatrixField& G) {
  ConstraintResiduals res;
  res.div_v = l2_norm(divergence(v));
  res.div_GT = l2_norm(VectorField(divergence(G.column(0)), divergence(G.column(1))));
  res.compat = l2_norm(compatibility_defect(G));
  return res;
}

InitialData make_initial_data(const StreamSpec& spec, const Grid& grid, int steps) {
  VectorField v = dealias(stream_velocity(spec, grid));
  MatrixField raw = flow_deformation(spec, grid, steps);
  const double det_err = max_abs(determinant(MatrixField::identity(grid) + raw) - ScalarField(grid, 1.0));
  MatrixField G0 = dealias(raw);
  const double compat_before = l2_norm(compatibility_defect(G0));
  MatrixField G = project_columns(G0);
  const double moved = l2_norm(G - G0);
  const double compat_after = l2_norm(compatibility_defect(G));
  return InitialData{std::move(v), std::move(G), det_err, compat_before, compat_after, moved};
}

}  // namespace elasto
