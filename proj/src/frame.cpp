#include "elasto/frame.hpp"

#include <cmath>

#include "elasto/spectral.hpp"

namespace elasto {

Frame make_frame(const Grid& grid, double r_min) {
  if (!(r_min > 0.0) || !(r_min < grid.half_width() / 8.0)) {
    throw Error("frame: r_min must satisfy 0 < r_min < L/8");
  }
  Frame fr{grid, r_min, ScalarField(grid), VectorField(grid), VectorField(grid), VectorField(grid)};
  for (int i = 0; i < grid.n(); ++i) {
    for (int j = 0; j < grid.n(); ++j) {
      const double x1 = grid.coord(i), x2 = grid.coord(j);
      const double r = std::hypot(x1, x2);
      const double rc = std::max(r, r_min);
      double w1 = x1 / rc, w2 = x2 / rc;
      if (r == 0.0) {
        w1 = 1.0;
        w2 = 0.0;
      }
      fr.r(i, j) = rc;
      fr.omega[0](i, j) = w1;
      fr.omega[1](i, j) = w2;
      fr.omega_perp[0](i, j) = w2;
      fr.omega_perp[1](i, j) = -w1;
      fr.x[0](i, j) = x1;
      fr.x[1](i, j) = x2;
    }
  }
  return fr;
}

Frame make_frame(const Grid& grid) { return make_frame(grid, 4.0 * grid.dx()); }

ScalarField radial_derivative(const ScalarField& f, const Frame& fr) { return dot(fr.omega, gradient(f)); }

VectorField radial_derivative(const VectorField& v, const Frame& fr) {
  return VectorField(radial_derivative(v[0], fr), radial_derivative(v[1], fr));
}

MatrixField radial_derivative(const MatrixField& m, const Frame& fr) {
  MatrixField out(m.grid());
  for (int k = 0; k < 4; ++k) out.c[k] = radial_derivative(m.c[k], fr);
  return out;
}

ScalarField angular_derivative(const ScalarField& f) {
  const VectorField g = gradient(f);
  ScalarField out(f.grid());
  const Grid& grid = f.grid();
  for (int i = 0; i < grid.n(); ++i) {
    const double x1 = grid.coord(i);
    for (int j = 0; j < grid.n(); ++j) out(i, j) = grid.coord(j) * g[0](i, j) - x1 * g[1](i, j);
  }
  return out;
}

VectorField angular_derivative(const VectorField& v) {
  return VectorField(angular_derivative(v[0]), angular_derivative(v[1]));
}

MatrixField angular_derivative(const MatrixField& m) {
  MatrixField out(m.grid());
  for (int k = 0; k < 4; ++k) out.c[k] = angular_derivative(m.c[k]);
  return out;
}

ScalarField dilation(const ScalarField& f) {
  const VectorField g = gradient(f);
  ScalarField out(f.grid());
  const Grid& grid = f.grid();
  for (int i = 0; i < grid.n(); ++i) {
    const double x1 = grid.coord(i);
    for (int j = 0; j < grid.n(); ++j) out(i, j) = x1 * g[0](i, j) + grid.coord(j) * g[1](i, j);
  }
  return out;
}

VectorField dilation(const VectorField& v) { return VectorField(dilation(v[0]), dilation(v[1])); }

MatrixField dilation(const MatrixField& m) {
  MatrixField out(m.grid());
  for (int k = 0; k < 4; ++k) out.c[k] = dilation(m.c[k]);
  return out;
}

double gradient_decomposition_residual(const VectorField& v, const Frame& fr) {
  const MatrixField grad = jacobian(v);
  const VectorField dr = radial_derivative(v, fr);
  const VectorField rot = angular_derivative(v);
  double worst = 0.0, scale = 0.0;
  const double core = 2.0 * fr.r_min;
  for (std::size_t k = 0; k < grad.c[0].size(); ++k) {
    double res2 = 0.0, g2 = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double gij = grad(i, j)[k];
        const double rec = dr[i][k] * fr.omega[j][k] + rot[i][k] * fr.omega_perp[j][k] / fr.r[k];
        res2 += (gij - rec) * (gij - rec);
        g2 += gij * gij;
      }
    }
    scale = std::max(scale, std::sqrt(g2));
    if (fr.r[k] >= core) worst = std::max(worst, std::sqrt(res2));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace elasto
