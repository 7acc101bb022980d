#pragma once

#include "elasto/field.hpp"

namespace elasto {

/// Radial geometry about the box center: r, omega = x/r, omega_perp = (omega_2, -omega_1).
///
/// r is clamped below at r_min; inside the clamp omega = x / r_min is not a unit
/// vector, and at the exact center omega = (1, 0). Diagnostics mask r < 2 r_min.
struct Frame {
  Grid grid;
  double r_min;
  ScalarField r;
  VectorField omega;
  VectorField omega_perp;
  VectorField x;  // position (x1, x2)
};

/// Requires 0 < r_min < L/8.
Frame make_frame(const Grid& grid, double r_min);
/// Default regularization radius 4 dx.
Frame make_frame(const Grid& grid);

/// d_r f = omega . grad f, componentwise.
ScalarField radial_derivative(const ScalarField& f, const Frame& fr);
VectorField radial_derivative(const VectorField& v, const Frame& fr);
MatrixField radial_derivative(const MatrixField& m, const Frame& fr);

/// Omega f = x2 d_1 f - x1 d_2 f, componentwise (no tilde correction).
ScalarField angular_derivative(const ScalarField& f);
VectorField angular_derivative(const VectorField& v);
MatrixField angular_derivative(const MatrixField& m);

/// x . grad f (the scaling generator at t = 0), componentwise.
ScalarField dilation(const ScalarField& f);
VectorField dilation(const VectorField& v);
MatrixField dilation(const MatrixField& m);

/// sup over r >= 2 r_min of |grad v - d_r v (x) omega - r^{-1} Omega v (x) omega_perp|,
/// normalized by sup |grad v|. Returns 0 when grad v vanishes.
double gradient_decomposition_residual(const VectorField& v, const Frame& fr);

}  // namespace elasto
