#pragma once

#include <complex>
#include <span>
#include <vector>

#include "elasto/field.hpp"

namespace elasto {

/// Half-complex Fourier coefficients of a real field: n x (n/2 + 1).
class Spectrum {
 public:
  explicit Spectrum(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int rows() const { return grid_.n(); }
  int cols() const { return grid_.n() / 2 + 1; }

  std::complex<double>& operator()(int i, int jh) { return c_[static_cast<std::size_t>(i) * cols() + jh]; }
  std::complex<double> operator()(int i, int jh) const {
    return c_[static_cast<std::size_t>(i) * cols() + jh];
  }
  std::span<std::complex<double>> coeffs() { return c_; }
  std::span<const std::complex<double>> coeffs() const { return c_; }

  Spectrum& operator+=(const Spectrum& o);

 private:
  Grid grid_;
  std::vector<std::complex<double>> c_;
};

Spectrum forward(const ScalarField& f);
/// Inverse transform including the 1/n^2 normalization.
ScalarField inverse(const Spectrum& s);

/// Wavenumber used by odd-order derivatives: the Nyquist mode maps to 0.
double derivative_wavenumber(const Grid& grid, int mode);

// Spectral differential operators. Conventions: (grad v)_ij = d_j v_i,
// (div M)_i = d_j M_ij, (perp-div M)_i = d_2 M_i1 - d_1 M_i2, x_perp = (x2, -x1).

ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
/// grad-perp psi = (d_2 psi, -d_1 psi).
VectorField perp_gradient(const ScalarField& psi);
ScalarField divergence(const VectorField& v);
MatrixField jacobian(const VectorField& v);
VectorField row_divergence(const MatrixField& m);
VectorField perp_row_divergence(const MatrixField& m);
/// Gradient applied componentwise to a matrix field: out[k] = grad of m.c[k].
std::array<VectorField, 4> gradient(const MatrixField& m);

ScalarField laplacian(const ScalarField& f);
/// Zero-mean u with laplacian(u) = f - mean(f).
ScalarField inverse_laplacian(const ScalarField& f);
/// Delta^{-1} d_i d_j f with symbol k_i k_j / |k|^2, zero-mean gauge.
ScalarField riesz(const ScalarField& f, int i, int j);
/// grad Delta^{-1} f.
VectorField inverse_laplacian_gradient(const ScalarField& f);
/// grad Delta^{-1} div w, i.e. the gradient part of w.
VectorField gradient_part(const VectorField& w);

/// Removes the gradient part: div of the result vanishes spectrally.
VectorField leray_project(const VectorField& v);
/// Projects every column of M so that d_i M_ij = 0.
MatrixField project_columns(const MatrixField& m);

/// 2/3-rule truncation.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);
MatrixField dealias(const MatrixField& m);
/// Dealiased pointwise product.
ScalarField product(const ScalarField& a, const ScalarField& b);

/// Energy of modes above the 2/3 cutoff relative to total energy.
double dealias_tail_fraction(const ScalarField& f);

}  // namespace elasto
