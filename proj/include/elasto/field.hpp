#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "elasto/grid.hpp"

namespace elasto {

/// Real samples of a scalar function on a periodic grid.
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid, double value = 0.0);

  /// Samples f(x1, x2) at every grid point.
  static ScalarField sample(const Grid& grid, const std::function<double(double, double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }
  double& operator()(int i, int j) { return data_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return data_[grid_.index(i, j)]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& add_scaled(double s, const ScalarField& o);

 private:
  Grid grid_;
  std::vector<double> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a);
/// Pointwise (aliased) product.
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Integral over the box by the periodic trapezoid rule.
double integral(const ScalarField& f);
double inner(const ScalarField& a, const ScalarField& b);
double l2_norm(const ScalarField& f);
double max_abs(const ScalarField& f);
double mean(const ScalarField& f);
bool all_finite(const ScalarField& f);

/// x1 (axis 0) or x2 (axis 1) coordinate sampled on the grid.
ScalarField coordinate(const Grid& grid, int axis);

/// 2-vector per grid point; components indexed 0, 1.
struct VectorField {
  explicit VectorField(const Grid& grid);
  VectorField(ScalarField a, ScalarField b);

  const Grid& grid() const { return c[0].grid(); }
  ScalarField& operator[](int i) { return c[i]; }
  const ScalarField& operator[](int i) const { return c[i]; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& add_scaled(double s, const VectorField& o);

  std::array<ScalarField, 2> c;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);
/// Pointwise scalar times vector.
VectorField operator*(const ScalarField& s, VectorField a);

/// 2x2 matrix per grid point, stored row-major: (i, j) -> c[2*i + j].
struct MatrixField {
  explicit MatrixField(const Grid& grid);
  static MatrixField identity(const Grid& grid);

  const Grid& grid() const { return c[0].grid(); }
  ScalarField& operator()(int i, int j) { return c[2 * i + j]; }
  const ScalarField& operator()(int i, int j) const { return c[2 * i + j]; }

  /// Column j as a vector field (M_{0j}, M_{1j}).
  VectorField column(int j) const;
  void set_column(int j, const VectorField& col);
  VectorField row(int i) const;

  MatrixField& operator+=(const MatrixField& o);
  MatrixField& operator-=(const MatrixField& o);
  MatrixField& operator*=(double s);
  MatrixField& add_scaled(double s, const MatrixField& o);

  std::array<ScalarField, 4> c;
};

MatrixField operator+(MatrixField a, const MatrixField& b);
MatrixField operator-(MatrixField a, const MatrixField& b);
MatrixField operator*(double s, MatrixField a);
MatrixField operator*(const ScalarField& s, MatrixField a);
MatrixField transpose(const MatrixField& m);

// Pointwise algebra, evaluated sample by sample (no dealiasing).
ScalarField dot(const VectorField& a, const VectorField& b);
VectorField apply(const MatrixField& m, const VectorField& w);
VectorField apply_transpose(const MatrixField& m, const VectorField& w);
MatrixField outer(const VectorField& a, const VectorField& b);
MatrixField matmul(const MatrixField& a, const MatrixField& b);
ScalarField magnitude(const VectorField& v);
ScalarField magnitude(const MatrixField& m);
ScalarField trace(const MatrixField& m);
ScalarField determinant(const MatrixField& m);

double l2_norm(const VectorField& v);
double l2_norm(const MatrixField& m);
double max_abs(const VectorField& v);
double max_abs(const MatrixField& m);
bool all_finite(const VectorField& v);
bool all_finite(const MatrixField& m);

/// A (vector, matrix) pair such as (v, G) or Gamma^alpha (v, G).
struct PairField {
  explicit PairField(const Grid& grid) : v(grid), G(grid) {}
  PairField(VectorField v_, MatrixField G_) : v(std::move(v_)), G(std::move(G_)) {}

  const Grid& grid() const { return v.grid(); }
  PairField& operator+=(const PairField& o);
  PairField& operator-=(const PairField& o);
  PairField& operator*=(double s);

  VectorField v;
  MatrixField G;
};

PairField operator+(PairField a, const PairField& b);
PairField operator-(PairField a, const PairField& b);
PairField operator*(double s, PairField a);

/// |v|^2 + |G|^2 pointwise.
ScalarField energy_density(const PairField& u);
/// ||v||^2 + ||G||^2.
double norm_squared(const PairField& u);

}  // namespace elasto
