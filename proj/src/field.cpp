#include "elasto/field.hpp"

#include <algorithm>
#include <cmath>

namespace elasto {

ScalarField::ScalarField(const Grid& grid, double value) : grid_(grid), data_(grid.size(), value) {}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  for (int i = 0; i < grid.n(); ++i) {
    const double x1 = grid.coord(i);
    for (int j = 0; j < grid.n(); ++j) out(i, j) = f(x1, grid.coord(j));
  }
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField +=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField -=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField *=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] *= o.data_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

ScalarField& ScalarField::add_scaled(double s, const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField add_scaled");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

double integral(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.values()) s += x;
  return s * f.grid().cell_area();
}

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * a.grid().cell_area();
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.values()) s += x;
  return s / static_cast<double>(f.size());
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](double x) { return std::isfinite(x); });
}

ScalarField coordinate(const Grid& grid, int axis) {
  ScalarField out(grid);
  for (int i = 0; i < grid.n(); ++i)
    for (int j = 0; j < grid.n(); ++j) out(i, j) = grid.coord(axis == 0 ? i : j);
  return out;
}

// ---- VectorField ----

VectorField::VectorField(const Grid& grid) : c{ScalarField(grid), ScalarField(grid)} {}

VectorField::VectorField(ScalarField a, ScalarField b) : c{std::move(a), std::move(b)} {
  require_same_grid(c[0].grid(), c[1].grid(), "VectorField");
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int i = 0; i < 2; ++i) c[i] += o.c[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int i = 0; i < 2; ++i) c[i] -= o.c[i];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& x : c) x *= s;
  return *this;
}

VectorField& VectorField::add_scaled(double s, const VectorField& o) {
  for (int i = 0; i < 2; ++i) c[i].add_scaled(s, o.c[i]);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }
VectorField operator*(const ScalarField& s, VectorField a) {
  for (auto& x : a.c) x *= s;
  return a;
}

// ---- MatrixField ----

MatrixField::MatrixField(const Grid& grid)
    : c{ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

MatrixField MatrixField::identity(const Grid& grid) {
  MatrixField m(grid);
  m(0, 0) = ScalarField(grid, 1.0);
  m(1, 1) = ScalarField(grid, 1.0);
  return m;
}

VectorField MatrixField::column(int j) const { return VectorField((*this)(0, j), (*this)(1, j)); }

void MatrixField::set_column(int j, const VectorField& col) {
  (*this)(0, j) = col[0];
  (*this)(1, j) = col[1];
}

VectorField MatrixField::row(int i) const { return VectorField((*this)(i, 0), (*this)(i, 1)); }

MatrixField& MatrixField::operator+=(const MatrixField& o) {
  for (int k = 0; k < 4; ++k) c[k] += o.c[k];
  return *this;
}

MatrixField& MatrixField::operator-=(const MatrixField& o) {
  for (int k = 0; k < 4; ++k) c[k] -= o.c[k];
  return *this;
}

MatrixField& MatrixField::operator*=(double s) {
  for (auto& x : c) x *= s;
  return *this;
}

MatrixField& MatrixField::add_scaled(double s, const MatrixField& o) {
  for (int k = 0; k < 4; ++k) c[k].add_scaled(s, o.c[k]);
  return *this;
}

MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }
MatrixField operator*(double s, MatrixField a) { return a *= s; }
MatrixField operator*(const ScalarField& s, MatrixField a) {
  for (auto& x : a.c) x *= s;
  return a;
}

MatrixField transpose(const MatrixField& m) {
  MatrixField t = m;
  std::swap(t(0, 1), t(1, 0));
  return t;
}

ScalarField dot(const VectorField& a, const VectorField& b) { return a[0] * b[0] + a[1] * b[1]; }

VectorField apply(const MatrixField& m, const VectorField& w) {
  return VectorField(m(0, 0) * w[0] + m(0, 1) * w[1], m(1, 0) * w[0] + m(1, 1) * w[1]);
}

VectorField apply_transpose(const MatrixField& m, const VectorField& w) {
  return VectorField(m(0, 0) * w[0] + m(1, 0) * w[1], m(0, 1) * w[0] + m(1, 1) * w[1]);
}

MatrixField outer(const VectorField& a, const VectorField& b) {
  MatrixField m(a.grid());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = a[i] * b[j];
  return m;
}

MatrixField matmul(const MatrixField& a, const MatrixField& b) {
  MatrixField m(a.grid());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return m;
}

ScalarField magnitude(const VectorField& v) {
  ScalarField out(v.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::hypot(v[0][k], v[1][k]);
  return out;
}

ScalarField magnitude(const MatrixField& m) {
  ScalarField out(m.grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    double s = 0.0;
    for (const auto& comp : m.c) s += comp[k] * comp[k];
    out[k] = std::sqrt(s);
  }
  return out;
}

ScalarField trace(const MatrixField& m) { return m(0, 0) + m(1, 1); }

ScalarField determinant(const MatrixField& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

double l2_norm(const VectorField& v) { return std::sqrt(inner(v[0], v[0]) + inner(v[1], v[1])); }

double l2_norm(const MatrixField& m) {
  double s = 0.0;
  for (const auto& comp : m.c) s += inner(comp, comp);
  return std::sqrt(s);
}

double max_abs(const VectorField& v) { return max_abs(magnitude(v)); }
double max_abs(const MatrixField& m) { return max_abs(magnitude(m)); }
bool all_finite(const VectorField& v) { return all_finite(v[0]) && all_finite(v[1]); }
bool all_finite(const MatrixField& m) {
  return std::all_of(m.c.begin(), m.c.end(), [](const ScalarField& f) { return all_finite(f); });
}

// ---- PairField ----

PairField& PairField::operator+=(const PairField& o) {
  v += o.v;
  G += o.G;
  return *this;
}

PairField& PairField::operator-=(const PairField& o) {
  v -= o.v;
  G -= o.G;
  return *this;
}

PairField& PairField::operator*=(double s) {
  v *= s;
  G *= s;
  return *this;
}

PairField operator+(PairField a, const PairField& b) { return a += b; }
PairField operator-(PairField a, const PairField& b) { return a -= b; }
PairField operator*(double s, PairField a) { return a *= s; }

ScalarField energy_density(const PairField& u) {
  ScalarField e(u.grid());
  for (std::size_t k = 0; k < e.size(); ++k) {
    double s = u.v[0][k] * u.v[0][k] + u.v[1][k] * u.v[1][k];
    for (const auto& comp : u.G.c) s += comp[k] * comp[k];
    e[k] = s;
  }
  return e;
}

double norm_squared(const PairField& u) { return integral(energy_density(u)); }

}  // namespace elasto
