#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elasto {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform periodic grid on the box [-L, L)^2 with n points per axis.
///
/// Point (i, j) sits at x = (-L + i*dx, -L + j*dx); storage is row-major with
/// i (the x1 index) slowest. The box center x = 0 is the grid point (n/2, n/2).
class Grid {
 public:
  Grid(int n, double half_width);

  int n() const { return n_; }
  double half_width() const { return L_; }
  double dx() const { return dx_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  double cell_area() const { return dx_ * dx_; }

  double coord(int i) const { return -L_ + i * dx_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  /// Signed integer mode number for FFT index i, in (-n/2, n/2].
  int mode(int i) const { return i <= n_ / 2 ? i : i - n_; }
  /// Physical wavenumber of mode m: m * pi / L.
  double wavenumber(int m) const;
  /// Largest mode kept by the 2/3 dealiasing rule; 3 * cutoff < n.
  int dealias_cutoff() const { return (n_ - 1) / 3; }

  bool operator==(const Grid& other) const { return n_ == other.n_ && L_ == other.L_; }

 private:
  int n_;
  double L_;
  double dx_;
};

/// Validated constructor: n even and >= 16, L > 0.
Grid make_grid(int n, double half_width);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace elasto
