#include "elasto/grid.hpp"

#include <cmath>
#include <numbers>

namespace elasto {

Grid::Grid(int n, double half_width) : n_(n), L_(half_width), dx_(2.0 * half_width / n) {
  if (n < 16 || n % 2 != 0) {
    throw Error("grid: n must be even and >= 16, got " + std::to_string(n));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error("grid: half-width L must be positive and finite");
  }
}

double Grid::wavenumber(int m) const { return m * std::numbers::pi / L_; }

Grid make_grid(int n, double half_width) { return Grid(n, half_width); }

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) {
    throw Error(std::string(where) + ": fields live on different grids");
  }
}

}  // namespace elasto
