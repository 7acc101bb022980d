#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "elasto/field.hpp"

namespace elasto {

enum class StreamShape { GaussianBump, Ring, RandomBandLimited };

StreamShape parse_stream_shape(const std::string& name);
std::string to_string(StreamShape shape);

/// Stream-function profile psi; the amplitude multiplies the profile linearly.
struct StreamSpec {
  StreamShape shape = StreamShape::GaussianBump;
  double amplitude = 0.0;
  std::array<double, 2> center{0.0, 0.0};
  double width = 1.0;
  std::uint64_t seed = 0;
};

/// Closed-form psi with first and second derivatives.
class StreamProfile {
 public:
  struct Jet {
    double value = 0.0;
    std::array<double, 2> grad{};
    double h11 = 0.0, h12 = 0.0, h22 = 0.0;
  };

  explicit StreamProfile(const StreamSpec& spec);

  Jet eval(double x1, double x2) const;

 private:
  struct Mode {
    double k1, k2, a, b;
  };
  StreamSpec spec_;
  std::array<Mode, 6> modes_{};
};

ScalarField stream_function(const StreamSpec& spec, const Grid& grid);

/// v = (d_2 psi, -d_1 psi) by spectral differentiation. Rejects profiles whose
/// support reaches the boundary band |x|_inf > L/2.
VectorField stream_velocity(const StreamSpec& spec, const Grid& grid);

/// G0 = F0 - I for the time-1 flow of grad-perp psi. Each grid point is traced
/// backward along the characteristic with classical RK4 while the inverse
/// Jacobian K = dX/dx is propagated by dK/ds = -grad u K; F0 = K^{-1}.
/// Throws if max |det(I + G0) - 1| exceeds 1e-8.
MatrixField flow_deformation(const StreamSpec& spec, const Grid& grid, int steps);

struct ConstraintResiduals {
  double div_v = 0.0;
  double div_GT = 0.0;
  double compat = 0.0;
};

/// (d_j G_ik - d_k G_ij) - (G_mk d_m G_ij - G_mj d_m G_ik) for (j, k) = (1, 2),
/// i.e. h(G) - perp-div G with the sign of the curl identity; indexed by i.
VectorField compatibility_defect(const MatrixField& G);

/// L2 norms of div v, d_i G_ij and the compatibility defect.
ConstraintResiduals constraint_residuals(const VectorField& v, const MatrixField& G);

struct InitialData {
  VectorField v;
  MatrixField G;
  double max_det_error = 0.0;
  double compat_before_projection = 0.0;
  double compat_after_projection = 0.0;
  /// L2 size of the column projection applied to G0.
  double projection_size = 0.0;
};

/// Admissible data: stream velocity plus flow-map deformation, dealiased, with
/// the columns of G0 projected onto divergence-free fields.
InitialData make_initial_data(const StreamSpec& spec, const Grid& grid, int steps = 64);

}  // namespace elasto
