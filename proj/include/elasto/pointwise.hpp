#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "elasto/frame.hpp"
#include "elasto/material.hpp"

namespace elasto {

/// One sample of a (velocity, displacement gradient) pair.
struct PairValue {
  Vec2 v = Vec2::Zero();
  Mat2 G = Mat2::Zero();
};

PairValue operator+(const PairValue& a, const PairValue& b);
PairValue operator-(const PairValue& a, const PairValue& b);
double norm(const PairValue& u);

/// Outgoing (+1), transverse (0) and incoming (-1) components along omega:
///   P+1 = 1/2 (v + G w, (v + G w) (x) w)
///   P-1 = 1/2 (v - G w, -(v - G w) (x) w)
///   P0  = (0, G w_perp (x) w_perp)
/// Throws if |omega| differs from 1 by more than 1e-12.
PairValue project(int kind, const PairValue& u, const Vec2& omega);

/// B[(v1, G1), (v2, G2)] = (G2 G1^T w - (v1.w) v2, v2 (x) G1^T w - (v1.w) G2).
PairValue bilinear_B(const PairValue& a, const PairValue& b, const Vec2& omega);

/// Pointwise lift with the unit radial direction (omega = (1, 0) at the origin).
PairField project(int kind, const PairField& u, const Frame& fr);

struct CancellationTable {
  /// sup |B[P_j u, P_k w]| for unit-size u, w; index 0, 1, 2 <-> kind -1, 0, +1.
  std::array<std::array<double, 3>, 3> sup{};
  int samples = 0;
  std::uint64_t seed = 0;
  double completeness = 0.0;  // sup |P+1 u + P-1 u + P0 u - u|
  double idempotence = 0.0;   // sup |P_j P_k u - delta_jk P_k u|
  double frame_identity = 0.0;  // sup | |A w|^2 + |A w_perp|^2 - |A|^2 | / |A|^2

  static int kind_of(int index) { return index - 1; }
  /// Both diagonal +-1 entries at most the tolerance.
  bool diagonal_cancels(double tol = 1e-14) const { return sup[0][0] <= tol && sup[2][2] <= tol; }
  std::string format() const;
};

/// Samples >= 10^4 seeded random (u, w, omega).
CancellationTable cancellation_table(int samples, std::uint64_t seed);

}  // namespace elasto
