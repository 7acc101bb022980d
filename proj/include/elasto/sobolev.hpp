#pragma once

#include <string>
#include <vector>

#include "elasto/frame.hpp"
#include "elasto/kinematics.hpp"

namespace elasto {

/// One inequality evaluated on one ensemble member: lhs <= C rhs, ratio = lhs / rhs.
struct SobolevEntry {
  std::string inequality;   // inequality label, e.g. "radial l=1"
  std::string member;  // ensemble member label
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct SobolevMember {
  std::string label;
  StreamSpec profile;  // amplitude 1 is typical; the profile is the test function f
  bool radial = false;
};

/// Gaussians of varying width and offset, band-limited noise, and a dilation
/// sequence, all well inside the box of half-width L.
std::vector<SobolevMember> sobolev_ensemble(double half_width);
/// Members translated toward the box edge (periodization control).
std::vector<SobolevMember> sobolev_edge_ensemble(double half_width);

struct SobolevReport {
  std::vector<SobolevEntry> entries;
  /// Maximum ratio per inequality label, in first-seen order.
  std::vector<std::pair<std::string, double>> max_ratio;
  std::string format() const;
};

/// Radial inequalities run on radial members only; circle and planar ones on all.
/// Sup-type left sides are taken over r >= 2 r_min inside |x|_inf <= L/2.
SobolevReport sobolev_ratio_suite(const std::vector<SobolevMember>& family, const Frame& fr, double t);

}  // namespace elasto
