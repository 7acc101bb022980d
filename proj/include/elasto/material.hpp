#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "elasto/field.hpp"

namespace elasto {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// W and its first partials at one (tau, delta).
struct EnergyPartials {
  double W = 0.0;
  double W_tau = 0.0;
  double W_delta = 0.0;
};

/// Isotropic stored energy W(F) = Wbar(tau, delta), tau = |F|^2 / 2, delta = det F.
class Material {
 public:
  enum class Kind { Hookean, NeoLog, Quadratic, Stiffening };

  static Material hookean();
  /// c1 (tau - 1) - c1 ln delta
  static Material neo_log(double c1 = 1.0);
  /// c1 (tau - 1) + c2 (delta - 1)^2 - c1 (delta - 1)
  static Material quadratic(double c1 = 1.0, double c2 = 1.0);
  /// c1 (tau - 1) + c2 (tau - 1)^2 - c1 ln delta. Its T2 part does not vanish
  /// on incompressible deformations, unlike neo-log and quadratic.
  static Material stiffening(double c1 = 1.0, double c2 = 1.0);
  /// Builds a model from its config name and constant list (missing constants default to 1).
  static Material by_name(const std::string& name, const std::vector<double>& constants);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  bool is_hookean() const { return kind_ == Kind::Hookean; }

  /// Throws on delta <= 0 for the log models.
  EnergyPartials evaluate(double tau, double delta) const;

 private:
  Material(Kind k, std::string name, double c1, double c2) : kind_(k), name_(std::move(name)), c1_(c1), c2_(c2) {}
  Kind kind_;
  std::string name_;
  double c1_, c2_;
};

struct Invariants {
  double tau = 0.0;
  double delta = 0.0;
  /// |tau - 1 - tr G - tr(G G^T)/2| and |delta - 1 - tr G - det G| with G = F - I.
  double tau_residual = 0.0;
  double delta_residual = 0.0;
};

Invariants invariants_of(const Mat2& F);

struct InvariantFields {
  ScalarField tau;
  ScalarField delta;
  double max_tau_residual = 0.0;
  double max_delta_residual = 0.0;
};

InvariantFields invariants_of(const MatrixField& F);

struct AdmissibilityReport {
  double W_tau_11 = 0.0;
  double W_delta_11 = 0.0;
  bool balance = false;   // W_tau(1,1) + W_delta(1,1) = 0 to 1e-12
  bool positive = false;  // W_tau(1,1) > 0
  double stress_at_identity = 0.0;  // |T(I)|
  bool stress_free = false;         // |T(I)| <= 1e-12
  bool admissible() const { return balance && positive && stress_free; }
};

AdmissibilityReport validate(const Material& m);

/// T(F) = delta^{-1} W_tau F F^T + W_delta I. Throws on delta <= 0.
Mat2 cauchy_stress(const Material& m, const Mat2& F);
MatrixField cauchy_stress(const Material& m, const MatrixField& F);

struct StressSplit {
  Mat2 T1, T2, T3;
  double T3_coefficient = 0.0;  // T3 = coefficient * I
};

StressSplit stress_split(const Material& m, const Mat2& F);

/// G(s) = diag(s, -s/(1+s)); throws for s <= -1.
Mat2 incompressible_sample(double s);

struct ScalingFit {
  double slope = 0.0;
  /// T2 vanished identically along the family, so no slope exists.
  bool degenerate = false;
  int samples = 0;
};

/// Least-squares slope of log |T2(I + G(s))| against log s for s in [1e-3, 1e-1].
/// Throws if the family violates tr G + det G = 0 or m is not admissible.
ScalingFit cubic_scaling_exponent(const Material& m, const std::function<Mat2(double)>& family = incompressible_sample);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace elasto
