#include "elasto/material.hpp"

#include <cmath>
#include <sstream>

namespace elasto {

Material Material::hookean() { return Material(Kind::Hookean, "hookean", 1.0, 0.0); }
Material Material::neo_log(double c1) { return Material(Kind::NeoLog, "neo-log", c1, 0.0); }
Material Material::quadratic(double c1, double c2) { return Material(Kind::Quadratic, "quadratic", c1, c2); }
Material Material::stiffening(double c1, double c2) { return Material(Kind::Stiffening, "stiffening", c1, c2); }

Material Material::by_name(const std::string& name, const std::vector<double>& constants) {
  const double c1 = constants.size() > 0 ? constants[0] : 1.0;
  const double c2 = constants.size() > 1 ? constants[1] : 1.0;
  if (name == "hookean") return hookean();
  if (name == "neo-log") return neo_log(c1);
  if (name == "quadratic") return quadratic(c1, c2);
  if (name == "stiffening") return stiffening(c1, c2);
  throw Error("unknown material '" + name + "'");
}

EnergyPartials Material::evaluate(double tau, double delta) const {
  switch (kind_) {
    case Kind::Hookean:
      return {tau - 1.0, 1.0, 0.0};
    case Kind::NeoLog:
      if (!(delta > 0.0)) throw Error("neo-log: nonpositive delta");
      return {c1_ * (tau - 1.0) - c1_ * std::log(delta), c1_, -c1_ / delta};
    case Kind::Quadratic: {
      const double d = delta - 1.0;
      return {c1_ * (tau - 1.0) + c2_ * d * d - c1_ * d, c1_, 2.0 * c2_ * d - c1_};
    }
    case Kind::Stiffening: {
      if (!(delta > 0.0)) throw Error("stiffening: nonpositive delta");
      const double s = tau - 1.0;
      return {c1_ * s + c2_ * s * s - c1_ * std::log(delta), c1_ + 2.0 * c2_ * s, -c1_ / delta};
    }
  }
  return {};
}

Invariants invariants_of(const Mat2& F) {
  const Mat2 G = F - Mat2::Identity();
  Invariants inv;
  inv.tau = 0.5 * (F * F.transpose()).trace();
  inv.delta = F.determinant();
  inv.tau_residual = std::abs(inv.tau - 1.0 - G.trace() - 0.5 * (G * G.transpose()).trace());
  inv.delta_residual = std::abs(inv.delta - 1.0 - G.trace() - G.determinant());
  return inv;
}

InvariantFields invariants_of(const MatrixField& F) {
  InvariantFields out{ScalarField(F.grid()), ScalarField(F.grid()), 0.0, 0.0};
  for (std::size_t k = 0; k < F.c[0].size(); ++k) {
    Mat2 f;
    f << F.c[0][k], F.c[1][k], F.c[2][k], F.c[3][k];
    const Invariants inv = invariants_of(f);
    out.tau[k] = inv.tau;
    out.delta[k] = inv.delta;
    out.max_tau_residual = std::max(out.max_tau_residual, inv.tau_residual);
    out.max_delta_residual = std::max(out.max_delta_residual, inv.delta_residual);
  }
  return out;
}

AdmissibilityReport validate(const Material& m) {
  AdmissibilityReport r;
  const EnergyPartials e = m.evaluate(1.0, 1.0);
  r.W_tau_11 = e.W_tau;
  r.W_delta_11 = e.W_delta;
  r.balance = std::abs(e.W_tau + e.W_delta) <= 1e-12;
  r.positive = e.W_tau > 0.0;
  r.stress_at_identity = cauchy_stress(m, Mat2::Identity()).norm();
  r.stress_free = r.stress_at_identity <= 1e-12;
  return r;
}

Mat2 cauchy_stress(const Material& m, const Mat2& F) {
  const Invariants inv = invariants_of(F);
  if (!(inv.delta > 0.0)) throw Error("cauchy_stress: nonpositive det F");
  const EnergyPartials e = m.evaluate(inv.tau, inv.delta);
  return e.W_tau / inv.delta * (F * F.transpose()) + e.W_delta * Mat2::Identity();
}

MatrixField cauchy_stress(const Material& m, const MatrixField& F) {
  MatrixField T(F.grid());
  for (std::size_t k = 0; k < F.c[0].size(); ++k) {
    Mat2 f;
    f << F.c[0][k], F.c[1][k], F.c[2][k], F.c[3][k];
    const Mat2 t = cauchy_stress(m, f);
    T.c[0][k] = t(0, 0);
    T.c[1][k] = t(0, 1);
    T.c[2][k] = t(1, 0);
    T.c[3][k] = t(1, 1);
  }
  return T;
}

StressSplit stress_split(const Material& m, const Mat2& F) {
  const Invariants inv = invariants_of(F);
  if (!(inv.delta > 0.0)) throw Error("stress_split: nonpositive det F");
  const EnergyPartials e = m.evaluate(inv.tau, inv.delta);
  const double w11 = m.evaluate(1.0, 1.0).W_tau;
  const Mat2 FFt = F * F.transpose();
  const double a = e.W_tau / inv.delta - w11;
  StressSplit s;
  s.T1 = w11 * FFt;
  s.T2 = a * (FFt - Mat2::Identity());
  s.T3_coefficient = a + e.W_delta;
  s.T3 = s.T3_coefficient * Mat2::Identity();
  return s;
}

Mat2 incompressible_sample(double s) {
  if (!(s > -1.0)) throw Error("incompressible_sample: s must exceed -1");
  Mat2 G = Mat2::Zero();
  G(0, 0) = s;
  G(1, 1) = -s / (1.0 + s);
  return G;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("loglog_slope: need matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingFit cubic_scaling_exponent(const Material& m, const std::function<Mat2(double)>& family) {
  if (!validate(m).admissible()) throw Error("cubic_scaling_exponent: material '" + m.name() + "' is not admissible");
  std::vector<double> xs, ys;
  ScalingFit fit;
  constexpr int kSamples = 21;
  double largest = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double s = std::pow(10.0, -3.0 + 2.0 * i / (kSamples - 1));
    const Mat2 G = family(s);
    if (std::abs(G.trace() + G.determinant()) > 1e-12 * std::max(1.0, G.norm())) {
      std::ostringstream os;
      os << "cubic_scaling_exponent: family is not incompressible at s = " << s;
      throw Error(os.str());
    }
    const double t2 = stress_split(m, Mat2::Identity() + G).T2.norm();
    largest = std::max(largest, t2);
    xs.push_back(s);
    ys.push_back(t2);
  }
  fit.samples = kSamples;
  // Below this level T2 is pure rounding noise in the coefficient difference.
  if (largest <= 1e-13) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = loglog_slope(xs, ys);
  return fit;
}

}  // namespace elasto
