#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "elasto/gamma.hpp"

namespace elasto {

/// Points kept by r-weighted and sup norms: r >= 2 r_min and |x|_inf <= L/2.
struct Mask {
  std::vector<char> keep;
  double excluded_area_fraction = 0.0;
};

Mask diagnostic_mask(const Frame& fr);
double masked_l2(const ScalarField& f, const Mask& m);
double masked_sup(const ScalarField& f, const Mask& m);
/// Fraction of integral(f) (f >= 0) falling outside the mask.
double excluded_fraction(const ScalarField& density, const Mask& m);

/// Unclamped |x|.
ScalarField true_radius(const Frame& fr);

/// sum over |w| <= k of ||Gamma^w v||^2 + ||Gamma^w G||^2.
double energy_Ek(GammaContext& ctx, int k);

struct WeightedNorm {
  double value = 0.0;
  /// Fraction of the weighted squared mass removed by the mask.
  double excluded = 0.0;
};

/// sum over |w| <= k-1 of ||<t-r> grad Gamma^w v|| + ||<t-r> grad Gamma^w G||, masked.
WeightedNorm weighted_Xk(GammaContext& ctx, int k);

/// sum over words of length <= k in {d1, d2, x.grad, Omega-tilde} of
/// sqrt(||Lambda v||^2 + ||Lambda G||^2). Equals sqrt(E0) for k = 0.
double initial_norm_HkLambda(const VectorField& v0, const MatrixField& G0, int k);

/// q(sigma) = arctan(sigma) and q'(sigma) = 1 / (1 + sigma^2).
double ghost_weight(double sigma);
double ghost_weight_derivative(double sigma);

/// sum over |w| <= k of integral e^{-q(t-r)} (|Gamma^w v|^2 + |Gamma^w G|^2).
double ghost_energy(GammaContext& ctx, int k);

struct GhostRhs {
  double flux = 0.0;      // -integral e^{-q} q' (|v + G omega|^2 + |G omega_perp|^2)
  double pressure = 0.0;  // -2 integral e^{-q} v . grad p
  double sources = 0.0;   // 2 integral e^{-q} (f0 . v + g0 : G)
  double total(bool include_flux = true) const { return (include_flux ? flux : 0.0) + pressure + sources; }
};

GhostRhs ghost_identity_rhs(const State& s, const Frame& fr);

struct GhostResidual {
  double derivative = 0.0;  // centered difference of the weighted energy at the middle state
  GhostRhs rhs;
  double residual = 0.0;
};

/// Three uniformly spaced states; with include_flux = false the flux term is
/// dropped from the assembled right-hand side.
GhostResidual ghost_identity_residual(const State& before, const State& mid, const State& after, const Frame& fr,
                                      bool include_flux = true);

struct LNFields {
  ScalarField L;
  ScalarField N;
};

/// L_k = sum_{|w|<=k} |Gamma^w v| + |Gamma^w G|;
/// N_k = sum_{|w|<=k-1} t|f_w| + t|g_w| + (t+r)|h_w| + t|grad Gamma^w p|.
LNFields L_N_fields(GammaContext& ctx, int k);

/// Relative residuals of the frame identities for Gamma^w (v, G). Keys:
/// decomposition, trace, frame_div_transpose, frame_completeness, perp_div,
/// null_form_pointwise, null_form_integral.
std::map<std::string, double> special_identity_residuals(GammaContext& ctx, const Word& w);

/// Names of the special-quantity ratio columns, in CSV order.
const std::vector<std::string>& special_ratio_names();

/// Ratios of masked left-hand norms to the matching bound, maxed over words.
std::vector<std::pair<std::string, double>> special_quantity_norms(GammaContext& ctx, int k, const LNFields& ln,
                                                                   double Ek);

struct MonitorRatios {
  double C_growth = 0.0;
  double ratio_71 = 0.0;
  double ratio_73 = 0.0;
};

/// <t> max(Etilde', 0) / Etilde^{3/2}; zero when Etilde vanishes.
double growth_statistic(double t, double Etilde_prime, double Etilde);
MonitorRatios monitor_ratios(double t, double Etilde_prime, double Etilde, double Ek, double Xk, double N_norm);

/// One row of per-state diagnostics; C_growth is filled in by the caller once
/// the neighbouring rows are known.
struct DiagRow {
  double t = 0.0;
  double E0 = 0.0;
  double Ek = 0.0;
  double Xk = 0.0;
  double Etilde_k = 0.0;
  double C_growth = 0.0;
  double ratio_71 = 0.0;
  double ratio_73 = 0.0;
  double divV = 0.0;
  double divGT = 0.0;
  double compat = 0.0;
  double boundary_fraction = 0.0;
  double N_norm = 0.0;
  /// Fraction of the X_k weighted mass removed by the mask.
  double Xk_excluded = 0.0;
  std::vector<std::pair<std::string, double>> special;
};

/// Evaluates every per-state column at diagnostic order k. Non-Hookean
/// materials support k = 0 only.
DiagRow diagnose_state(const State& s, const Frame& fr, int k, const std::optional<Material>& material = std::nullopt);

}  // namespace elasto
