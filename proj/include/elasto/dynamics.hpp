#pragma once

#include <functional>
#include <optional>
#include <string>

#include "elasto/field.hpp"
#include "elasto/material.hpp"

namespace elasto {

struct State {
  double t = 0.0;
  VectorField v;
  MatrixField G;
  ScalarField p;  // cached pressure for (v, G), zero mean

  const Grid& grid() const { return v.grid(); }
  PairField pair() const { return PairField(v, G); }
};

/// Builds a state and caches its pressure.
State make_state(double t, VectorField v, MatrixField G);

/// p = Delta^{-1} d_i d_j (G_ik G_jk - v_i v_j), zero mean, products dealiased.
ScalarField solve_pressure(const VectorField& v, const MatrixField& G);

struct PressureCheck {
  ScalarField p;        // symbol route
  ScalarField p_alt;    // Delta^{-1} div f0
  double relative_gap;  // ||p - p_alt|| / max(||p||, tiny)
  bool agree;           // gap <= 1e-8
};

PressureCheck solve_pressure_checked(const VectorField& v, const MatrixField& G);

/// Quadratic parts of the Hookean system:
/// f0 = -v.grad v + div(G G^T), g0 = -v.grad G + grad v G (dealiased products).
VectorField quadratic_f0(const VectorField& v, const MatrixField& G);
MatrixField quadratic_g0(const VectorField& v, const MatrixField& G);

/// dv = -v.grad v - grad p + div G + div(G G^T); dG = -v.grad G + grad v + grad v G.
PairField hookean_rhs(const State& s);
/// Linearized system: dv = div G - grad Delta^{-1} div div G, dG = grad v.
PairField linear_rhs(const State& s);
/// dv = P(-v.grad v + div T(F)), dG as Hookean; P the Leray projector, which
/// absorbs the isotropic stress part into the pressure.
PairField material_rhs(const State& s, const Material& m);

enum class Model { Hookean, Linear, Material };

struct Dynamics {
  Model model = Model::Hookean;
  std::optional<Material> material;  // required for Model::Material

  PairField rhs(const State& s) const;
};

Dynamics hookean_dynamics();
Dynamics linear_dynamics();
/// Hookean materials map onto the dedicated Hookean path.
Dynamics material_dynamics(const Material& m);

class StepError : public Error {
 public:
  enum class Kind { Cfl, NonFinite };
  StepError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// c * dx / (1 + max|v| + max|G|).
double cfl_dt(const State& s, double c = 0.5);

struct StepReport {
  /// L2 size of the post-step divergence projections of v and of the columns of G.
  double projection_v = 0.0;
  double projection_G = 0.0;
};

/// Classical RK4; the pressure is re-solved at every stage, v and the columns
/// of G are projected afterwards and p is recached. Throws StepError when dt
/// exceeds cfl_dt(s, cfl_limit) or the result is not finite.
State rk4_step(const State& s, double dt, const Dynamics& dyn, double cfl_limit = 1.0,
               StepReport* report = nullptr);

/// Fraction of integral(|v|^2 + |G|^2) located in |x|_inf > L/2.
double boundary_fraction(const PairField& u);

enum class StopReason { TMax, Breakdown, BoundaryContamination };
std::string to_string(StopReason r);

struct SimulationSettings {
  double t_max = 50.0;
  double cfl = 0.5;
  double dt_min = 1e-6;
  int out_every = 10;
  double contamination_threshold = 1e-6;
  /// When positive, overrides the CFL-derived step (still checked against CFL).
  double fixed_dt = 0.0;
};

struct SimulationOutcome {
  StopReason stop_reason = StopReason::TMax;
  std::string detail;
  double t_stop = 0.0;
  double dt = 0.0;
  long steps = 0;
  double max_projection = 0.0;
};

/// Called at step 0 and every out_every steps (and at the final state); a
/// returned reason stops the run, e.g. when a monitored energy breaks down.
using OutputHook = std::function<std::optional<StopReason>(const State&, long step)>;

/// Advances s with a fixed step dt = cfl * dx / (1 + max|v| + max|G|) taken from
/// the initial state. The step is halved whenever the CFL bound tightens; falling
/// below dt_min, non-finite values, or a hook verdict stop with breakdown.
/// Boundary-band energy above the threshold stops with boundary contamination.
SimulationOutcome simulate(State& s, const Dynamics& dyn, const SimulationSettings& cfg, const OutputHook& hook);

}  // namespace elasto
