#include "elasto/dynamics.hpp"

#include <cmath>

#include "elasto/spectral.hpp"

namespace elasto {

namespace {

// v . grad w for a vector w, dealiased.
VectorField advect(const VectorField& v, const VectorField& w) {
  VectorField out(v.grid());
  for (int i = 0; i < 2; ++i) {
    const VectorField g = gradient(w[i]);
    out[i] = dealias(v[0] * g[0] + v[1] * g[1]);
  }
  return out;
}

MatrixField advect(const VectorField& v, const MatrixField& G) {
  MatrixField out(v.grid());
  for (int k = 0; k < 4; ++k) {
    const VectorField g = gradient(G.c[k]);
    out.c[k] = dealias(v[0] * g[0] + v[1] * g[1]);
  }
  return out;
}

MatrixField dealiased_matmul(const MatrixField& a, const MatrixField& b) {
  MatrixField out(a.grid());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = dealias(a(i, 0) * b(0, j) + a(i, 1) * b(1, j));
  return out;
}

MatrixField dealiased_GGt(const MatrixField& G) { return dealiased_matmul(G, transpose(G)); }

}  // namespace

State make_state(double t, VectorField v, MatrixField G) {
  require_same_grid(v.grid(), G.grid(), "make_state");
  ScalarField p = solve_pressure(v, G);
  return State{t, std::move(v), std::move(G), std::move(p)};
}

ScalarField solve_pressure(const VectorField& v, const MatrixField& G) {
  const MatrixField GGt = dealiased_GGt(G);
  const ScalarField s11 = GGt(0, 0) - dealias(v[0] * v[0]);
  const ScalarField s12 = GGt(0, 1) - dealias(v[0] * v[1]);
  const ScalarField s22 = GGt(1, 1) - dealias(v[1] * v[1]);
  ScalarField p = riesz(s11, 0, 0);
  p.add_scaled(2.0, riesz(s12, 0, 1));
  p += riesz(s22, 1, 1);
  return p;
}

VectorField quadratic_f0(const VectorField& v, const MatrixField& G) {
  VectorField f = row_divergence(dealiased_GGt(G));
  f -= advect(v, v);
  return f;
}

MatrixField quadratic_g0(const VectorField& v, const MatrixField& G) {
  MatrixField g = dealiased_matmul(jacobian(v), G);
  g -= advect(v, G);
  return g;
}

PressureCheck solve_pressure_checked(const VectorField& v, const MatrixField& G) {
  ScalarField p = solve_pressure(v, G);
  ScalarField alt = inverse_laplacian(divergence(quadratic_f0(v, G)));
  const double np = l2_norm(p), na = l2_norm(alt);
  const double gap = np == 0.0 ? na : l2_norm(p - alt) / np;
  const bool agree = np == 0.0 ? na == 0.0 : gap <= 1e-8;
  return PressureCheck{std::move(p), std::move(alt), gap, agree};
}

PairField hookean_rhs(const State& s) {
  const ScalarField p = solve_pressure(s.v, s.G);
  VectorField dv = row_divergence(s.G);
  dv += quadratic_f0(s.v, s.G);
  dv -= gradient(p);
  MatrixField dG = jacobian(s.v);
  dG += quadratic_g0(s.v, s.G);
  return PairField(std::move(dv), std::move(dG));
}

PairField linear_rhs(const State& s) {
  return PairField(leray_project(row_divergence(s.G)), jacobian(s.v));
}

PairField material_rhs(const State& s, const Material& m) {
  const MatrixField T = dealias(cauchy_stress(m, MatrixField::identity(s.grid()) + s.G));
  VectorField force = row_divergence(T);
  force -= advect(s.v, s.v);
  MatrixField dG = jacobian(s.v);
  dG += quadratic_g0(s.v, s.G);
  return PairField(leray_project(force), std::move(dG));
}

PairField Dynamics::rhs(const State& s) const {
  switch (model) {
    case Model::Hookean: return hookean_rhs(s);
    case Model::Linear: return linear_rhs(s);
    case Model::Material:
      if (!material) throw Error("material dynamics without a material");
      return material_rhs(s, *material);
  }
  throw Error("unknown model");
}

Dynamics hookean_dynamics() { return Dynamics{Model::Hookean, std::nullopt}; }
Dynamics linear_dynamics() { return Dynamics{Model::Linear, std::nullopt}; }
Dynamics material_dynamics(const Material& m) {
  if (m.is_hookean()) return hookean_dynamics();
  return Dynamics{Model::Material, m};
}

double cfl_dt(const State& s, double c) {
  return c * s.grid().dx() / (1.0 + max_abs(s.v) + max_abs(s.G));
}

State rk4_step(const State& s, double dt, const Dynamics& dyn, double cfl_limit, StepReport* report) {
  const double bound = cfl_dt(s, cfl_limit);
  if (dt > bound * (1.0 + 1e-12)) {
    throw StepError(StepError::Kind::Cfl, "rk4_step: dt = " + std::to_string(dt) + " exceeds CFL bound " +
                                              std::to_string(bound));
  }
  auto stage = [&](double c, const PairField& k) {
    State st{s.t + c * dt, s.v, s.G, ScalarField(s.grid())};
    st.v.add_scaled(c * dt, k.v);
    st.G.add_scaled(c * dt, k.G);
    return st;
  };
  const PairField k1 = dyn.rhs(s);
  const PairField k2 = dyn.rhs(stage(0.5, k1));
  const PairField k3 = dyn.rhs(stage(0.5, k2));
  const PairField k4 = dyn.rhs(stage(1.0, k3));

  VectorField v = s.v;
  MatrixField G = s.G;
  v.add_scaled(dt / 6.0, k1.v);
  v.add_scaled(dt / 3.0, k2.v);
  v.add_scaled(dt / 3.0, k3.v);
  v.add_scaled(dt / 6.0, k4.v);
  G.add_scaled(dt / 6.0, k1.G);
  G.add_scaled(dt / 3.0, k2.G);
  G.add_scaled(dt / 3.0, k3.G);
  G.add_scaled(dt / 6.0, k4.G);

  if (!all_finite(v) || !all_finite(G)) {
    throw StepError(StepError::Kind::NonFinite, "rk4_step: non-finite values at t = " + std::to_string(s.t + dt));
  }
  VectorField vp = leray_project(v);
  MatrixField Gp = project_columns(G);
  if (report) {
    report->projection_v = l2_norm(vp - v);
    report->projection_G = l2_norm(Gp - G);
  }
  return make_state(s.t + dt, std::move(vp), std::move(Gp));
}

double boundary_fraction(const PairField& u) {
  const Grid& g = u.grid();
  const ScalarField e = energy_density(u);
  const double band = g.half_width() / 2.0;
  double total = 0.0, outside = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const bool row_out = std::abs(g.coord(i)) > band;
    for (int j = 0; j < g.n(); ++j) {
      const double val = e(i, j);
      total += val;
      if (row_out || std::abs(g.coord(j)) > band) outside += val;
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::TMax: return "t_max";
    case StopReason::Breakdown: return "breakdown";
    case StopReason::BoundaryContamination: return "boundary-contamination";
  }
  return "?";
}

SimulationOutcome simulate(State& s, const Dynamics& dyn, const SimulationSettings& cfg, const OutputHook& hook) {
  if (cfg.out_every < 1) throw Error("simulate: out_every must be >= 1");
  SimulationOutcome out;
  double dt = cfg.fixed_dt > 0.0 ? cfg.fixed_dt : cfl_dt(s, cfg.cfl);
  out.dt = dt;
  auto finish = [&](StopReason r, std::string detail) {
    out.stop_reason = r;
    out.detail = std::move(detail);
    out.t_stop = s.t;
    return out;
  };
  auto emit = [&](long step) -> std::optional<StopReason> { return hook ? hook(s, step) : std::nullopt; };

  if (auto r = emit(0)) return finish(*r, "stopped by monitor at t = " + std::to_string(s.t));
  if (dt < cfg.dt_min) return finish(StopReason::Breakdown, "initial step below dt_min");

  long step = 0;
  bool emitted_last = true;
  const double t_end = cfg.t_max;
  while (s.t < t_end * (1.0 - 1e-14) - 1e-14) {
    // A hard stability cap at Courant number 1; the step is halved to stay below it.
    while (dt > cfl_dt(s, 1.0)) {
      dt *= 0.5;
      if (dt < cfg.dt_min) {
        if (!emitted_last) emit(step);
        return finish(StopReason::Breakdown, "CFL step collapsed below dt_min");
      }
    }
    const double h = std::min(dt, t_end - s.t);
    StepReport rep;
    try {
      s = rk4_step(s, h, dyn, 1.0, &rep);
    } catch (const StepError& e) {
      if (!emitted_last) emit(step);
      return finish(StopReason::Breakdown, e.what());
    }
    ++step;
    out.steps = step;
    out.max_projection = std::max({out.max_projection, rep.projection_v, rep.projection_G});
    emitted_last = false;

    const double bf = boundary_fraction(s.pair());
    const bool at_end = !(s.t < t_end * (1.0 - 1e-14) - 1e-14);
    if (step % cfg.out_every == 0 || at_end || bf > cfg.contamination_threshold) {
      emitted_last = true;
      if (auto r = emit(step)) return finish(*r, "stopped by monitor at t = " + std::to_string(s.t));
    }
    if (bf > cfg.contamination_threshold) {
      return finish(StopReason::BoundaryContamination,
                    "boundary-band energy fraction " + std::to_string(bf) + " at t = " + std::to_string(s.t));
    }
  }
  return finish(StopReason::TMax, "reached t_max");
}

}  // namespace elasto
