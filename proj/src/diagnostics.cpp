#include "elasto/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "elasto/kinematics.hpp"
#include "elasto/spectral.hpp"

namespace elasto {

namespace {

double ratio_or_value(double num, double den) { return den > 0.0 ? num / den : num; }

// Gradient of a matrix field as |grad H|^2 pointwise.
ScalarField grad_norm_sq(const MatrixField& H) {
  ScalarField out(H.grid());
  for (int k = 0; k < 4; ++k) {
    const VectorField g = gradient(H.c[k]);
    out += g[0] * g[0] + g[1] * g[1];
  }
  return out;
}

ScalarField sqrt_field(ScalarField f) {
  for (auto& x : f.values()) x = std::sqrt(std::max(x, 0.0));
  return f;
}

// Unit radial direction with omega = (1, 0) at the origin.
VectorField unit_omega(const Frame& fr) {
  VectorField w(fr.grid);
  for (std::size_t k = 0; k < w[0].size(); ++k) {
    const double x1 = fr.x[0][k], x2 = fr.x[1][k];
    const double r = std::hypot(x1, x2);
    w[0][k] = r > 0.0 ? x1 / r : 1.0;
    w[1][k] = r > 0.0 ? x2 / r : 0.0;
  }
  return w;
}

ScalarField ghost_factor(const Frame& fr, double t, bool derivative) {
  ScalarField r = true_radius(fr);
  for (auto& x : r.values()) {
    const double sigma = t - x;
    x = std::exp(-ghost_weight(sigma)) * (derivative ? ghost_weight_derivative(sigma) : 1.0);
  }
  return r;
}

}  // namespace

Mask diagnostic_mask(const Frame& fr) {
  const Grid& g = fr.grid;
  Mask m;
  m.keep.assign(g.size(), 0);
  const double band = g.half_width() / 2.0;
  const double core = 2.0 * fr.r_min;
  std::size_t kept = 0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      const double x1 = g.coord(i), x2 = g.coord(j);
      const bool keep = std::hypot(x1, x2) >= core && std::max(std::abs(x1), std::abs(x2)) <= band;
      m.keep[g.index(i, j)] = keep;
      kept += keep;
    }
  }
  m.excluded_area_fraction = 1.0 - static_cast<double>(kept) / static_cast<double>(g.size());
  return m;
}

double masked_l2(const ScalarField& f, const Mask& m) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (m.keep[k]) s += f[k] * f[k];
  return std::sqrt(s * f.grid().cell_area());
}

double masked_sup(const ScalarField& f, const Mask& m) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (m.keep[k]) s = std::max(s, std::abs(f[k]));
  return s;
}

double excluded_fraction(const ScalarField& density, const Mask& m) {
  double total = 0.0, out = 0.0;
  for (std::size_t k = 0; k < density.size(); ++k) {
    total += density[k];
    if (!m.keep[k]) out += density[k];
  }
  return total > 0.0 ? out / total : 0.0;
}

ScalarField true_radius(const Frame& fr) { return magnitude(fr.x); }

double energy_Ek(GammaContext& ctx, int k) {
  double e = 0.0;
  for (const Word& w : words_up_to(k)) e += norm_squared(ctx.word(w));
  return e;
}

WeightedNorm weighted_Xk(GammaContext& ctx, int k) {
  if (k < 1) throw Error("weighted_Xk: k must be >= 1");
  const Frame& fr = ctx.frame();
  const Mask mask = diagnostic_mask(fr);
  ScalarField weight = true_radius(fr);
  for (auto& x : weight.values()) x = std::sqrt(1.0 + (ctx.t() - x) * (ctx.t() - x));
  WeightedNorm out;
  ScalarField mass(fr.grid);
  for (const Word& w : words_up_to(k - 1)) {
    const PairField& u = ctx.word(w);
    const ScalarField gv = weight * magnitude(jacobian(u.v));
    const ScalarField gG = weight * sqrt_field(grad_norm_sq(u.G));
    out.value += masked_l2(gv, mask) + masked_l2(gG, mask);
    mass += gv * gv + gG * gG;
  }
  out.excluded = excluded_fraction(mass, mask);
  return out;
}

double initial_norm_HkLambda(const VectorField& v0, const MatrixField& G0, int k) {
  // Lambda alphabet: 0 = d1, 1 = d2, 2 = x.grad, 3 = Omega-tilde.
  std::vector<std::vector<PairField>> levels{{PairField(v0, G0)}};
  double total = std::sqrt(norm_squared(levels[0][0]));
  for (int len = 1; len <= k; ++len) {
    std::vector<PairField> next;
    for (const PairField& u : levels.back()) {
      for (int a = 0; a < 4; ++a) {
        PairField out(u.grid());
        switch (a) {
          case 0:
          case 1:
            for (int i = 0; i < 2; ++i) out.v[i] = derivative(u.v[i], a);
            for (int c = 0; c < 4; ++c) out.G.c[c] = derivative(u.G.c[c], a);
            break;
          case 2:
            out = PairField(dilation(u.v), dilation(u.G));
            break;
          default:
            out = PairField(tilde_rotate(u.v), tilde_rotate(u.G));
        }
        total += std::sqrt(norm_squared(out));
        next.push_back(std::move(out));
      }
    }
    levels.push_back(std::move(next));
  }
  return total;
}

double ghost_weight(double sigma) { return std::atan(sigma); }
double ghost_weight_derivative(double sigma) { return 1.0 / (1.0 + sigma * sigma); }

double ghost_energy(GammaContext& ctx, int k) {
  const ScalarField w = ghost_factor(ctx.frame(), ctx.t(), false);
  double e = 0.0;
  for (const Word& word : words_up_to(k)) e += integral(w * energy_density(ctx.word(word)));
  return e;
}

GhostRhs ghost_identity_rhs(const State& s, const Frame& fr) {
  const ScalarField w = ghost_factor(fr, s.t, false);
  const ScalarField wq = ghost_factor(fr, s.t, true);
  const VectorField om = unit_omega(fr);
  const VectorField om_perp(om[1], -1.0 * om[0]);
  GhostRhs rhs;
  const VectorField a = s.v + apply(s.G, om);
  const VectorField b = apply(s.G, om_perp);
  rhs.flux = -integral(wq * (dot(a, a) + dot(b, b)));
  const ScalarField p = solve_pressure(s.v, s.G);
  rhs.pressure = -2.0 * integral(w * dot(s.v, gradient(p)));
  const VectorField f0 = quadratic_f0(s.v, s.G);
  const MatrixField g0 = quadratic_g0(s.v, s.G);
  ScalarField gG(s.grid());
  for (int c = 0; c < 4; ++c) gG += g0.c[c] * s.G.c[c];
  rhs.sources = 2.0 * integral(w * (dot(f0, s.v) + gG));
  return rhs;
}

GhostResidual ghost_identity_residual(const State& before, const State& mid, const State& after, const Frame& fr,
                                      bool include_flux) {
  const double span = after.t - before.t;
  if (!(span > 0.0) || std::abs((mid.t - before.t) - (after.t - mid.t)) > 1e-9 * span) {
    throw Error("ghost_identity_residual: window must be uniformly spaced");
  }
  auto weighted = [&](const State& s) { return integral(ghost_factor(fr, s.t, false) * energy_density(s.pair())); };
  GhostResidual out;
  out.derivative = (weighted(after) - weighted(before)) / span;
  out.rhs = ghost_identity_rhs(mid, fr);
  out.residual = std::abs(out.derivative - out.rhs.total(include_flux));
  return out;
}

LNFields L_N_fields(GammaContext& ctx, int k) {
  const Grid& g = ctx.state().grid();
  LNFields out{ScalarField(g), ScalarField(g)};
  for (const Word& w : words_up_to(k)) {
    const PairField& u = ctx.word(w);
    out.L += magnitude(u.v) + magnitude(u.G);
  }
  if (k >= 1) {
    const double t = ctx.t();
    const ScalarField tr = ScalarField(g, t) + true_radius(ctx.frame());
    for (const Word& w : words_up_to(k - 1)) {
      const SourceTerms& st = ctx.sources(w);
      out.N += t * (magnitude(st.f) + magnitude(st.g) + magnitude(ctx.pressure_gradient(w)));
      out.N += tr * magnitude(st.h);
    }
  }
  return out;
}

std::map<std::string, double> special_identity_residuals(GammaContext& ctx, const Word& w) {
  const Frame& fr = ctx.frame();
  const Mask mask = diagnostic_mask(fr);
  const PairField& u = ctx.word(w);
  const VectorField& V = u.v;
  const MatrixField& H = u.G;
  std::map<std::string, double> out;

  // grad V = d_r V (x) omega + r^{-1} Omega V (x) omega_perp
  const MatrixField gradV = jacobian(V);
  const VectorField drV = radial_derivative(V, fr);
  const VectorField omV = angular_derivative(V);
  {
    MatrixField rec = outer(drV, fr.omega);
    VectorField scaled = omV;
    for (int i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < scaled[i].size(); ++k) scaled[i][k] /= fr.r[k];
    rec += outer(scaled, fr.omega_perp);
    out["decomposition"] = ratio_or_value(masked_sup(magnitude(gradV - rec), mask), masked_sup(magnitude(gradV), mask));
  }
  // r d_r V . omega + Omega V . omega_perp = r div V
  const ScalarField r_gradV = fr.r * magnitude(gradV);
  const double r_gradV_sup = masked_sup(r_gradV, mask);
  out["trace"] = ratio_or_value(masked_sup(fr.r * dot(drV, fr.omega) + dot(omV, fr.omega_perp), mask), r_gradV_sup);

  // r d_r H^T omega + Omega H^T omega_perp = r (d_i H_ij)
  const MatrixField drH = radial_derivative(H, fr);
  const MatrixField omH = angular_derivative(H);
  const ScalarField gradH = sqrt_field(grad_norm_sq(H));
  const double r_gradH_sup = masked_sup(fr.r * gradH, mask);
  out["frame_div_transpose"] = ratio_or_value(
      masked_sup(magnitude(fr.r * apply_transpose(drH, fr.omega) + apply_transpose(omH, fr.omega_perp)), mask),
      r_gradH_sup);

  // d_r H = d_r H (omega (x) omega + omega_perp (x) omega_perp)
  {
    const MatrixField P = outer(fr.omega, fr.omega) + outer(fr.omega_perp, fr.omega_perp);
    out["frame_completeness"] =
        ratio_or_value(masked_sup(magnitude(drH - matmul(drH, P)), mask), masked_sup(magnitude(drH), mask));
  }

  // perp-div Gamma^w G = h_w
  if (ctx.hookean() && static_cast<int>(w.size()) <= GammaContext::kMaxSourceLength) {
    const VectorField& h = ctx.sources(w).h;
    out["perp_div"] = ratio_or_value(masked_sup(magnitude(perp_row_divergence(H) - h), mask), masked_sup(gradH, mask));
  }

  // |grad H|^2 - |div H|^2 - |perp-div H|^2 = -2 sum_i [d1(H_i1 d2 H_i2) - d2(H_i1 d1 H_i2)]
  {
    const VectorField divH = row_divergence(H);
    const VectorField pdivH = perp_row_divergence(H);
    const ScalarField gsq = grad_norm_sq(H);
    const ScalarField lhs = dealias(gsq - dot(divH, divH) - dot(pdivH, pdivH));
    ScalarField rhs(fr.grid);
    for (int i = 0; i < 2; ++i) {
      const VectorField d = gradient(H(i, 1));
      rhs -= 2.0 * (derivative(dealias(H(i, 0) * d[1]), 0) - derivative(dealias(H(i, 0) * d[0]), 1));
    }
    out["null_form_pointwise"] = ratio_or_value(max_abs(lhs - rhs), max_abs(gsq));
    const double a = integral(gsq);
    const double b = integral(dot(divH, divH) + dot(pdivH, pdivH));
    out["null_form_integral"] = ratio_or_value(std::abs(a - b), a);
  }
  return out;
}

const std::vector<std::string>& special_ratio_names() {
  static const std::vector<std::string> names{"ratio_62", "ratio_63",  "ratio_64", "ratio_65", "ratio_66p",
                                              "ratio_66m", "ratio_L62", "ratio_81", "ratio_82"};
  return names;
}

std::vector<std::pair<std::string, double>> special_quantity_norms(GammaContext& ctx, int k, const LNFields& ln,
                                                                   double Ek) {
  const Frame& fr = ctx.frame();
  const Mask mask = diagnostic_mask(fr);
  const double t = ctx.t();
  const double L_norm = masked_l2(ln.L, mask);
  const double LN_norm = masked_l2(ln.L + ln.N, mask);
  const ScalarField r = true_radius(fr);
  ScalarField t_plus(fr.grid), t_minus(fr.grid);
  for (std::size_t i = 0; i < r.size(); ++i) {
    t_plus[i] = t + r[i];
    t_minus[i] = std::abs(t - r[i]);
  }
  std::map<std::string, double> best;
  for (const auto& name : special_ratio_names()) best[name] = 0.0;
  auto keep_max = [&](const std::string& key, double value) { best[key] = std::max(best[key], value); };

  for (const Word& w : words_up_to(k - 1)) {
    const PairField& u = ctx.word(w);
    const VectorField drV = radial_derivative(u.v, fr);
    const MatrixField drH = radial_derivative(u.G, fr);
    const VectorField divH = row_divergence(u.G);
    const MatrixField gradV = jacobian(u.v);

    keep_max("ratio_62", ratio_or_value(masked_l2(fr.r * dot(drV, fr.omega), mask), L_norm));
    keep_max("ratio_63", ratio_or_value(masked_l2(fr.r * magnitude(apply_transpose(drH, fr.omega)), mask), L_norm));
    keep_max("ratio_64", ratio_or_value(masked_l2(fr.r * magnitude(apply(drH, fr.omega) - divH), mask), L_norm));
    keep_max("ratio_65", ratio_or_value(masked_l2(fr.r * magnitude(apply(drH, fr.omega_perp)), mask), LN_norm));
    const MatrixField cross = outer(divH, fr.omega);
    keep_max("ratio_66p", ratio_or_value(masked_l2(t_plus * magnitude(gradV + cross), mask), LN_norm));
    keep_max("ratio_66m", ratio_or_value(masked_l2(t_minus * magnitude(gradV - cross), mask), LN_norm));
    const double q81 = masked_l2(fr.r * magnitude(drV + apply(drH, fr.omega)), mask) +
                       masked_l2(fr.r * magnitude(apply(drH, fr.omega_perp)), mask);
    keep_max("ratio_81", ratio_or_value(q81, std::sqrt(Ek)));

    if (static_cast<int>(w.size()) <= k - 2) {
      const double E_next = energy_Ek(ctx, static_cast<int>(w.size()) + 2);
      const double q62 = masked_sup(fr.r * dot(u.v, fr.omega), mask) +
                         masked_sup(fr.r * magnitude(apply_transpose(u.G, fr.omega)), mask);
      keep_max("ratio_L62", ratio_or_value(q62, std::sqrt(E_next)));
      const double q82 = masked_sup(fr.r * magnitude(u.v + apply(u.G, fr.omega)), mask) +
                         masked_sup(fr.r * magnitude(apply(u.G, fr.omega_perp)), mask);
      keep_max("ratio_82", ratio_or_value(q82, std::sqrt(Ek)));
    }
  }
  std::vector<std::pair<std::string, double>> out;
  for (const auto& name : special_ratio_names()) out.emplace_back(name, best[name]);
  return out;
}

double growth_statistic(double t, double Etilde_prime, double Etilde) {
  if (!(Etilde > 0.0)) return 0.0;
  return std::sqrt(1.0 + t * t) * std::max(Etilde_prime, 0.0) / std::pow(Etilde, 1.5);
}

MonitorRatios monitor_ratios(double t, double Etilde_prime, double Etilde, double Ek, double Xk, double N_norm) {
  MonitorRatios m;
  m.C_growth = growth_statistic(t, Etilde_prime, Etilde);
  const double den71 = Ek + std::sqrt(Ek * Xk);
  m.ratio_71 = den71 > 0.0 ? N_norm / den71 : 0.0;
  m.ratio_73 = Ek > 0.0 ? Xk / std::sqrt(Ek) : 0.0;
  return m;
}

DiagRow diagnose_state(const State& s, const Frame& fr, int k, const std::optional<Material>& material) {
  if (k < 0) throw Error("diagnose_state: k must be >= 0");
  if (material && !material->is_hookean() && k != 0) {
    throw Error("diagnose_state: non-Hookean materials support diagnostic order k = 0 only");
  }
  GammaContext ctx(s, fr, material);
  DiagRow row;
  row.t = s.t;
  row.E0 = energy_Ek(ctx, 0);
  row.Ek = energy_Ek(ctx, k);
  if (k >= 1) {
    const WeightedNorm xk = weighted_Xk(ctx, k);
    row.Xk = xk.value;
    row.Xk_excluded = xk.excluded;
  }
  row.Etilde_k = ghost_energy(ctx, k);
  const LNFields ln = L_N_fields(ctx, k);
  row.N_norm = masked_l2(ln.N, diagnostic_mask(fr));
  const MonitorRatios m = monitor_ratios(s.t, 0.0, row.Etilde_k, row.Ek, row.Xk, row.N_norm);
  row.ratio_71 = m.ratio_71;
  row.ratio_73 = m.ratio_73;
  const ConstraintResiduals cr = constraint_residuals(s.v, s.G);
  row.divV = cr.div_v;
  row.divGT = cr.div_GT;
  row.compat = cr.compat;
  row.boundary_fraction = boundary_fraction(s.pair());
  row.special = special_quantity_norms(ctx, k, ln, row.Ek);
  return row;
}

}  // namespace elasto
