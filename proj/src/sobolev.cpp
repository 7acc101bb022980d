#include "elasto/sobolev.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "elasto/diagnostics.hpp"
#include "elasto/spectral.hpp"

namespace elasto {

namespace {

SobolevMember member(std::string label, StreamShape shape, double width, double c1, double c2, std::uint64_t seed,
                     bool radial) {
  StreamSpec s;
  s.shape = shape;
  s.amplitude = 1.0;
  s.width = width;
  s.center = {c1, c2};
  s.seed = seed;
  return SobolevMember{std::move(label), s, radial};
}

double bracket(double s) { return std::sqrt(1.0 + s * s); }

double l2sq(const ScalarField& f) { return integral(f * f); }

}  // namespace

std::vector<SobolevMember> sobolev_ensemble(double half_width) {
  const double u = half_width / (4.0 * M_PI);
  std::vector<SobolevMember> out;
  for (double w : {0.75, 1.0, 1.25, 1.5}) {
    char label[64];
    std::snprintf(label, sizeof label, "gauss-w%.2f", w);
    out.push_back(member(label, StreamShape::GaussianBump, w * u, 0.0, 0.0, 0, true));
  }
  out.push_back(member("ring-w1.00", StreamShape::Ring, u, 0.0, 0.0, 0, true));
  out.push_back(member("gauss-offset-a", StreamShape::GaussianBump, u, 1.0 * u, 0.5 * u, 0, false));
  out.push_back(member("gauss-offset-b", StreamShape::GaussianBump, u, -1.5 * u, 1.0 * u, 0, false));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    out.push_back(member("band-seed" + std::to_string(seed), StreamShape::RandomBandLimited, u, 0.0, 0.0, seed, false));
  }
  return out;
}

std::vector<SobolevMember> sobolev_edge_ensemble(double half_width) {
  const double u = half_width / (4.0 * M_PI);
  return {member("gauss-edge-0.60L", StreamShape::GaussianBump, u, 0.6 * half_width, 0.0, 0, false),
          member("gauss-edge-0.85L", StreamShape::GaussianBump, u, 0.85 * half_width, 0.0, 0, false)};
}

SobolevReport sobolev_ratio_suite(const std::vector<SobolevMember>& family, const Frame& fr, double t) {
  const Grid& g = fr.grid;
  const Mask mask = diagnostic_mask(fr);
  const ScalarField r = true_radius(fr);
  ScalarField tr(g);  // <t - r>
  for (std::size_t k = 0; k < r.size(); ++k) tr[k] = bracket(t - r[k]);

  SobolevReport rep;
  std::map<std::string, std::size_t> slot;
  auto add = [&](const std::string& inequality, const std::string& label, double lhs, double rhs) {
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    rep.entries.push_back({inequality, label, lhs, rhs, ratio});
    auto it = slot.find(inequality);
    if (it == slot.end()) {
      slot[inequality] = rep.max_ratio.size();
      rep.max_ratio.emplace_back(inequality, ratio);
    } else {
      rep.max_ratio[it->second].second = std::max(rep.max_ratio[it->second].second, ratio);
    }
  };
  auto sup_weighted = [&](const ScalarField& weight, const ScalarField& f) {
    return masked_sup(weight * f * f, mask);
  };

  for (const SobolevMember& m : family) {
    const ScalarField f = stream_function(m.profile, g);
    const ScalarField df = radial_derivative(f, fr);
    const ScalarField Of = angular_derivative(f);
    const ScalarField dOf = radial_derivative(Of, fr);

    if (m.radial) {
      // r^lambda |f|^2 <= ||r^{lambda-1} d_r f||^2 + ||f||^2
      add("radial l=1", m.label, sup_weighted(r, f), l2sq(df) + l2sq(f));
      add("radial l=2", m.label, sup_weighted(r * r, f), l2sq(r * df) + l2sq(f));
      // r <t-r>^lambda |f|^2 <= ||<t-r> d_r f||^2 + ||<t-r>^{lambda-1} f||^2
      add("radial-cone l=1", m.label, sup_weighted(r * tr, f), l2sq(tr * df) + l2sq(f));
      add("radial-cone l=2", m.label, sup_weighted(r * tr * tr, f), l2sq(tr * df) + l2sq(tr * f));
    }

    // Circle embedding: |f(r w)|^2 <= sum_a integral over the circle of |Omega^a f|^2 d theta.
    {
      const StreamProfile prof(m.profile);
      double worst_lhs = 0.0, worst_rhs = 1.0, worst_ratio = -1.0;
      constexpr int kPoints = 720;
      for (double frac : {0.05, 0.1, 0.2, 0.3, 0.4}) {
        const double rho = frac * g.half_width();
        if (rho < 2.0 * fr.r_min) continue;
        double lhs = 0.0, rhs = 0.0;
        for (int q = 0; q < kPoints; ++q) {
          const double th = 2.0 * M_PI * q / kPoints;
          const double x1 = rho * std::cos(th), x2 = rho * std::sin(th);
          const auto jet = prof.eval(x1, x2);
          const double om = x2 * jet.grad[0] - x1 * jet.grad[1];
          lhs = std::max(lhs, jet.value * jet.value);
          rhs += (jet.value * jet.value + om * om) * (2.0 * M_PI / kPoints);
        }
        const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst_lhs = lhs;
          worst_rhs = rhs;
        }
      }
      add("circle", m.label, worst_lhs, worst_rhs);
    }

    // r^lambda |f|^2 <= sum_a ||r^{lambda-1} d_r Omega^a f||^2 + ||Omega^a f||^2
    add("angular l=1", m.label, sup_weighted(r, f), l2sq(df) + l2sq(dOf) + l2sq(f) + l2sq(Of));
    add("angular l=2", m.label, sup_weighted(r * r, f), l2sq(r * df) + l2sq(r * dOf) + l2sq(f) + l2sq(Of));
    // r <t-r> |f|^2 <= sum_a ||<t-r> d_r Omega^a f||^2 + ||Omega^a f||^2
    add("angular-cone l=1", m.label, sup_weighted(r * tr, f), l2sq(tr * df) + l2sq(tr * dOf) + l2sq(f) + l2sq(Of));
    {
      // lambda = 2 on a derivative, h = d_1 f.
      const ScalarField h = derivative(f, 0);
      const ScalarField dh = radial_derivative(h, fr);
      const ScalarField Oh = angular_derivative(h);
      const ScalarField dOh = radial_derivative(Oh, fr);
      add("angular-cone l=2", m.label, sup_weighted(r * tr * tr, h),
          l2sq(tr * dh) + l2sq(tr * dOh) + l2sq(tr * h) + l2sq(tr * Oh));
    }

    // <t> sup_{r <= <t/2>} |f| <= sum_{|a| <= 2} ||<t-r> d^a f||
    {
      const double reach = bracket(t / 2.0);
      double sup = 0.0;
      for (std::size_t k = 0; k < f.size(); ++k)
        if (r[k] <= reach) sup = std::max(sup, std::abs(f[k]));
      const VectorField d = gradient(f);
      const double rhs = std::sqrt(l2sq(tr * f)) + std::sqrt(l2sq(tr * d[0])) + std::sqrt(l2sq(tr * d[1])) +
                         std::sqrt(l2sq(tr * derivative(d[0], 0))) + std::sqrt(l2sq(tr * derivative(d[0], 1))) +
                         std::sqrt(l2sq(tr * derivative(d[1], 1)));
      add("interior-decay", m.label, bracket(t) * sup, rhs);
    }
  }
  return rep;
}

std::string SobolevReport::format() const {
  std::string out;
  char buf[200];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%-16s %-18s lhs=%.6e rhs=%.6e ratio=%.6e\n", e.inequality.c_str(), e.member.c_str(),
                  e.lhs, e.rhs, e.ratio);
    out += buf;
  }
  out += "max ratios:\n";
  for (const auto& [inequality, r] : max_ratio) {
    std::snprintf(buf, sizeof buf, "  %-16s %.6e\n", inequality.c_str(), r);
    out += buf;
  }
  return out;
}

}  // namespace elasto
