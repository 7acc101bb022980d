#include "elasto/pointwise.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace elasto {

PairValue operator+(const PairValue& a, const PairValue& b) { return {a.v + b.v, a.G + b.G}; }
PairValue operator-(const PairValue& a, const PairValue& b) { return {a.v - b.v, a.G - b.G}; }
double norm(const PairValue& u) { return std::sqrt(u.v.squaredNorm() + u.G.squaredNorm()); }

namespace {

void require_unit(const Vec2& omega) {
  if (std::abs(omega.norm() - 1.0) > 1e-12) throw Error("projection direction must be a unit vector");
}

}  // namespace

PairValue project(int kind, const PairValue& u, const Vec2& omega) {
  require_unit(omega);
  const Vec2 perp(omega[1], -omega[0]);
  switch (kind) {
    case 1: {
      const Vec2 a = u.v + u.G * omega;
      return {0.5 * a, 0.5 * a * omega.transpose()};
    }
    case -1: {
      const Vec2 d = u.v - u.G * omega;
      return {0.5 * d, -0.5 * d * omega.transpose()};
    }
    case 0:
      return {Vec2::Zero(), (u.G * perp) * perp.transpose()};
    default:
      throw Error("projection kind must be -1, 0 or 1");
  }
}

PairValue bilinear_B(const PairValue& a, const PairValue& b, const Vec2& omega) {
  require_unit(omega);
  const Vec2 g1w = a.G.transpose() * omega;
  const double v1w = a.v.dot(omega);
  return {b.G * g1w - v1w * b.v, b.v * g1w.transpose() - v1w * b.G};
}

PairField project(int kind, const PairField& u, const Frame& fr) {
  PairField out(u.grid());
  for (std::size_t k = 0; k < u.v[0].size(); ++k) {
    const double x1 = fr.x[0][k], x2 = fr.x[1][k];
    const double r = std::hypot(x1, x2);
    const Vec2 om = r > 0.0 ? Vec2(x1 / r, x2 / r) : Vec2(1.0, 0.0);
    PairValue p;
    p.v << u.v[0][k], u.v[1][k];
    p.G << u.G.c[0][k], u.G.c[1][k], u.G.c[2][k], u.G.c[3][k];
    const PairValue q = project(kind, p, om.normalized());
    out.v[0][k] = q.v[0];
    out.v[1][k] = q.v[1];
    for (int c = 0; c < 4; ++c) out.G.c[c][k] = q.G(c / 2, c % 2);
  }
  return out;
}

CancellationTable cancellation_table(int samples, std::uint64_t seed) {
  if (samples < 10000) throw Error("cancellation_table: at least 10^4 samples required");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  auto random_pair = [&] {
    PairValue u;
    u.v << normal(rng), normal(rng);
    u.G << normal(rng), normal(rng), normal(rng), normal(rng);
    const double n = norm(u);
    return PairValue{u.v / n, u.G / n};
  };

  CancellationTable t;
  t.samples = samples;
  t.seed = seed;
  for (int s = 0; s < samples; ++s) {
    const PairValue u = random_pair();
    const PairValue w = random_pair();
    const double th = angle(rng);
    const Vec2 om(std::cos(th), std::sin(th));
    const Vec2 perp(om[1], -om[0]);

    std::array<PairValue, 3> pu, pw;
    for (int j = 0; j < 3; ++j) {
      pu[j] = project(CancellationTable::kind_of(j), u, om);
      pw[j] = project(CancellationTable::kind_of(j), w, om);
    }
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) t.sup[j][k] = std::max(t.sup[j][k], norm(bilinear_B(pu[j], pw[k], om)));

    t.completeness = std::max(t.completeness, norm(pu[0] + pu[1] + pu[2] - u));
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const PairValue twice = project(CancellationTable::kind_of(j), pu[k], om);
        const PairValue expect = j == k ? pu[k] : PairValue{};
        t.idempotence = std::max(t.idempotence, norm(twice - expect));
      }
    }
    const double a2 = u.G.squaredNorm();
    if (a2 > 0.0) {
      const double id = (u.G * om).squaredNorm() + (u.G * perp).squaredNorm() - a2;
      t.frame_identity = std::max(t.frame_identity, std::abs(id) / a2);
    }
  }
  return t;
}

std::string CancellationTable::format() const {
  std::string out = "B[P_j u, P_k w]    k=-1        k=0         k=+1\n";
  char buf[160];
  for (int j = 0; j < 3; ++j) {
    std::snprintf(buf, sizeof buf, "j=%+d          %11.3e %11.3e %11.3e\n", kind_of(j), sup[j][0], sup[j][1], sup[j][2]);
    out += buf;
  }
  return out;
}

}  // namespace elasto
