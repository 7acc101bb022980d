#include "elasto/gamma.hpp"

#include <cmath>
#include <sstream>

#include "elasto/spectral.hpp"

namespace elasto {

std::string to_string(Generator g) {
  switch (g) {
    case Generator::Dt: return "Dt";
    case Generator::D1: return "D1";
    case Generator::D2: return "D2";
    case Generator::OmegaTilde: return "Om";
    case Generator::Scaling: return "S";
  }
  return "?";
}

std::string to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += to_string(w[i]);
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  if (text.empty() || text == "e") return w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '.')) {
    bool found = false;
    for (Generator g : kAllGenerators) {
      if (to_string(g) == tok) {
        w.push_back(g);
        found = true;
      }
    }
    if (!found) throw Error("parse_word: unknown generator '" + tok + "'");
  }
  return w;
}

std::vector<Word> words_up_to(int k, const std::vector<Generator>& alphabet) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= k; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Generator g : alphabet) {
        Word w{g};
        w.insert(w.end(), out[i].begin(), out[i].end());
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

ScalarField tilde_rotate(const ScalarField& f) { return angular_derivative(f); }

VectorField tilde_rotate(const VectorField& v) {
  VectorField out = angular_derivative(v);
  out[0] -= v[1];
  out[1] += v[0];
  return out;
}

MatrixField tilde_rotate(const MatrixField& G) {
  MatrixField out = angular_derivative(G);
  // J G: rows (-G_1j, G_0j); G J: columns (G_i1, -G_i0).
  for (int j = 0; j < 2; ++j) {
    out(0, j) -= G(1, j);
    out(1, j) += G(0, j);
  }
  for (int i = 0; i < 2; ++i) {
    out(i, 0) -= G(i, 1);
    out(i, 1) += G(i, 0);
  }
  return out;
}

VectorField bilinear_f(const PairField& a, const PairField& b) {
  VectorField out(a.grid());
  for (int i = 0; i < 2; ++i) {
    const VectorField db = gradient(b.v[i]);
    ScalarField adv = dealias(a.v[0] * db[0] + a.v[1] * db[1]);
    VectorField flux(dealias(a.G(i, 0) * b.G(0, 0) + a.G(i, 1) * b.G(0, 1)),
                     dealias(a.G(i, 0) * b.G(1, 0) + a.G(i, 1) * b.G(1, 1)));
    out[i] = divergence(flux) - adv;
  }
  return out;
}

MatrixField bilinear_g(const PairField& a, const PairField& b) {
  MatrixField out(a.grid());
  const MatrixField gradv = jacobian(b.v);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const VectorField dG = gradient(b.G(i, j));
      out(i, j) = dealias(gradv(i, 0) * a.G(0, j) + gradv(i, 1) * a.G(1, j) - a.v[0] * dG[0] - a.v[1] * dG[1]);
    }
  }
  return out;
}

VectorField bilinear_h(const PairField& a, const PairField& b) {
  VectorField out(a.grid());
  for (int i = 0; i < 2; ++i) {
    const VectorField d2 = gradient(b.G(i, 1));
    const VectorField d1 = gradient(b.G(i, 0));
    out[i] = dealias(a.G(0, 0) * d2[0] + a.G(1, 0) * d2[1] - a.G(0, 1) * d1[0] - a.G(1, 1) * d1[1]);
  }
  return out;
}

GammaContext::GammaContext(const State& s, const Frame& fr, std::optional<Material> material)
    : state_(s), frame_(fr), material_(std::move(material)) {
  require_same_grid(s.grid(), fr.grid, "GammaContext");
}

const PairField& GammaContext::word(const Word& w) {
  const std::string key = to_string(w);
  if (auto it = words_.find(key); it != words_.end()) return it->second;
  PairField value = w.empty() ? state_.pair() : [&] {
    const Word inner(w.begin() + 1, w.end());
    const PairField& base = word(inner);
    return apply_generator(w.front(), base, inner, *this);
  }();
  return words_.emplace(key, std::move(value)).first->second;
}

const SourceTerms& GammaContext::sources(const Word& w) {
  const std::string key = to_string(w);
  if (auto it = sources_.find(key); it != sources_.end()) return it->second;
  if (static_cast<int>(w.size()) > kMaxSourceLength) {
    throw Error("source terms are only available for words of length <= 2 (got " + key + ")");
  }
  if (!hookean()) throw Error("commuted sources are only available for the Hookean system");
  const Grid& g = state_.grid();
  SourceTerms st{VectorField(g), MatrixField(g), VectorField(g)};
  const std::size_t n = w.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Word beta, gamma;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? gamma : beta).push_back(w[i]);
    const PairField& a = word(beta);
    const PairField& b = word(gamma);
    st.f += bilinear_f(a, b);
    st.g += bilinear_g(a, b);
    st.h += bilinear_h(a, b);
  }
  return sources_.emplace(key, std::move(st)).first->second;
}

const VectorField& GammaContext::pressure_gradient(const Word& w) {
  const std::string key = to_string(w);
  if (auto it = pressure_.find(key); it != pressure_.end()) return it->second;
  VectorField gp = gradient_part(sources(w).f);
  return pressure_.emplace(key, std::move(gp)).first->second;
}

PairField apply_generator(Generator g, const PairField& pair, const Word& inner, GammaContext& ctx) {
  switch (g) {
    case Generator::D1:
    case Generator::D2: {
      const int axis = g == Generator::D1 ? 0 : 1;
      PairField out(pair.grid());
      for (int i = 0; i < 2; ++i) out.v[i] = derivative(pair.v[i], axis);
      for (int k = 0; k < 4; ++k) out.G.c[k] = derivative(pair.G.c[k], axis);
      return out;
    }
    case Generator::OmegaTilde:
      return PairField(tilde_rotate(pair.v), tilde_rotate(pair.G));
    case Generator::Dt: {
      if (!ctx.hookean()) {
        if (!inner.empty()) {
          throw Error("Dt at word " + to_string(inner) + ": commuted pressure unavailable for non-Hookean materials");
        }
        return material_rhs(State{ctx.t(), pair.v, pair.G, ScalarField(pair.grid())}, *ctx.material());
      }
      const SourceTerms& st = ctx.sources(inner);
      VectorField dv = row_divergence(pair.G);
      dv += st.f;
      dv -= ctx.pressure_gradient(inner);
      MatrixField dG = jacobian(pair.v);
      dG += st.g;
      return PairField(std::move(dv), std::move(dG));
    }
    case Generator::Scaling: {
      PairField out = apply_generator(Generator::Dt, pair, inner, ctx);
      out *= ctx.t();
      out.v += dilation(pair.v);
      out.G += dilation(pair.G);
      return out;
    }
  }
  throw Error("unknown generator");
}

PairField gamma_word(const Word& w, GammaContext& ctx) { return ctx.word(w); }

SourceTerms source_terms(const Word& w, GammaContext& ctx) { return ctx.sources(w); }

CommutedPressure commuted_pressure_gradient(const Word& w, GammaContext& ctx) {
  const Grid& grid = ctx.state().grid();
  VectorField route_a = ctx.pressure_gradient(w);

  // Low-high split: the derivative falls on the shorter factor.
  VectorField W(grid), Y(grid);
  const std::size_t n = w.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Word beta, gamma;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? gamma : beta).push_back(w[i]);
    const PairField& a = ctx.word(beta);
    const PairField& b = ctx.word(gamma);
    if (beta.size() <= gamma.size()) {
      // W_i += d_j a.v_i b.v_j - d_j a.G_ik b.G_jk
      for (int i = 0; i < 2; ++i) {
        const VectorField dv = gradient(a.v[i]);
        ScalarField term = dv[0] * b.v[0] + dv[1] * b.v[1];
        for (int k = 0; k < 2; ++k) {
          const VectorField dG = gradient(a.G(i, k));
          term -= dG[0] * b.G(0, k) + dG[1] * b.G(1, k);
        }
        W[i] += dealias(term);
      }
    } else {
      // Y_j += a.v_i d_i b.v_j - a.G_ik d_i b.G_jk
      for (int j = 0; j < 2; ++j) {
        const VectorField dv = gradient(b.v[j]);
        ScalarField term = a.v[0] * dv[0] + a.v[1] * dv[1];
        for (int k = 0; k < 2; ++k) {
          const VectorField dG = gradient(b.G(j, k));
          term -= a.G(0, k) * dG[0] + a.G(1, k) * dG[1];
        }
        Y[j] += dealias(term);
      }
    }
  }
  ScalarField div_f = divergence(W);
  div_f += divergence(Y);
  div_f *= -1.0;
  VectorField route_b = inverse_laplacian_gradient(div_f);
  const double scale = l2_norm(route_a);
  const double diff = l2_norm(route_a - route_b);
  const double gap = scale > 0.0 ? diff / scale : diff;
  return CommutedPressure{std::move(route_a), std::move(route_b), gap};
}

double commutation_residual(const Word& w, const State& before, const State& mid, const State& after,
                            const Frame& fr) {
  const double span = after.t - before.t;
  if (!(span > 0.0) || std::abs((mid.t - before.t) - (after.t - mid.t)) > 1e-9 * span) {
    throw Error("commutation_residual: window must be uniformly spaced");
  }
  GammaContext c0(before, fr), c1(mid, fr), c2(after, fr);
  const PairField& u0 = c0.word(w);
  const PairField& u2 = c2.word(w);
  Word dtw{Generator::Dt};
  dtw.insert(dtw.end(), w.begin(), w.end());
  const PairField& rhs = c1.word(dtw);
  PairField fd = u2 - u0;
  fd *= 1.0 / span;
  const PairField res = fd - rhs;
  return std::max(l2_norm(res.v), l2_norm(res.G));
}

}  // namespace elasto
