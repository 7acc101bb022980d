#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elasto/dynamics.hpp"
#include "elasto/frame.hpp"
#include "elasto/material.hpp"

namespace elasto {

enum class Generator { Dt, D1, D2, OmegaTilde, Scaling };

inline constexpr std::array<Generator, 5> kAllGenerators{Generator::Dt, Generator::D1, Generator::D2,
                                                         Generator::OmegaTilde, Generator::Scaling};

/// Letters in application order reversed: the last letter acts first.
using Word = std::vector<Generator>;

std::string to_string(Generator g);
/// Letters joined by '.', the empty word is "e".
std::string to_string(const Word& w);
Word parse_word(const std::string& text);

/// Every word of length <= k over the alphabet, shortest first.
std::vector<Word> words_up_to(int k, const std::vector<Generator>& alphabet = {kAllGenerators.begin(),
                                                                               kAllGenerators.end()});

/// Omega f for scalars; Omega v + J v for vectors; Omega G + [J, G] for matrices,
/// with J = e2 (x) e1 - e1 (x) e2.
ScalarField tilde_rotate(const ScalarField& f);
VectorField tilde_rotate(const VectorField& v);
MatrixField tilde_rotate(const MatrixField& G);

struct SourceTerms {
  VectorField f;
  MatrixField g;
  VectorField h;
};

// Bilinear forms whose diagonal gives the quadratic terms of the system
// (products dealiased):
//   Qf(a, b)_i = -a.v_j d_j b.v_i + d_j(a.G_ik b.G_jk)
//   Qg(a, b)_ij = -a.v_m d_m b.G_ij + d_k b.v_i a.G_kj
//   Qh(a, b)_i = a.G_m1 d_m b.G_i2 - a.G_m2 d_m b.G_i1
VectorField bilinear_f(const PairField& a, const PairField& b);
MatrixField bilinear_g(const PairField& a, const PairField& b);
VectorField bilinear_h(const PairField& a, const PairField& b);

/// Evaluation context for Gamma^alpha at one state. Results are memoized per word.
class GammaContext {
 public:
  static constexpr int kMaxSourceLength = 2;

  GammaContext(const State& s, const Frame& fr, std::optional<Material> material = std::nullopt);

  const State& state() const { return state_; }
  const Frame& frame() const { return frame_; }
  double t() const { return state_.t; }
  bool hookean() const { return !material_ || material_->is_hookean(); }
  const std::optional<Material>& material() const { return material_; }

  /// Gamma^w (v, G).
  const PairField& word(const Word& w);
  /// f_w, g_w, h_w for |w| <= 2 (Hookean only).
  const SourceTerms& sources(const Word& w);
  /// grad Gamma^w p = Delta^{-1} grad div f_w.
  const VectorField& pressure_gradient(const Word& w);

 private:
  State state_;
  Frame frame_;
  std::optional<Material> material_;
  std::map<std::string, PairField> words_;
  std::map<std::string, SourceTerms> sources_;
  std::map<std::string, VectorField> pressure_;
};

/// Applies one generator to the pair Gamma^inner (v, G). Dt uses the commuted
/// system: (div G' - grad p' + f, grad v' + g) at the word `inner`.
PairField apply_generator(Generator g, const PairField& pair, const Word& inner, GammaContext& ctx);

PairField gamma_word(const Word& w, GammaContext& ctx);

/// Sums of the bilinear forms over all ordered splits of w into two subsequences.
SourceTerms source_terms(const Word& w, GammaContext& ctx);

struct CommutedPressure {
  VectorField route_a;  // Delta^{-1} grad div f_w
  VectorField route_b;  // Delta^{-1} grad of the low-high split divergence
  double relative_gap = 0.0;
};

CommutedPressure commuted_pressure_gradient(const Word& w, GammaContext& ctx);

/// Residuals of d_t Gamma^w v - div Gamma^w G + grad Gamma^w p - f_w and
/// d_t Gamma^w G - grad Gamma^w v - g_w at the middle of three equally spaced
/// states, d_t by centered differences. Returns the larger L2 norm.
double commutation_residual(const Word& w, const State& before, const State& mid, const State& after,
                            const Frame& fr);

}  // namespace elasto
