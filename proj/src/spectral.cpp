#include "elasto/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace elasto {
namespace {

// FFTW planning is not thread-safe; execution on per-thread buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  explicit FftPlan(int n) : n_(n) {
    const std::size_t nr = static_cast<std::size_t>(n) * n;
    const std::size_t nc = static_cast<std::size_t>(n) * (n / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    real_ = fftw_alloc_real(nr);
    cplx_ = fftw_alloc_complex(nc);
    // FFTW_ESTIMATE keeps the algorithm choice fixed from run to run.
    r2c_ = fftw_plan_dft_r2c_2d(n, n, real_, cplx_, FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r_2d(n, n, cplx_, real_, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
    fftw_free(real_);
    fftw_free(cplx_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::span<const double> in, std::span<std::complex<double>> out) {
    std::memcpy(real_, in.data(), in.size_bytes());
    fftw_execute(r2c_);
    std::memcpy(static_cast<void*>(out.data()), cplx_, out.size_bytes());
  }

  void inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    std::memcpy(cplx_, in.data(), in.size_bytes());
    fftw_execute(c2r_);
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = real_[k] * scale;
  }

 private:
  int n_;
  double* real_ = nullptr;
  fftw_complex* cplx_ = nullptr;
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
};

FftPlan& plan_for(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<FftPlan>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
  return *it->second;
}

// Applies symbol(k1, k2) in place; k are derivative wavenumbers (Nyquist -> 0).
template <typename Symbol>
void multiply_symbol(Spectrum& s, Symbol symbol) {
  const Grid& g = s.grid();
  for (int i = 0; i < s.rows(); ++i) {
    const double k1 = derivative_wavenumber(g, g.mode(i));
    for (int jh = 0; jh < s.cols(); ++jh) {
      const double k2 = derivative_wavenumber(g, jh);
      s(i, jh) *= symbol(k1, k2);
    }
  }
}

ScalarField apply_symbol(const ScalarField& f, auto symbol) {
  Spectrum s = forward(f);
  multiply_symbol(s, symbol);
  return inverse(s);
}

constexpr std::complex<double> I{0.0, 1.0};

}  // namespace

Spectrum::Spectrum(const Grid& grid)
    : grid_(grid), c_(static_cast<std::size_t>(grid.n()) * (grid.n() / 2 + 1)) {}

Spectrum& Spectrum::operator+=(const Spectrum& o) {
  require_same_grid(grid_, o.grid_, "Spectrum +=");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Spectrum forward(const ScalarField& f) {
  Spectrum s(f.grid());
  plan_for(f.grid().n()).forward(f.values(), s.coeffs());
  return s;
}

ScalarField inverse(const Spectrum& s) {
  ScalarField f(s.grid());
  plan_for(s.grid().n()).inverse(s.coeffs(), f.values());
  return f;
}

double derivative_wavenumber(const Grid& grid, int mode) {
  if (mode == grid.n() / 2) return 0.0;
  return grid.wavenumber(mode);
}

ScalarField derivative(const ScalarField& f, int axis) {
  return apply_symbol(f, [axis](double k1, double k2) { return I * (axis == 0 ? k1 : k2); });
}

VectorField gradient(const ScalarField& f) {
  const Spectrum s = forward(f);
  Spectrum d1 = s, d2 = s;
  multiply_symbol(d1, [](double k1, double) { return I * k1; });
  multiply_symbol(d2, [](double, double k2) { return I * k2; });
  return VectorField(inverse(d1), inverse(d2));
}

VectorField perp_gradient(const ScalarField& psi) {
  VectorField g = gradient(psi);
  return VectorField(std::move(g[1]), -std::move(g[0]));
}

ScalarField divergence(const VectorField& v) {
  Spectrum a = forward(v[0]);
  Spectrum b = forward(v[1]);
  multiply_symbol(a, [](double k1, double) { return I * k1; });
  multiply_symbol(b, [](double, double k2) { return I * k2; });
  a += b;
  return inverse(a);
}

MatrixField jacobian(const VectorField& v) {
  MatrixField m(v.grid());
  for (int i = 0; i < 2; ++i) {
    VectorField g = gradient(v[i]);
    m(i, 0) = std::move(g[0]);
    m(i, 1) = std::move(g[1]);
  }
  return m;
}

VectorField row_divergence(const MatrixField& m) {
  return VectorField(divergence(m.row(0)), divergence(m.row(1)));
}

VectorField perp_row_divergence(const MatrixField& m) {
  VectorField out(m.grid());
  for (int i = 0; i < 2; ++i) {
    Spectrum a = forward(m(i, 0));
    Spectrum b = forward(m(i, 1));
    multiply_symbol(a, [](double, double k2) { return I * k2; });
    multiply_symbol(b, [](double k1, double) { return -I * k1; });
    a += b;
    out[i] = inverse(a);
  }
  return out;
}

std::array<VectorField, 4> gradient(const MatrixField& m) {
  return {gradient(m.c[0]), gradient(m.c[1]), gradient(m.c[2]), gradient(m.c[3])};
}

ScalarField laplacian(const ScalarField& f) {
  return apply_symbol(f, [](double k1, double k2) { return std::complex<double>(-(k1 * k1 + k2 * k2)); });
}

ScalarField inverse_laplacian(const ScalarField& f) {
  return apply_symbol(f, [](double k1, double k2) {
    const double k2sum = k1 * k1 + k2 * k2;
    return std::complex<double>(k2sum > 0.0 ? -1.0 / k2sum : 0.0);
  });
}

ScalarField riesz(const ScalarField& f, int i, int j) {
  return apply_symbol(f, [i, j](double k1, double k2) {
    const double k2sum = k1 * k1 + k2 * k2;
    if (k2sum == 0.0) return std::complex<double>(0.0);
    const double ki = i == 0 ? k1 : k2;
    const double kj = j == 0 ? k1 : k2;
    return std::complex<double>(ki * kj / k2sum);
  });
}

VectorField inverse_laplacian_gradient(const ScalarField& f) {
  const Spectrum s = forward(f);
  Spectrum a = s, b = s;
  auto make = [](int axis) {
    return [axis](double k1, double k2) {
      const double k2sum = k1 * k1 + k2 * k2;
      if (k2sum == 0.0) return std::complex<double>(0.0);
      return -I * (axis == 0 ? k1 : k2) / k2sum;
    };
  };
  multiply_symbol(a, make(0));
  multiply_symbol(b, make(1));
  return VectorField(inverse(a), inverse(b));
}

VectorField gradient_part(const VectorField& w) {
  // symbol: k (k . w_hat) / |k|^2
  Spectrum a = forward(w[0]);
  Spectrum b = forward(w[1]);
  const Grid& g = w.grid();
  for (int i = 0; i < a.rows(); ++i) {
    const double k1 = derivative_wavenumber(g, g.mode(i));
    for (int jh = 0; jh < a.cols(); ++jh) {
      const double k2 = derivative_wavenumber(g, jh);
      const double k2sum = k1 * k1 + k2 * k2;
      if (k2sum == 0.0) {
        a(i, jh) = 0.0;
        b(i, jh) = 0.0;
        continue;
      }
      const std::complex<double> kw = (k1 * a(i, jh) + k2 * b(i, jh)) / k2sum;
      a(i, jh) = k1 * kw;
      b(i, jh) = k2 * kw;
    }
  }
  return VectorField(inverse(a), inverse(b));
}

VectorField leray_project(const VectorField& v) { return v - gradient_part(v); }

MatrixField project_columns(const MatrixField& m) {
  MatrixField out = m;
  for (int j = 0; j < 2; ++j) out.set_column(j, leray_project(m.column(j)));
  return out;
}

ScalarField dealias(const ScalarField& f) {
  Spectrum s = forward(f);
  const Grid& g = f.grid();
  const int cut = g.dealias_cutoff();
  for (int i = 0; i < s.rows(); ++i) {
    const bool row_out = std::abs(g.mode(i)) > cut;
    for (int jh = 0; jh < s.cols(); ++jh) {
      if (row_out || jh > cut) s(i, jh) = 0.0;
    }
  }
  return inverse(s);
}

VectorField dealias(const VectorField& v) { return VectorField(dealias(v[0]), dealias(v[1])); }

MatrixField dealias(const MatrixField& m) {
  MatrixField out(m.grid());
  for (int k = 0; k < 4; ++k) out.c[k] = dealias(m.c[k]);
  return out;
}

ScalarField product(const ScalarField& a, const ScalarField& b) { return dealias(a * b); }

double dealias_tail_fraction(const ScalarField& f) {
  const Spectrum s = forward(f);
  const Grid& g = f.grid();
  const int cut = g.dealias_cutoff();
  double total = 0.0, tail = 0.0;
  for (int i = 0; i < s.rows(); ++i) {
    for (int jh = 0; jh < s.cols(); ++jh) {
      const double w = (jh == 0 || jh == g.n() / 2) ? 1.0 : 2.0;
      const double e = w * std::norm(s(i, jh));
      total += e;
      if (std::abs(g.mode(i)) > cut || jh > cut) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace elasto
