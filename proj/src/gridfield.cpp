#include "fracmoser/gridfield.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "fracmoser/parallel.hpp"

namespace fm {

namespace {
std::mutex& fftw_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

GridField::GridField(int dim_, double L_, int N_) : dim(dim_), L(L_), N(N_) {
  if (dim != 1 && dim != 2) throw std::domain_error("GridField: dim must be 1 or 2");
  if (N < 64 || (N & (N - 1)) != 0)
    throw std::domain_error("GridField: N must be a power of two >= 64");
  if (L < 4.0) throw std::domain_error("GridField: L must be >= 4");
  values.assign(dim == 1 ? N : static_cast<size_t>(N) * N, 0.0);
}

GridField GridField::sample_radial(const RadialProfile& g, int N, double L) {
  const int dim = g.dim().n;
  GridField f(dim, L, N);
  if (dim == 1) {
    parallel_for(N, [&](std::ptrdiff_t i) {
      f.values[i] = g.value(std::abs(f.coord(static_cast<int>(i))));
    });
  } else {
    parallel_for(N, [&](std::ptrdiff_t i) {
      const double x = f.coord(static_cast<int>(i));
      for (int j = 0; j < N; ++j) {
        const double y = f.coord(j);
        f.at(static_cast<int>(i), j) = g.value(std::hypot(x, y));
      }
    });
  }
  return f;
}

GridField GridField::sample_radial_serial(const RadialProfile& g, int N, double L) {
  const int dim = g.dim().n;
  GridField f(dim, L, N);
  if (dim == 1) {
    for (int i = 0; i < N; ++i) f.values[i] = g.value(std::abs(f.coord(i)));
  } else {
    for (int i = 0; i < N; ++i) {
      const double x = f.coord(i);
      for (int j = 0; j < N; ++j) f.at(i, j) = g.value(std::hypot(x, f.coord(j)));
    }
  }
  return f;
}

double SymbolSpec::value(double xi_sq) const {
  if (kind == Kind::riesz) {
    if (xi_sq == 0.0) return 0.0;
    return std::pow(xi_sq, sigma);
  }
  return std::pow(tau + xi_sq, sigma);
}

namespace kernels {

namespace {
inline double freq(int k, int N, double L) {
  const int signed_k = k <= N / 2 ? k : k - N;
  return M_PI / L * signed_k;
}
}  // namespace

void symbol_multiply(std::vector<double>& spec, int dim, int N, double L,
                     const SymbolSpec& sym) {
  if (dim == 1) {
    parallel_for(N, [&](std::ptrdiff_t k) {
      const double xi = freq(static_cast<int>(k), N, L);
      const double m = sym.value(xi * xi);
      spec[2 * k] *= m;
      spec[2 * k + 1] *= m;
    });
  } else {
    parallel_for(N, [&](std::ptrdiff_t ki) {
      const double xi1 = freq(static_cast<int>(ki), N, L);
      for (int kj = 0; kj < N; ++kj) {
        const double xi2 = freq(kj, N, L);
        const double m = sym.value(xi1 * xi1 + xi2 * xi2);
        const size_t idx = 2 * (static_cast<size_t>(ki) * N + kj);
        spec[idx] *= m;
        spec[idx + 1] *= m;
      }
    });
  }
}

void symbol_multiply_serial(std::vector<double>& spec, int dim, int N, double L,
                            const SymbolSpec& sym) {
  if (dim == 1) {
    for (int k = 0; k < N; ++k) {
      const double xi = freq(k, N, L);
      const double m = sym.value(xi * xi);
      spec[2 * k] *= m;
      spec[2 * k + 1] *= m;
    }
  } else {
    for (int ki = 0; ki < N; ++ki) {
      const double xi1 = freq(ki, N, L);
      for (int kj = 0; kj < N; ++kj) {
        const double m = sym.value(xi1 * xi1 + freq(kj, N, L) * freq(kj, N, L));
        const size_t idx = 2 * (static_cast<size_t>(ki) * N + kj);
        spec[idx] *= m;
        spec[idx + 1] *= m;
      }
    }
  }
}

}  // namespace kernels

namespace {

GridField apply_symbol_fft(const GridField& f, const SymbolSpec& sym) {
  const int N = f.N;
  const size_t total = f.size();
  std::vector<double> buf(2 * total);
  for (size_t i = 0; i < total; ++i) {
    buf[2 * i] = f.values[i];
    buf[2 * i + 1] = 0.0;
  }
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    if (f.dim == 1) {
      fwd = fftw_plan_dft_1d(N, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_1d(N, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      fwd = fftw_plan_dft_2d(N, N, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_2d(N, N, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  }
  fftw_execute(fwd);
  kernels::symbol_multiply(buf, f.dim, N, f.L, sym);
  fftw_execute(bwd);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  GridField out(f.dim, f.L, f.N);
  const double scale = 1.0 / static_cast<double>(total);
  for (size_t i = 0; i < total; ++i) out.values[i] = buf[2 * i] * scale;
  return out;
}

}  // namespace

GridField spectral_apply(const GridField& f, const SymbolSpec& sym) {
  return apply_symbol_fft(f, sym);
}

GridField bessel_minus_riesz(const GridField& f, double tau, double sigma) {
  if (tau == 0.0) {
    GridField zero(f.dim, f.L, f.N);
    return zero;
  }
  GridField b = spectral_apply(f, SymbolSpec::bessel(tau, sigma));
  const GridField r = spectral_apply(f, SymbolSpec::riesz(sigma));
  for (size_t i = 0; i < b.size(); ++i) b.values[i] -= r.values[i];
  return b;
}

double grid_lp_norm(const GridField& f, double p) {
  double s = 0.0;
  for (double v : f.values) s += std::pow(std::abs(v), p);
  const double cell = f.dim == 1 ? f.h() : f.h() * f.h();
  return std::pow(s * cell, 1.0 / p);
}

}  // namespace fm
