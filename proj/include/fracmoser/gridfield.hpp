#pragma once

#include <vector>

#include "fracmoser/profiles.hpp"

namespace fm {

/// Uniform periodic grid on [-L, L)^dim, row-major for dim = 2.
struct GridField {
  int dim;   // 1 or 2
  double L;  // box half-width, >= 4
  int N;     // samples per axis, power of two, >= 64
  std::vector<double> values;

  GridField(int dim_, double L_, int N_);
  double h() const { return 2.0 * L / N; }
  double coord(int i) const { return -L + i * h(); }
  double& at(int i, int j) { return values[static_cast<size_t>(i) * N + j]; }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * N + j]; }
  size_t size() const { return values.size(); }

  /// Sample a radial profile at the grid points (OpenMP).
  static GridField sample_radial(const RadialProfile& g, int N, double L);
  /// Serial reference for the sampler.
  static GridField sample_radial_serial(const RadialProfile& g, int N, double L);
};

/// Fourier multiplier: riesz(sigma) has symbol |xi|^{2 sigma} (zero frequency
/// maps to 0), bessel(tau, sigma) has symbol (tau + |xi|^2)^sigma.
struct SymbolSpec {
  enum class Kind { riesz, bessel };
  Kind kind;
  double sigma;
  double tau;

  static SymbolSpec riesz(double sigma) { return {Kind::riesz, sigma, 0.0}; }
  static SymbolSpec bessel(double tau, double sigma) {
    return {Kind::bessel, sigma, tau};
  }
  double value(double xi_sq) const;
};

/// FFT -> multiply by the symbol on the lattice xi = (pi/L) k -> inverse FFT.
GridField spectral_apply(const GridField& f, const SymbolSpec& sym);

/// Difference of the Bessel and Riesz operators at equal order:
/// spectral_apply with symbol (tau+|xi|^2)^sigma - |xi|^{2 sigma}.
GridField bessel_minus_riesz(const GridField& f, double tau, double sigma);

/// (int_box |f|^p dx)^{1/p} over the grid box.
double grid_lp_norm(const GridField& f, double p);

namespace kernels {
/// Pointwise multiply of a spectrum by the symbol (OpenMP); buffer holds
/// interleaved complex values. Serial reference provided for testing.
void symbol_multiply(std::vector<double>& spectrum_interleaved, int dim, int N,
                     double L, const SymbolSpec& sym);
void symbol_multiply_serial(std::vector<double>& spectrum_interleaved, int dim,
                            int N, double L, const SymbolSpec& sym);
}  // namespace kernels

}  // namespace fm
