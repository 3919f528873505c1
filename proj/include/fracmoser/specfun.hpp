#pragma once

#include <stdexcept>

namespace fm {

/// Spatial dimension. The toolkit supports n in [1, 16].
struct Dim {
  int n;
  explicit Dim(int n_) : n(n_) {
    if (n < 1 || n > 16) throw std::domain_error("Dim: n must be in [1,16]");
  }
};

/// Gamma function via Lanczos approximation plus reflection.
/// Relative error <= 1e-13 on [1e-3, 170]; negative non-integer arguments
/// handled by the reflection formula. Throws std::domain_error at poles.
double gamma_fn(double x);

/// log Gamma for x > 0 (needed for large half-integer arguments).
double log_gamma(double x);

/// Surface measure of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_measure(Dim n);

/// Lebesgue measure of the unit ball in R^n: sphere_measure(n) / n.
double ball_volume(Dim n);

}  // namespace fm
