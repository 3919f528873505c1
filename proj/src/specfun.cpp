#include "fracmoser/specfun.hpp"

#include <cmath>

namespace fm {

namespace {

// Lanczos approximation, g = 7, 9 coefficients (Godfrey's set).
// Evaluated in long double: the pow/exp pair stays finite up to x = 170 and
// the exponent amplification keeps the double result at ~1e-15 relative.
constexpr long double kLanczosG = 7.0L;
constexpr long double kLanczos[9] = {
    0.99999999999980993L,     676.5203681218851L,     -1259.1392167224028L,
    771.32342877765313L,      -176.61502916214059L,   12.507343278686905L,
    -0.13857109526572012L,    9.9843695780195716e-6L, 1.5056327351493116e-7L};

long double lanczos_sum(long double z) {
  long double s = kLanczos[0];
  for (int i = 1; i < 9; ++i) s += kLanczos[i] / (z + i);
  return s;
}

long double lanczos_positive(long double x) {
  // valid for x >= 0.5
  const long double z = x - 1.0L;
  const long double t = z + kLanczosG + 0.5L;
  return std::sqrt(2.0L * M_PIl) * std::pow(t, z + 0.5L) * std::exp(-t) *
         lanczos_sum(z);
}

}  // namespace

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw std::domain_error("gamma_fn: pole at non-positive integer");
  if (x >= 0.5) return static_cast<double>(lanczos_positive(x));
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  return static_cast<double>(
      M_PIl / (std::sin(M_PIl * static_cast<long double>(x)) *
               lanczos_positive(1.0L - x)));
}

double log_gamma(double x) {
  if (x <= 0.0) throw std::domain_error("log_gamma: requires x > 0");
  if (x >= 0.5) {
    const long double z = static_cast<long double>(x) - 1.0L;
    const long double t = z + kLanczosG + 0.5L;
    return static_cast<double>(0.5L * std::log(2.0L * M_PIl) +
                               (z + 0.5L) * std::log(t) - t +
                               std::log(lanczos_sum(z)));
  }
  return std::log(gamma_fn(x));
}

double ball_volume(Dim n) {
  return std::pow(M_PI, 0.5 * n.n) / gamma_fn(0.5 * n.n + 1.0);
}

double sphere_measure(Dim n) { return n.n * ball_volume(n); }

}  // namespace fm
