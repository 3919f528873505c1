#include "fracmoser/constants.hpp"

#include <cmath>

namespace fm {

double alpha_np(Dim n, const ExponentPair& p) {
  const double nn = n.n;
  const double base = gamma_fn(nn / (2.0 * p.p)) * std::pow(2.0, nn / p.p) *
                      std::pow(M_PI, 0.5 * nn) / gamma_fn(nn / (2.0 * p.p_conj));
  return nn / sphere_measure(n) * std::pow(base, p.p_conj);
}

double alpha_classical(int k, Dim n) {
  if (k <= 0 || k >= n.n)
    throw std::domain_error("alpha_classical: requires 0 < k < n");
  const double nn = n.n;
  double bracket;
  if (k % 2 == 1) {
    bracket = std::pow(M_PI, 0.5 * nn) * std::pow(2.0, k) *
              gamma_fn(0.5 * (k + 1)) / gamma_fn(0.5 * (nn - k + 1));
  } else {
    bracket = std::pow(M_PI, 0.5 * nn) * std::pow(2.0, k) *
              gamma_fn(0.5 * k) / gamma_fn(0.5 * (nn - k));
  }
  return nn / sphere_measure(n) * std::pow(bracket, nn / (nn - k));
}

double gamma_n(Dim n) {
  double fact = 1.0;
  for (int i = 2; i < n.n; ++i) fact *= i;
  return fact * sphere_measure(Dim(n.n + 1)) / 2.0;
}

double kappa_np(Dim n, const ExponentPair& p) {
  const double nn = n.n;
  return std::pow(sphere_measure(n), -1.0 / p.p) *
         std::pow(2.0, nn / p.p_conj) * std::pow(M_PI, 0.5 * nn) *
         gamma_fn(nn / (2.0 * p.p_conj)) /
         (gamma_fn(nn / (2.0 * p.p)) * gamma_n(n));
}

double log_kernel_constant(Dim n, double sigma) {
  if (!(sigma > 0.0 && sigma < 0.5 * n.n))
    throw std::domain_error("log_kernel_constant: requires 0 < sigma < n/2");
  return gamma_n(n) * std::pow(2.0, 2.0 * sigma - n.n) *
         std::pow(M_PI, -0.5 * n.n) * gamma_fn(sigma) /
         gamma_fn(0.5 * (n.n - 2.0 * sigma));
}

double riesz_ft_constant(Dim n, double alpha) {
  if (!(alpha > 0.0 && alpha < n.n))
    throw std::domain_error("riesz_ft_constant: requires 0 < alpha < n");
  return std::pow(2.0, alpha - 0.5 * n.n) * gamma_fn(0.5 * alpha) /
         gamma_fn(0.5 * (n.n - alpha));
}

double poincare_lower_bound(Dim n, double s, double omega_measure) {
  if (!(s > 0.0) || !(omega_measure > 0.0))
    throw std::domain_error("poincare_lower_bound: requires s > 0, |Omega| > 0");
  const double delta = std::pow(
      std::pow(2.0 * M_PI, n.n) / (2.0 * omega_measure * ball_volume(n)),
      1.0 / n.n);
  return 0.5 * std::pow(delta, 2.0 * s);
}

double pv_normalizer(Dim n, double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("pv_normalizer: requires 0 < s < 1");
  // |Gamma(-s)| = Gamma(1-s)/s for 0 < s < 1
  const double abs_gamma_minus_s = gamma_fn(1.0 - s) / s;
  return std::pow(4.0, s) * gamma_fn(0.5 * n.n + s) /
         (std::pow(M_PI, 0.5 * n.n) * abs_gamma_minus_s);
}

std::vector<double> taylor_coeffs(double s, double tau, int m) {
  if (s == std::floor(s)) throw std::domain_error("taylor_coeffs: s must be non-integer");
  std::vector<double> c;
  c.reserve(m);
  double binom = 1.0;  // binom(s, 0)
  double tau_pow = 1.0;
  for (int j = 0; j < m; ++j) {
    c.push_back(binom * tau_pow);
    binom *= (s - j) / (j + 1.0);
    tau_pow *= tau;
  }
  return c;
}

}  // namespace fm
