#pragma once

#include <cmath>
#include <vector>

#include "fracmoser/specfun.hpp"

namespace fm {

/// Exponent p in (1, inf) together with its conjugate p' = p/(p-1).
struct ExponentPair {
  double p;
  double p_conj;
  explicit ExponentPair(double p_) : p(p_), p_conj(p_ / (p_ - 1.0)) {
    if (!(p > 1.0)) throw std::domain_error("ExponentPair: p must be > 1");
  }
};

/// Fractional operator descriptor of order sigma = m + s with shift tau.
/// tau = 0 selects the Riesz operator (-Delta)^sigma, tau > 0 the Bessel
/// operator (tau I - Delta)^sigma.
struct OperatorSpec {
  double sigma;
  int m;        // integer part
  double s;     // fractional part in [0,1)
  double tau;   // shift, >= 0
  double tol;   // quadrature tolerance for pointwise evaluation

  explicit OperatorSpec(double sigma_, double tau_ = 0.0, double tol_ = 1e-6)
      : sigma(sigma_), m(static_cast<int>(std::floor(sigma_))),
        s(sigma_ - std::floor(sigma_)), tau(tau_), tol(tol_) {
    if (!(sigma > 0.0)) throw std::domain_error("OperatorSpec: sigma must be > 0");
    if (tau < 0.0) throw std::domain_error("OperatorSpec: tau must be >= 0");
  }
};

/// Sharp exponential-integrability constant
/// alpha_{n,p} = (n/|S^{n-1}|) (Gamma(n/2p) 2^{n/p} pi^{n/2} / Gamma(n/2p'))^{p'}.
///
/// alpha_np(n, 2) equals alpha_classical(n/2, n) for even n. Do NOT expect
/// alpha_np(n, n) to reproduce alpha_classical(1, n) when n >= 3: the first
/// normalizes ||(-Delta)^{1/2} u||_{L^n}, the second ||grad u||_{L^n}, and
/// those norms differ. The disagreement is real, not a bug.
double alpha_np(Dim n, const ExponentPair& p);

/// Classical sharp constant for integer derivative order k < n, with the
/// odd/even branch; k = 1 reduces to n |S^{n-1}|^{1/(n-1)}.
double alpha_classical(int k, Dim n);

/// gamma_n = (n-1)!/2 |S^n|, the fundamental-solution normalizer of
/// (-Delta)^{n/2} log(1/|x|).
double gamma_n(Dim n);

/// Normalizer of the Moser family: u_eps = kappa_{n,p} v_eps, chosen so the
/// plateau satisfies alpha_{n,p} |u_eps|^{p'} = n log(1/eps).
double kappa_np(Dim n, const ExponentPair& p);

/// Exact coefficient c in (-Delta)^sigma log(1/|x|) = c |x|^{-2 sigma},
/// valid for 0 < sigma < n/2.
double log_kernel_constant(Dim n, double sigma);

/// Coefficient of the normalized Fourier transform of |x|^{alpha-n}:
/// F(|x|^{alpha-n}) = c |xi|^{-alpha}, 0 < alpha < n.
double riesz_ft_constant(Dim n, double alpha);

/// Explicit lower bound delta^{2s}/2 for the first eigenvalue of the
/// quadratic form ||(-Delta)^{s/2} u||^2 on a domain of measure
/// omega_measure, with delta = ((2 pi)^n / (2 |Omega| |B_1|))^{1/n}.
double poincare_lower_bound(Dim n, double s, double omega_measure);

/// Singular-integral normalizer C_{n,s} = 4^s Gamma(n/2+s) / (pi^{n/2} |Gamma(-s)|),
/// so that (-Delta)^s u = (C_{n,s}/2) int (2u(x)-u(x+y)-u(x-y)) |y|^{-n-2s} dy.
double pv_normalizer(Dim n, double s);

/// Coefficients c_j = binom(s,j) tau^j, j = 0..m-1, of the symbol expansion
/// (tau + t^2)^s = sum_j c_j t^{2s-2j} + E(t), |E(t)| <= C (1+t)^{2s-2m}.
std::vector<double> taylor_coeffs(double s, double tau, int m);

}  // namespace fm
