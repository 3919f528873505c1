#pragma once

#include "fracmoser/constants.hpp"
#include "fracmoser/profiles.hpp"

namespace fm {

/// Parameters selecting a member of the test family: dimension n, exponent p
/// and plateau radius eps. 3 eps < 1/2 keeps the piecewise regimes disjoint.
struct MoserParams {
  Dim n;
  ExponentPair p;
  double eps;

  MoserParams(Dim n_, ExponentPair p_, double eps_) : n(n_), p(p_), eps(eps_) {
    if (!(eps > 0.0 && 3.0 * eps < 0.5))
      throw std::domain_error("MoserParams: requires 0 < eps < 1/6");
  }
  double log_inv_eps() const { return std::log(1.0 / eps); }
};

/// v_eps(x) = (log 1/eps)^{-1/p} (log(1/eps) phi_eps(|x|) + log(1/|x|) psi_eps(|x|)),
/// constant plateau on B_eps, logarithmic decay, support in closure of B_1.
RadialProfile v_eps(const MoserParams& params);

/// Normalized family member u_eps = kappa_{n,p} v_eps.
RadialProfile u_eps(const MoserParams& params);

/// Decomposition R_eps = v_eps - (log 1/eps)^{-1/p} log(1/|x|) = f_eps + g_eps,
/// with f_eps supported in B_{2eps} and g_eps vanishing on B_{1/2}.
struct MoserDecomposition {
  RadialProfile f_eps;
  RadialProfile g_eps;
  RadialProfile R_eps;
};
MoserDecomposition decompose(const MoserParams& params);

/// psi_eps = 1 - phi_eps on [0, 1/2], eta on [1/2, inf).
double psi_eps_value(double t, double eps);

}  // namespace fm
