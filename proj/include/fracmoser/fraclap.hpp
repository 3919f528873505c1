#pragma once

#include <vector>

#include "fracmoser/constants.hpp"
#include "fracmoser/profiles.hpp"

namespace fm {

/// The global log kernel g(r) = log(1/|x|), the reference profile whose
/// fractional Laplacian has an exact closed form (log_kernel_constant).
RadialProfile log_kernel_profile(Dim n);

/// Pointwise (-Delta)^s g at |x| = x_radius, 0 < s < 1, via the symmetrized
/// second-difference singular integral with an inner-ball Taylor surrogate.
/// Error controlled by refinement halving down to tol (absolute).
double frac_lap_pointwise(const RadialProfile& g, const OperatorSpec& spec,
                          double x_radius, double tol);

/// Pointwise (-Delta)^{m+s} g for m = 1: the radial integer Laplacian is
/// applied analytically (Delta g = g'' + (n-1) g'/r), then order s.
double frac_lap_composed(const RadialProfile& g, const OperatorSpec& spec,
                         double x_radius, double tol);

/// Dispatch on the integer part m in {0, 1}.
double frac_lap_at(const RadialProfile& g, const OperatorSpec& spec,
                   double x_radius, double tol);

/// ||(-Delta)^sigma g||_{L^p(R^n)} assembled from pointwise evaluations on a
/// graded radial grid; the far field is closed with the |x|^{-(n+2 sigma)}
/// decay model.
double seminorm(const RadialProfile& g, const OperatorSpec& spec, double p,
                double tol);

/// Bessel kernel G_sigma(|x|), normalized so that int_{R^n} G_sigma = 1;
/// its normalized Fourier transform is (2 pi)^{-n/2} (1+|xi|^2)^{-sigma/2}.
double bessel_potential(Dim n, double sigma, double x_radius, double tol = 1e-9);

/// int_{R^n} G_sigma(x) dx by radial quadrature (should be 1).
double bessel_potential_mass(Dim n, double sigma, double tol = 1e-8);

namespace kernels {

/// Pointwise evaluations over a batch of radii (OpenMP).
std::vector<double> frac_lap_map(const RadialProfile& g, const OperatorSpec& spec,
                                 const std::vector<double>& radii, double tol);

/// Serial reference implementation of the same map.
std::vector<double> frac_lap_map_serial(const RadialProfile& g,
                                        const OperatorSpec& spec,
                                        const std::vector<double>& radii,
                                        double tol);

}  // namespace kernels

}  // namespace fm
