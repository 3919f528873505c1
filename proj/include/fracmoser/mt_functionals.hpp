#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracmoser/fraclap.hpp"
#include "fracmoser/moser_family.hpp"

namespace fm {

/// Weight f(|u|) in the divergence experiments: t^a, log(1+t) or 1.
struct WeightFn {
  enum class Tag { power, logweight, one };
  Tag tag = Tag::one;
  double a = 1.0;

  static WeightFn power(double a) { return {Tag::power, a}; }
  static WeightFn logweight() { return {Tag::logweight, 0.0}; }
  static WeightFn one() { return {Tag::one, 0.0}; }
  /// Accepts "t^<a>", "log", "one".
  static WeightFn parse(const std::string& s);
  std::string name() const;

  double operator()(double t) const;
  double log_value(double t) const;  // log f(t); -inf at t = 0 where f(0) = 0
};

/// Log-space integral value with explicit saturation (never a silent inf).
struct ExpIntegral {
  double log_value = 0.0;
  bool saturated = false;
  double value() const;
};

/// |S^{n-1}| int w(|u(r)|) exp(alpha |u(r)|^{p'}) r^{n-1} dr over the region,
/// accumulated in log space. Saturates (flag) beyond 700 in log units.
ExpIntegral exp_functional(const RadialProfile& u, double alpha, double p_conj,
                           const WeightFn& w, const Region& region, double tol);

/// j_p = min{ j in N : j >= p } and the truncated exponential
/// Phi(t) = e^t - sum_{j=0}^{j_p-2} t^j/j!.
int j_p(double p);
double phi_truncated(double t, double p);
double log_phi_truncated(double t, double p);
/// Smallest T with Phi(T) >= e^T / 2.
double phi_half_threshold(double p);

/// One record of a sharpness sweep at eps = e^{-k}.
struct SweepRow {
  int k = 0;
  double lp_norm_p = 0.0;    // ||u_eps||_p^p
  double seminorm_p = 0.0;   // Riesz seminorm^p
  double bessel_norm_p = 0.0;
  double I_eps = 0.0;
  double weighted = 0.0;
};

/// CSV header naming the SweepRow fields.
std::string sweep_row_header();
std::string sweep_row_csv(const SweepRow& row);

/// Divergence-experiment row: norms of u_eps, lower-bound integral I_eps
/// normalized by (||u||_p^p + seminorm^p)^{p'/p} over the plateau ball, and
/// the weighted value I_eps * w(normalized plateau).
SweepRow sharpness_row(const MoserParams& params, const WeightFn& w,
                       std::optional<double> tau = std::nullopt);

std::vector<SweepRow> sharpness_sweep(Dim n, const ExponentPair& p, int k_min,
                                      int k_max, const WeightFn& w,
                                      std::optional<double> tau = std::nullopt);

/// Shifted-operator sweep: rows normalized by the Bessel norm alone; the
/// truncated exponential Phi replaces e^t when use_phi is set.
std::vector<SweepRow> bessel_sharpness_sweep(Dim n, const ExponentPair& p,
                                             double tau, int k_min, int k_max,
                                             const WeightFn& w,
                                             bool use_phi = false);

/// ||(tau I - Delta)^{n/2p} u_eps||_p^p. Exact symbol split for (n,p) = (2,2);
/// spectral grid route otherwise. tau = 0 returns the Riesz value unchanged.
double bessel_norm_p(const MoserParams& params, double tau, double lp_p,
                     double sem_p);

/// Witness search for the one-dimensional criterion: sweep eps = e^{-k} over
/// normalized family members until int_0^1 f(t0 u) u dx exceeds target_M,
/// with f(t) = t e^{alpha0 t^2}, alpha0 = pi, t0 = sqrt(2 pi^2 / alpha0).
struct IsConditionResult {
  bool reached = false;
  int k = 0;
  double M_value = 0.0;
  double sup_t = 0.0;       // sup_{t > 0} (t^2/(4 pi) - int_0^1 F(t u))
  double t0 = 0.0;          // bracket endpoint
  double threshold = 0.5;   // pi / (2 alpha0), report-only comparison
  std::vector<std::pair<int, double>> history;  // (k, M_value)
  std::optional<RadialProfile> witness;         // normalized family member
};
IsConditionResult is_condition_search(double target_M, int k_max);

/// log of the closed-form plateau integral
/// int_{B_eps} exp(alpha |u/S^{1/p}|^{p'}) dx = |B_1| e^{-nk + nk S^{-p'/p}}.
double plateau_log_integral(const MoserParams& params, double normalizer_p);

}  // namespace fm
