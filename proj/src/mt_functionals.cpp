#include "fracmoser/mt_functionals.hpp"

#include <algorithm>
#include <cmath>

#include "fracmoser/gridfield.hpp"
#include "fracmoser/quadrature.hpp"

namespace fm {

namespace {
constexpr double kLogSaturation = 700.0;
}

WeightFn WeightFn::parse(const std::string& s) {
  if (s == "one" || s == "1") return one();
  if (s == "log") return logweight();
  if (s.rfind("t^", 0) == 0) return power(std::stod(s.substr(2)));
  throw std::domain_error("WeightFn: expected t^<a>, log or one, got " + s);
}

std::string WeightFn::name() const {
  switch (tag) {
    case Tag::power: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "t^%g", a);
      return buf;
    }
    case Tag::logweight: return "log";
    case Tag::one: return "one";
  }
  return "?";
}

double WeightFn::operator()(double t) const {
  switch (tag) {
    case Tag::power: return std::pow(t, a);
    case Tag::logweight: return std::log1p(t);
    case Tag::one: return 1.0;
  }
  return 1.0;
}

double WeightFn::log_value(double t) const {
  switch (tag) {
    case Tag::power:
      return t > 0.0 ? a * std::log(t) : -std::numeric_limits<double>::infinity();
    case Tag::logweight: {
      const double w = std::log1p(t);
      return w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity();
    }
    case Tag::one: return 0.0;
  }
  return 0.0;
}

double ExpIntegral::value() const {
  if (saturated)
    throw numeric_error("ExpIntegral: saturated beyond exp(700)");
  return std::exp(log_value);
}

ExpIntegral exp_functional(const RadialProfile& u, double alpha, double p_conj,
                           const WeightFn& w, const Region& region, double tol) {
  if (region.unbounded())
    throw std::domain_error("exp_functional: region must be bounded");
  const int n = u.dim().n;
  const double lo = region.lo(), hi = region.hi();

  // log of the integrand
  auto logf = [&](double r) {
    const double uv = std::abs(u.value(r));
    return w.log_value(uv) + alpha * std::pow(uv, p_conj) +
           (n - 1) * std::log(std::max(r, 1e-300));
  };

  std::vector<double> edges = u.breakpoints();
  edges = quad::normalize_edges(std::move(edges), lo, hi);
  // refine: split each panel into a few for the log-sum-exp accumulation
  std::vector<double> fine;
  const int sub = 8;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    for (int j = 0; j < sub; ++j)
      fine.push_back(edges[i] + (edges[i + 1] - edges[i]) * j / sub);
  }
  fine.push_back(edges.back());

  const quad::GaussRule& rule = quad::gauss(15);
  double log_total = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < fine.size(); ++i) {
    const double mid = 0.5 * (fine[i] + fine[i + 1]);
    const double half = 0.5 * (fine[i + 1] - fine[i]);
    if (half <= 0.0) continue;
    double mx = -std::numeric_limits<double>::infinity();
    double lf[15];
    for (int q = 0; q < 15; ++q) {
      lf[q] = logf(mid + half * rule.x[q]);
      mx = std::max(mx, lf[q]);
    }
    if (mx == -std::numeric_limits<double>::infinity()) continue;
    double s = 0.0;
    for (int q = 0; q < 15; ++q) s += rule.w[q] * std::exp(lf[q] - mx);
    const double log_panel = mx + std::log(half * s);
    const double m = std::max(log_total, log_panel);
    log_total = m + std::log(std::exp(log_total - m) + std::exp(log_panel - m));
  }
  (void)tol;
  const double log_result = std::log(sphere_measure(u.dim())) + log_total;
  return {log_result, log_result > kLogSaturation};
}

int j_p(double p) {
  if (!(p > 1.0)) throw std::domain_error("j_p: p must be > 1");
  return static_cast<int>(std::ceil(p));
}

double phi_truncated(double t, double p) {
  if (t < 0.0) throw std::domain_error("phi_truncated: t must be >= 0");
  const int jp = j_p(p);
  if (t < 35.0) {
    // tail series from j = jp - 1
    double term = 1.0;
    for (int j = 1; j <= jp - 1; ++j) term *= t / j;
    double sum = term;
    for (int j = jp; j < 500; ++j) {
      term *= t / j;
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum;
  }
  double poly = 0.0, term = 1.0;
  for (int j = 0; j <= jp - 2; ++j) {
    poly += term;
    term *= t / (j + 1);
  }
  return std::exp(t) - poly;
}

double log_phi_truncated(double t, double p) {
  const int jp = j_p(p);
  if (t < 35.0) return std::log(phi_truncated(t, p));
  // log Phi = t + log1p(-e^{-t} sum_{j<=jp-2} t^j/j!)
  double log_sum = -std::numeric_limits<double>::infinity();
  double lt = std::log(t);
  double lfact = 0.0;
  for (int j = 0; j <= jp - 2; ++j) {
    if (j > 0) lfact += std::log(static_cast<double>(j));
    const double lterm = j * lt - lfact;
    const double m = std::max(log_sum, lterm);
    log_sum = m + std::log(std::exp(log_sum - m) + std::exp(lterm - m));
  }
  const double corr = log_sum - t;
  if (corr < -745.0) return t;
  return t + std::log1p(-std::exp(corr));
}

double phi_half_threshold(double p) {
  auto deficit = [&](double t) {
    // e^{-t} sum_{j<=jp-2} t^j/j! - 1/2
    double sum = 0.0, term = 1.0;
    for (int j = 0; j <= j_p(p) - 2; ++j) {
      sum += term;
      term *= t / (j + 1);
    }
    return sum * std::exp(-t) - 0.5;
  };
  double lo = 0.0, hi = 1.0;
  while (deficit(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (deficit(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string sweep_row_header() {
  return "k,lp_norm_p,seminorm_p,bessel_norm_p,I_eps,weighted";
}

std::string sweep_row_csv(const SweepRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g", r.k,
                r.lp_norm_p, r.seminorm_p, r.bessel_norm_p, r.I_eps, r.weighted);
  return buf;
}

double plateau_log_integral(const MoserParams& params, double normalizer_p) {
  const double k = params.log_inv_eps();
  const double n = params.n.n;
  const double ratio = std::pow(normalizer_p, -params.p.p_conj / params.p.p);
  return std::log(ball_volume(params.n)) - n * k + n * k * ratio;
}

double bessel_norm_p(const MoserParams& params, double tau, double lp_p,
                     double sem_p) {
  if (tau == 0.0) return sem_p;
  if (params.n.n == 2 && params.p.p == 2.0) {
    // (tau + |xi|^2)^{1/2} squared is tau + |xi|^2: exact split
    return tau * lp_p + sem_p;
  }
  // grid route
  const int N = params.n.n == 1 ? 2048 : 1024;
  const GridField f = GridField::sample_radial(u_eps(params), N, 8.0);
  const double sigma = params.n.n / (2.0 * params.p.p);
  const GridField b = spectral_apply(f, SymbolSpec::bessel(tau, sigma));
  return std::pow(grid_lp_norm(b, params.p.p), params.p.p);
}

namespace {

SweepRow make_row(const MoserParams& params, const WeightFn& w,
                  std::optional<double> tau, bool bessel_normalized,
                  bool use_phi) {
  SweepRow row;
  row.k = static_cast<int>(std::lround(params.log_inv_eps()));
  const double tol = 1e-6;

  RadialProfile u = u_eps(params);
  row.lp_norm_p = std::pow(lp_norm(u, params.p.p, Region::all(), tol), params.p.p);
  const double sigma = params.n.n / (2.0 * params.p.p);
  OperatorSpec op(sigma);
  row.seminorm_p = std::pow(seminorm(u, op, params.p.p, 2e-4), params.p.p);
  row.bessel_norm_p = tau ? bessel_norm_p(params, *tau, row.lp_norm_p, row.seminorm_p)
                          : row.seminorm_p;

  const double S = bessel_normalized ? row.bessel_norm_p
                                     : row.lp_norm_p + row.seminorm_p;
  const double nk = params.n.n * params.log_inv_eps();
  const double arg = nk * std::pow(S, -params.p.p_conj / params.p.p);
  double log_I;
  if (use_phi) {
    log_I = std::log(ball_volume(params.n)) - nk + log_phi_truncated(arg, params.p.p);
  } else {
    log_I = std::log(ball_volume(params.n)) - nk + arg;
  }
  if (log_I > kLogSaturation)
    throw numeric_error("sharpness_row: functional saturated");
  row.I_eps = std::exp(log_I);

  const double plateau = kappa_np(params.n, params.p) *
                         std::pow(params.log_inv_eps(), 1.0 / params.p.p_conj);
  row.weighted = row.I_eps * w(plateau / std::pow(S, 1.0 / params.p.p));
  return row;
}

}  // namespace

SweepRow sharpness_row(const MoserParams& params, const WeightFn& w,
                       std::optional<double> tau) {
  return make_row(params, w, tau, /*bessel_normalized=*/false, /*use_phi=*/false);
}

std::vector<SweepRow> sharpness_sweep(Dim n, const ExponentPair& p, int k_min,
                                      int k_max, const WeightFn& w,
                                      std::optional<double> tau) {
  std::vector<SweepRow> rows;
  for (int k = k_min; k <= k_max; ++k)
    rows.push_back(sharpness_row(MoserParams(n, p, std::exp(-k)), w, tau));
  return rows;
}

std::vector<SweepRow> bessel_sharpness_sweep(Dim n, const ExponentPair& p,
                                             double tau, int k_min, int k_max,
                                             const WeightFn& w, bool use_phi) {
  if (tau < 0.0) throw std::domain_error("bessel_sharpness_sweep: tau >= 0");
  std::vector<SweepRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    MoserParams params(n, p, std::exp(-k));
    if (tau == 0.0) {
      rows.push_back(sharpness_row(params, w, std::nullopt));
    } else {
      rows.push_back(make_row(params, w, tau, /*bessel_normalized=*/true, use_phi));
    }
  }
  return rows;
}

IsConditionResult is_condition_search(double target_M, int k_max) {
  // one-dimensional setting, alpha0 = alpha_{1,2} = pi, omega = pi
  const double alpha0 = M_PI;
  const double t0 = std::sqrt(2.0 * M_PI * M_PI / alpha0);  // sqrt(2 pi)
  IsConditionResult res;
  res.t0 = t0;
  res.threshold = M_PI / (2.0 * alpha0);

  const Dim n(1);
  const ExponentPair p(2.0);
  const OperatorSpec op(0.25);

  double scale = 1.0;
  MoserParams last_params(n, p, std::exp(-3));
  for (int k = 3; k <= k_max; ++k) {
    MoserParams params(n, p, std::exp(-k));
    RadialProfile u = u_eps(params);
    const double sem = seminorm(u, op, 2.0, 2e-4);
    const double c = 1.0 / (std::sqrt(2.0 * M_PI) * sem);
    auto integrand = [&](double rho) {
      const double uv = c * u.value(rho);
      return std::exp(alpha0 * t0 * t0 * uv * uv) * t0 * uv * uv;
    };
    std::vector<double> edges = u.breakpoints();
    edges = quad::normalize_edges(std::move(edges), 0.0, 1.0);
    const double M = quad::adaptive_edges(integrand, edges, 1e-8);
    res.history.emplace_back(k, M);
    res.k = k;
    res.M_value = M;
    scale = c;
    last_params = params;
    if (M > target_M) {
      res.reached = true;
      break;
    }
  }

  // sup_{t in [0, t0]} t^2/(4 pi) - int_0^1 F(t u), F(s) = (e^{alpha0 s^2}-1)/(2 alpha0)
  RadialProfile witness = scaled(u_eps(last_params), scale);
  auto big_phi = [&](double t) {
    auto f = [&](double rho) {
      const double uv = t * witness.value(rho);
      return (std::exp(alpha0 * uv * uv) - 1.0) / (2.0 * alpha0);
    };
    std::vector<double> edges = witness.breakpoints();
    edges = quad::normalize_edges(std::move(edges), 0.0, 1.0);
    return t * t / (4.0 * M_PI) - quad::adaptive_edges(f, edges, 1e-9);
  };
  // golden-section maximization on [0, t0]
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = t0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = big_phi(x1), f2 = big_phi(x2);
  for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = big_phi(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = big_phi(x1);
    }
  }
  res.sup_t = std::max({big_phi(a), f1, f2, big_phi(b), big_phi(0.0)});
  res.witness = std::move(witness);
  return res;
}

}  // namespace fm
