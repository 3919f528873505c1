#include "fracmoser/fraclap.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "fracmoser/parallel.hpp"
#include "fracmoser/quadrature.hpp"

namespace fm {

RadialProfile log_kernel_profile(Dim n) {
  std::vector<Segment> segs;
  segs.push_back({0.0, std::numeric_limits<double>::infinity(), [](double r) {
                    return C2{std::log(1.0 / r), -1.0 / r, 1.0 / (r * r)};
                  }});
  return RadialProfile(n, std::move(segs), Tail::log_growth(1.0), true);
}

namespace {

double nearest_break_distance(const RadialProfile& g, double r) {
  double dist = std::numeric_limits<double>::infinity();
  for (double b : g.breakpoints()) {
    const double d = std::abs(r - b);
    if (d > 1e-12 * std::max(1.0, r)) dist = std::min(dist, d);
  }
  return dist;
}

double inner_radius(const RadialProfile& g, double r) {
  double h = std::min(1e-3, nearest_break_distance(g, r)) / 4.0;
  if (r > 0.0) h = std::min(h, 0.125 * r);
  return std::max(h, 1e-10 * std::max(1.0, r));
}

double radial_laplacian(const RadialProfile& g, double r) {
  const C2 e = g.eval(r);
  if (r < 1e-150) return g.dim().n * e.d2;
  return e.d2 + (g.dim().n - 1) * e.d1 / r;
}

// Machinery for one pointwise evaluation: the singular integral is split as
//   |y| < h                      second-order Taylor surrogate
//   |x+y| < delta0 (= r/2)       origin-centered radial integral (absorbs any
//                                singularity of the profile at 0)
//   the rest, |y| in (h, R_far)  x-centered sphere-by-sphere quadrature
//   |y| > R_far                  analytic closure from the tail tag
struct PointwiseEval {
  const RadialProfile& g;
  double r;
  double s;
  double g_r;
  int n;
  double surface;     // |S^{n-1}|
  double sphere_sub;  // |S^{n-2}| for n >= 2
  double delta0;      // origin-ball radius (0 when unused)

  // kernel K(d) = d^{-n-2s}
  double kernel(double d) const { return std::pow(d, -static_cast<double>(n) - 2.0 * s); }

  // W(t) = integral over the unit sphere of K(|x - t w|), smooth for t < r
  double origin_kernel(double t) const {
    if (n == 1) return kernel(r - t) + kernel(r + t);
    auto f = [&](double th) {
      const double d2 = r * r + t * t - 2.0 * r * t * std::cos(th);
      double w = 1.0;
      if (n == 3) w = std::sin(th);
      else if (n > 3) w = std::pow(std::sin(th), n - 2);
      return std::pow(d2, -0.5 * (n + 2.0 * s)) * w;
    };
    return sphere_sub * quad::panel(f, 0.0, M_PI, 24);
  }

  // integral over |y'| < delta0 of (g(|y'|) - g(r)) K(|y' - x|) dy'
  double origin_ball(double tol) const {
    if (delta0 <= 0.0) return 0.0;
    auto f = [&](double t) {
      return (g.value(t) - g_r) * std::pow(t, n - 1) * origin_kernel(t);
    };
    double t_lo = 0.0;
    double head = 0.0;
    if (g.origin_singular()) {
      t_lo = std::min(delta0, g.breakpoints().empty() ? delta0 : g.breakpoints().front()) * 0.5;
      t_lo = std::min(t_lo, 0.5 * delta0);
      // substitute t = e^{-u}; integrand decays like e^{-n u} log u
      auto fu = [&](double u) {
        const double t = std::exp(-u);
        return f(t) * t;
      };
      double u = std::log(1.0 / t_lo);
      for (int i = 0; i < 400; ++i) {
        const double c = quad::adaptive(fu, u, u + 2.0, tol * 0.02, 12);
        head += c;
        u += 2.0;
        if (std::abs(c) < tol * 1e-3 && i > 1) break;
        if (u > 750.0 / n) break;
      }
    }
    std::vector<double> edges = g.breakpoints();
    edges = quad::normalize_edges(std::move(edges), t_lo, delta0);
    return head + quad::adaptive_edges(f, edges, tol, 14);
  }

  // mean of g over the included part of the sphere |x + rho w|, minus the
  // included measure times g(r). Cap: |x + rho w| < delta0 excluded.
  double sphere_term(double rho) const {
    if (n == 1) {
      double sum = g.value(r + rho) - g_r;
      const double tmin = std::abs(r - rho);
      if (tmin >= delta0) sum += g.value(tmin) - g_r;
      return sum;
    }
    const double a = r * r + rho * rho;
    const double b = 2.0 * r * rho;
    // theta from the far pole: t(0) = r + rho, t(pi) = |r - rho|
    auto f = [&](double th) {
      const double t = std::sqrt(std::max(a + b * std::cos(th), 0.0));
      double w = 1.0;
      if (n == 3) w = std::sin(th);
      else if (n > 3) w = std::pow(std::sin(th), n - 2);
      return (g.value(t) - g_r) * w;
    };
    double th_hi = M_PI;
    if (b > 1e-300 && delta0 > 0.0) {
      const double c = (delta0 * delta0 - a) / b;  // cos at the cap boundary
      if (c >= 1.0) return 0.0;  // sphere entirely inside the origin ball
      if (c > -1.0) th_hi = std::acos(c);
    }
    std::vector<double> edges;
    if (b > 1e-300) {
      for (double bp : g.breakpoints()) {
        const double c = (bp * bp - a) / b;
        if (c > -1.0 && c < 1.0) {
          const double th = std::acos(c);
          if (th < th_hi) edges.push_back(th);
        }
      }
      // light grading toward the closest approach
      const double tmin = std::abs(r - rho);
      if (th_hi == M_PI && tmin < 0.3 * std::sqrt(r * rho)) {
        quad::grade_toward(edges, 0.5 * M_PI, M_PI,
                           std::max(0.5 * tmin / std::sqrt(r * rho), 1e-3));
      }
    }
    edges = quad::normalize_edges(std::move(edges), 0.0, th_hi);
    return sphere_sub * quad::integrate_edges(f, edges, 16);
  }

  std::vector<double> rho_edges(double h, double R_far) const {
    std::vector<double> edges = {h, R_far};
    for (double b : g.breakpoints()) {
      edges.push_back(std::abs(r - b));
      edges.push_back(r + b);
    }
    edges.push_back(r);
    if (delta0 > 0.0) {
      edges.push_back(r - delta0);
      edges.push_back(r + delta0);
    } else {
      quad::grade_toward(edges, 0.5 * r, r, 1e-3 * std::max(r, 1e-30));
      quad::grade_toward(edges, 2.0 * r, r, 1e-3 * std::max(r, 1e-30));
    }
    for (double x = h; x < R_far; x *= 2.0) edges.push_back(x);
    return quad::normalize_edges(std::move(edges), h, R_far);
  }
};

double closure_start(const RadialProfile& g, double r) {
  if (std::isfinite(g.support_radius())) return r + g.support_radius();
  const double base = std::max({r, g.last_break(), 0.5});
  if (g.dim().n == 2 && g.tail().kind == Tail::Kind::log_growth)
    return 4.0 * base;  // spherical mean of log is exact beyond max(r, last break)
  return 1e4 * base;
}

// int_R^inf rho^{-1-2s} * 2 (mean - |S^{n-1}| g(r)) drho from the tail model.
double tail_closure(const RadialProfile& g, double r, double s, double R) {
  const double surface = sphere_measure(g.dim());
  const double g_r = g.value(r);
  const double T0 = std::pow(R, -2.0 * s) / (2.0 * s);
  switch (g.tail().kind) {
    case Tail::Kind::compact:
      return -2.0 * surface * g_r * T0;
    case Tail::Kind::log_growth: {
      const double c = g.tail().coeff, d = g.tail().offset;
      const double T1 = -(std::log(R) * std::pow(R, -2.0 * s) / (2.0 * s) +
                          std::pow(R, -2.0 * s) / (4.0 * s * s));
      return 2.0 * surface * (c * T1 + (d - g_r) * T0);
    }
    case Tail::Kind::power: {
      const double K = g.tail().coeff, q = g.tail().exponent;
      return 2.0 * surface * (K * std::pow(R, -2.0 * s - q) / (2.0 * s + q)) -
             2.0 * surface * g_r * T0;
    }
  }
  return 0.0;
}

}  // namespace

double frac_lap_pointwise(const RadialProfile& g, const OperatorSpec& spec,
                          double x_radius, double tol) {
  if (spec.m != 0 || spec.s <= 0.0)
    throw std::domain_error("frac_lap_pointwise: requires sigma in (0,1)");
  const double s = spec.s;
  const Dim n = g.dim();
  const double C = pv_normalizer(n, s);
  const double surface = sphere_measure(n);
  const double r = x_radius;
  if (!(r > 0.0))
    throw std::domain_error("frac_lap_pointwise: x_radius must be > 0");
  if (!std::isfinite(g.support_radius()) && g.tail().kind == Tail::Kind::compact)
    throw numeric_error("frac_lap_pointwise: profile lacks a decay tag");

  const double h = inner_radius(g, r);
  const double lap = radial_laplacian(g, r);
  const double inner =
      surface * lap / n.n * std::pow(h, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);

  PointwiseEval ev{g,
                   r,
                   s,
                   g.value(r),
                   n.n,
                   surface,
                   n.n >= 2 ? sphere_measure(Dim(std::max(n.n - 1, 1))) : 0.0,
                   g.origin_singular() ? 0.5 * r : 0.0};

  const double budget = tol / (0.5 * C);
  const double origin_part = 2.0 * ev.origin_ball(0.25 * budget);

  const double R_far = closure_start(g, r);
  const std::vector<double> edges = ev.rho_edges(h, R_far);
  auto integrand = [&](double rho) {
    return std::pow(rho, -1.0 - 2.0 * s) * 2.0 * ev.sphere_term(rho);
  };
  const double outer = quad::adaptive_edges(integrand, edges, 0.5 * budget, 14);
  const double tail = tail_closure(g, r, s, R_far);

  return -0.5 * C * (inner + origin_part + outer + tail);
}

namespace {

// -(Delta g) as a derived profile; analytic value, finite-difference
// first/second derivatives (only the tiny inner-ball surrogate needs them).
RadialProfile neg_laplacian_profile(const RadialProfile& g) {
  auto base = std::make_shared<RadialProfile>(g);
  const int n = g.dim().n;
  auto value = [base, n](double r) {
    const C2 e = base->eval(r);
    if (r < 1e-150) return -static_cast<double>(n) * e.d2;
    return -(e.d2 + (n - 1) * e.d1 / r);
  };
  auto eval = [base, value](double r) {
    double step = 1e-5 * std::max(r, 1.0);
    const double dist = nearest_break_distance(*base, r);
    if (std::isfinite(dist)) step = std::min(step, 0.2 * dist);
    if (base->origin_singular()) step = std::min(step, 0.2 * r);
    step = std::max(step, 1e-12 * std::max(r, 1.0));
    const double vm = value(r - step), v0 = value(r), vp = value(r + step);
    return C2{v0, (vp - vm) / (2.0 * step), (vp - 2.0 * v0 + vm) / (step * step)};
  };
  std::vector<Segment> segs;
  double lo = 0.0;
  for (double b : g.breakpoints()) {
    segs.push_back({lo, b, eval});
    lo = b;
  }
  Tail t = Tail::compact();
  const bool lap_origin_singular = g.origin_singular();
  if (!std::isfinite(g.support_radius())) {
    segs.push_back({lo, std::numeric_limits<double>::infinity(), eval});
    switch (g.tail().kind) {
      case Tail::Kind::log_growth:
        // -Delta(c log(1/r)) = c (n-2) / r^2
        t = Tail::power(g.tail().coeff * (n - 2), 2.0);
        break;
      case Tail::Kind::power: {
        const double K = g.tail().coeff, q = g.tail().exponent;
        t = Tail::power(-K * q * (q + 2.0 - n), q + 2.0);
        break;
      }
      case Tail::Kind::compact:
        break;
    }
  }
  return RadialProfile(g.dim(), std::move(segs), t, lap_origin_singular);
}

}  // namespace

double frac_lap_composed(const RadialProfile& g, const OperatorSpec& spec,
                         double x_radius, double tol) {
  if (spec.m != 1 || spec.s <= 0.0)
    throw std::domain_error("frac_lap_composed: requires sigma in (1,2)");
  RadialProfile neg_lap = neg_laplacian_profile(g);
  OperatorSpec frac(spec.s, spec.tau, spec.tol);
  return frac_lap_pointwise(neg_lap, frac, x_radius, tol);
}

double frac_lap_at(const RadialProfile& g, const OperatorSpec& spec,
                   double x_radius, double tol) {
  if (spec.m == 0) return frac_lap_pointwise(g, spec, x_radius, tol);
  if (spec.m == 1) return frac_lap_composed(g, spec, x_radius, tol);
  throw std::domain_error("frac_lap_at: supported orders are (0,1) u (1,2)");
}

namespace kernels {

std::vector<double> frac_lap_map(const RadialProfile& g, const OperatorSpec& spec,
                                 const std::vector<double>& radii, double tol) {
  std::vector<double> out(radii.size());
  parallel_for(static_cast<std::ptrdiff_t>(radii.size()), [&](std::ptrdiff_t i) {
    out[i] = frac_lap_at(g, spec, radii[i], tol);
  });
  return out;
}

std::vector<double> frac_lap_map_serial(const RadialProfile& g,
                                        const OperatorSpec& spec,
                                        const std::vector<double>& radii,
                                        double tol) {
  std::vector<double> out(radii.size());
  for (size_t i = 0; i < radii.size(); ++i)
    out[i] = frac_lap_at(g, spec, radii[i], tol);
  return out;
}

}  // namespace kernels

namespace {

std::vector<double> seminorm_edges(const RadialProfile& g, double r_max) {
  std::vector<double> edges = {r_max};
  const auto& breaks = g.breakpoints();
  for (double b : breaks) {
    if (b >= r_max) continue;
    edges.push_back(b);
    for (double f : {0.5, 0.25, 0.125}) {
      edges.push_back(b * (1.0 - f));
      edges.push_back(b * (1.0 + f));
    }
  }
  const double b0 = breaks.empty() ? 0.125 : breaks.front();
  for (double x = b0; x < r_max; x *= std::sqrt(2.0)) edges.push_back(x);
  double lo = b0;
  for (double x = b0; x > 1e-3 * b0; x *= 0.5) {
    edges.push_back(x);
    lo = x;
  }
  return quad::normalize_edges(std::move(edges), lo, r_max);
}

}  // namespace

double seminorm(const RadialProfile& g, const OperatorSpec& spec, double p,
                double tol) {
  if (!(spec.sigma < 2.0))
    throw std::domain_error("seminorm: numerical orders limited to sigma < 2");
  const Dim n = g.dim();
  const double surface = sphere_measure(n);
  const double decay = n.n + 2.0 * spec.sigma;  // far-field |x|^{-(n+2 sigma)}
  const double r_max = std::isfinite(g.support_radius())
                           ? std::max(2.0 * g.support_radius(), 4.0)
                           : std::max(4.0 * g.last_break(), 8.0);
  const double point_tol = std::min(spec.tol, 0.3 * tol);

  std::vector<double> edges = seminorm_edges(g, r_max);
  const int npts = 7;
  const quad::GaussRule& rule = quad::gauss(npts);

  auto assemble = [&](const std::vector<double>& eds) {
    std::vector<double> radii, wts;
    radii.reserve((eds.size() - 1) * npts);
    for (size_t i = 0; i + 1 < eds.size(); ++i) {
      const double mid = 0.5 * (eds[i] + eds[i + 1]);
      const double half = 0.5 * (eds[i + 1] - eds[i]);
      for (int q = 0; q < npts; ++q) {
        radii.push_back(mid + half * rule.x[q]);
        wts.push_back(half * rule.w[q]);
      }
    }
    const std::vector<double> vals = kernels::frac_lap_map(g, spec, radii, point_tol);
    double integral = 0.0;  // fixed-order reduction keeps output deterministic
    for (size_t i = 0; i < vals.size(); ++i)
      integral += wts[i] * std::pow(std::abs(vals[i]), p) *
                  std::pow(radii[i], n.n - 1);
    return integral;
  };

  double coarse = assemble(edges);
  double refined = coarse;
  for (int round = 0; round < 3; ++round) {
    std::vector<double> fine_edges;
    fine_edges.reserve(edges.size() * 2);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
      fine_edges.push_back(edges[i]);
      fine_edges.push_back(0.5 * (edges[i] + edges[i + 1]));
    }
    fine_edges.push_back(edges.back());
    refined = assemble(fine_edges);
    if (std::abs(refined - coarse) <= tol * std::max(1.0, std::abs(refined)))
      break;
    edges = std::move(fine_edges);
    coarse = refined;
  }

  // head below the smallest quadrature radius: integrand ~ |T|^p r^{n-1},
  // bounded T near 0 for smooth profiles
  const double r_head = edges.empty() ? 0.0 : edges.front();
  double head = 0.0;
  if (r_head > 0.0) {
    const double t_head = frac_lap_at(g, spec, r_head, point_tol);
    head = std::pow(std::abs(t_head), p) * std::pow(r_head, n.n) / n.n;
  }

  // close the far field with the decay model fitted at r_max
  const double t_rm = frac_lap_at(g, spec, r_max, point_tol);
  const double tail = surface * std::pow(std::abs(t_rm), p) *
                      std::pow(r_max, n.n) / (decay * p - n.n);

  return std::pow(surface * (refined + head) + tail, 1.0 / p);
}

double bessel_potential(Dim n, double sigma, double x_radius, double tol) {
  if (!(sigma > 0.0)) throw std::domain_error("bessel_potential: sigma > 0");
  const double r = x_radius;
  const double pref =
      std::pow(4.0 * M_PI, -0.5 * sigma) / gamma_fn(0.5 * sigma);
  // t-integral with t = e^u
  auto f = [&](double u) {
    const double t = std::exp(u);
    const double expo = -M_PI * r * r / t - t / (4.0 * M_PI) +
                        0.5 * (sigma - n.n) * u;
    return expo < -745.0 ? 0.0 : std::exp(expo);
  };
  double u_lo = -40.0;
  if (r > 0.0) u_lo = std::min(u_lo, std::log(M_PI * r * r / 760.0));
  const double u_hi = std::log(760.0 * 4.0 * M_PI);
  std::vector<double> edges;
  for (double u = u_lo; u < u_hi; u += 2.0) edges.push_back(u);
  edges = quad::normalize_edges(std::move(edges), u_lo, u_hi);
  return pref * quad::adaptive_edges(f, edges, tol, 16);
}

double bessel_potential_mass(Dim n, double sigma, double tol) {
  const double surface = sphere_measure(n);
  auto f = [&](double r) {
    return bessel_potential(n, sigma, r, tol * 1e-2) * std::pow(r, n.n - 1);
  };
  // G ~ r^{sigma-n} near zero (integrable against r^{n-1}), exponential tail
  std::vector<double> edges = {0.0};
  for (double x = 1e-6; x < 1.0; x *= 4.0) edges.push_back(x);
  for (double x = 1.0; x <= 64.0; x *= 1.5) edges.push_back(x);
  edges = quad::normalize_edges(std::move(edges), 0.0, 64.0);
  return surface * quad::adaptive_edges(f, edges, tol, 12);
}

}  // namespace fm
