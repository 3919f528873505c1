#include "fracmoser/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "fracmoser/quadrature.hpp"

namespace fm {

namespace {

// omega(x) = exp(-1/x) for x > 0, together with first two derivatives.
struct W3 {
  double v, d1, d2;
};

W3 omega3(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  const double v = std::exp(-1.0 / x);
  const double ix2 = 1.0 / (x * x);
  return {v, v * ix2, v * (ix2 * ix2 - 2.0 * ix2 / x)};
}

}  // namespace

C2 smooth_bump_c2(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  const W3 a = omega3(x);
  const W3 bw = omega3(1.0 - x);
  const double b = bw.v, db = -bw.d1, d2b = bw.d2;
  const double den = a.v + b;
  const double num1 = a.d1 * b - a.v * db;
  const double B = a.v / den;
  const double dB = num1 / (den * den);
  const double d2B = (a.d2 * b - a.v * d2b) / (den * den) -
                     2.0 * num1 * (a.d1 + db) / (den * den * den);
  return {B, dB, d2B};
}

double smooth_bump(double x) { return smooth_bump_c2(x).v; }

C2 cutoff_phi_c2(double t) {
  if (t <= 1.0) return {1.0, 0.0, 0.0};
  if (t >= 2.0) return {0.0, 0.0, 0.0};
  const C2 b = smooth_bump_c2(2.0 - t);
  return {b.v, -b.d1, b.d2};
}

double cutoff_phi(double t) { return cutoff_phi_c2(t).v; }

C2 cutoff_eta_c2(double t) {
  if (t <= 0.75) return {1.0, 0.0, 0.0};
  if (t >= 1.0) return {0.0, 0.0, 0.0};
  const C2 b = smooth_bump_c2(4.0 * (1.0 - t));
  return {b.v, -4.0 * b.d1, 16.0 * b.d2};
}

double cutoff_eta(double t) { return cutoff_eta_c2(t).v; }

RadialProfile::RadialProfile(Dim dim, std::vector<Segment> segments, Tail tail,
                             bool origin_singular)
    : dim_(dim), segments_(std::move(segments)), tail_(tail),
      origin_singular_(origin_singular) {
  if (segments_.empty()) throw std::domain_error("RadialProfile: no segments");
  for (const auto& s : segments_) {
    if (std::isfinite(s.hi)) breaks_.push_back(s.hi);
  }
  if (!segments_.empty() && segments_.front().lo > 0.0)
    throw std::domain_error("RadialProfile: segments must start at 0");
  support_ = std::isfinite(segments_.back().hi) && tail_.kind == Tail::Kind::compact
                 ? segments_.back().hi
                 : std::numeric_limits<double>::infinity();
}

C2 RadialProfile::eval(double r) const {
  if (r < 0.0) r = -r;
  for (const auto& s : segments_) {
    if (r < s.hi) return s.eval(r);
  }
  return {0.0, 0.0, 0.0};  // beyond compact support
}

RadialProfile scaled(const RadialProfile& g, double c) {
  auto base = std::make_shared<RadialProfile>(g);
  auto eval = [base, c](double r) {
    C2 e = base->eval(r);
    return C2{c * e.v, c * e.d1, c * e.d2};
  };
  // same edges as the source so quadrature splits stay aligned
  std::vector<Segment> out;
  double lo = 0.0;
  for (double b : g.breakpoints()) {
    out.push_back({lo, b, eval});
    lo = b;
  }
  if (!std::isfinite(g.support_radius()))
    out.push_back({lo, std::numeric_limits<double>::infinity(), eval});
  Tail t = g.tail();
  t.coeff *= c;
  t.offset *= c;
  return RadialProfile(g.dim(), std::move(out), t, g.origin_singular());
}

namespace {

// integral of |g|^p r^{n-1} over [0, b] when g has a log singularity at 0:
// substitute r = e^{-u}.
double origin_log_integral(const RadialProfile& g, double p, double b,
                           double tol) {
  const int n = g.dim().n;
  auto f = [&](double u) {
    const double r = std::exp(-u);
    return std::pow(std::abs(g.value(r)), p) * std::exp(-static_cast<double>(n) * u);
  };
  const double u0 = std::log(1.0 / b);
  double total = 0.0;
  double u = u0;
  const double step = 2.0;
  for (int i = 0; i < 500; ++i) {
    const double contrib = quad::adaptive(f, u, u + step, tol * 0.01, 18);
    total += contrib;
    u += step;
    if (std::abs(contrib) < tol * 1e-3 && i > 2) break;
    if (u > 800.0 / n) break;  // r underflows to 0
  }
  return total;
}

}  // namespace

double lp_norm(const RadialProfile& g, double p, const Region& region, double tol) {
  if (p < 1.0) throw std::domain_error("lp_norm: p must be >= 1");
  const int n = g.dim().n;
  const double surface = sphere_measure(g.dim());

  double lo = region.lo();
  double hi = region.hi();
  double tail_part = 0.0;

  if (region.unbounded()) {
    if (std::isfinite(g.support_radius())) {
      hi = std::max(g.support_radius(), lo);
    } else {
      const double r0 = std::max(g.last_break(), lo);
      switch (g.tail().kind) {
        case Tail::Kind::power: {
          const double q = g.tail().exponent;
          if (q * p <= n)
            throw numeric_error("lp_norm: tail exponent too small, q*p <= n");
          tail_part = std::pow(std::abs(g.tail().coeff), p) *
                      std::pow(r0, n - q * p) / (q * p - n);
          break;
        }
        case Tail::Kind::log_growth:
          throw numeric_error("lp_norm: log-growth tail is not p-integrable");
        case Tail::Kind::compact:
          break;
      }
      hi = r0;
    }
  }
  if (hi <= lo) return std::pow(surface * tail_part, 1.0 / p);

  auto integrand = [&](double r) {
    return std::pow(std::abs(g.value(r)), p) * std::pow(r, n - 1);
  };

  double inner = 0.0;
  double start = lo;
  if (lo == 0.0 && g.origin_singular()) {
    const double b1 = std::min(g.breakpoints().empty() ? hi : g.breakpoints().front(), hi);
    inner = origin_log_integral(g, p, b1, tol);
    start = b1;
  }

  std::vector<double> edges = g.breakpoints();
  edges = quad::normalize_edges(std::move(edges), start, hi);
  const double main = quad::adaptive_edges(integrand, edges, tol * 0.1, 24);

  return std::pow(surface * (inner + main + tail_part), 1.0 / p);
}

}  // namespace fm
