#include "fracmoser/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace fm::quad {

namespace {

GaussRule compute_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, Newton on P_n
    long double x = std::cos(M_PI * (i + 0.75L) / (n + 0.5L));
    long double pp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0L);
      long double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    r.x[n - 1 - i] = static_cast<double>(x);
    r.w[n - 1 - i] = static_cast<double>(2.0L / ((1.0L - x * x) * pp * pp));
  }
  return r;
}

}  // namespace

const GaussRule& gauss(int npts) {
  // lock-free lookup after first use (the hot paths call this per panel)
  constexpr int kMax = 64;
  static GaussRule slots[kMax + 1];
  static std::once_flag flags[kMax + 1];
  if (npts < 1 || npts > kMax)
    throw std::domain_error("gauss: supported orders are 1..64");
  std::call_once(flags[npts], [npts] { slots[npts] = compute_rule(npts); });
  return slots[npts];
}

double panel(const Fn& f, double a, double b, int npts) {
  const GaussRule& g = gauss(npts);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < npts; ++i) s += g.w[i] * f(mid + half * g.x[i]);
  return half * s;
}

double integrate_edges(const Fn& f, const std::vector<double>& edges, int npts) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    s += panel(f, edges[i], edges[i + 1], npts);
  return s;
}

namespace {

double adaptive_rec(const Fn& f, double a, double b, double whole, double tol,
                    int depth, int npts) {
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid, npts);
  const double right = panel(f, mid, b, npts);
  const double split = left + right;
  const double accept = std::max(tol, 5e-13 * std::abs(split));
  if (depth <= 0 || std::abs(split - whole) <= accept) return split;
  return adaptive_rec(f, a, mid, left, 0.5 * tol, depth - 1, npts) +
         adaptive_rec(f, mid, b, right, 0.5 * tol, depth - 1, npts);
}

}  // namespace

double adaptive(const Fn& f, double a, double b, double tol, int max_depth, int npts) {
  if (a == b) return 0.0;
  return adaptive_rec(f, a, b, panel(f, a, b, npts), tol, max_depth, npts);
}

double adaptive_edges(const Fn& f, const std::vector<double>& edges, double tol,
                      int max_depth, int npts) {
  if (edges.size() < 2) return 0.0;
  const double per = tol / static_cast<double>(edges.size() - 1);
  double s = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    s += adaptive(f, edges[i], edges[i + 1], per, max_depth, npts);
  return s;
}

void grade_toward(std::vector<double>& edges, double start, double target,
                  double min_gap) {
  double gap = std::abs(target - start);
  const double sign = target > start ? 1.0 : -1.0;
  while (gap > min_gap) {
    gap *= 0.5;
    edges.push_back(target - sign * gap);
  }
}

std::vector<double> normalize_edges(std::vector<double> edges, double lo, double hi) {
  edges.push_back(lo);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  std::vector<double> out;
  for (double e : edges) {
    if (e < lo || e > hi) continue;
    if (!out.empty() && e - out.back() <= 1e-14 * std::max(1.0, std::abs(e))) continue;
    out.push_back(e);
  }
  if (out.size() < 2) out = {lo, hi};
  return out;
}

}  // namespace fm::quad
