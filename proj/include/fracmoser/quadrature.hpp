#pragma once

#include <functional>
#include <vector>

namespace fm::quad {

/// Gauss-Legendre rule on [-1,1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Cached Gauss-Legendre nodes/weights (Newton iteration on P_n).
const GaussRule& gauss(int npts);

using Fn = std::function<double(double)>;

/// Single Gauss panel over [a,b].
double panel(const Fn& f, double a, double b, int npts = 15);

/// Fixed composite rule over the given sorted edge list.
double integrate_edges(const Fn& f, const std::vector<double>& edges, int npts = 15);

/// Adaptive bisection with halving-comparison error estimate.
/// tol is absolute; each subdivision level halves the local budget.
double adaptive(const Fn& f, double a, double b, double tol, int max_depth = 24,
                int npts = 15);

/// Adaptive integration over an initial panel decomposition.
double adaptive_edges(const Fn& f, const std::vector<double>& edges, double tol,
                      int max_depth = 24, int npts = 15);

/// Append geometrically graded edges approaching `target` from `start`
/// (either side), halving the gap until it is below `min_gap`.
void grade_toward(std::vector<double>& edges, double start, double target,
                  double min_gap);

/// Sort, deduplicate (within rel eps) and clip edges to [lo, hi].
std::vector<double> normalize_edges(std::vector<double> edges, double lo, double hi);

}  // namespace fm::quad
