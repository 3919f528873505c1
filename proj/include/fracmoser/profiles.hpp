#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "fracmoser/errors.hpp"
#include "fracmoser/specfun.hpp"

namespace fm {

/// Value together with first and second radial derivative.
struct C2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Smooth transition: 0 for x <= 0, 1 for x >= 1, exp(-1/x) bridge between.
double smooth_bump(double x);
C2 smooth_bump_c2(double x);

/// phi: 1 on [0,1], 0 on [2,inf), transition smooth_bump(2-t).
double cutoff_phi(double t);
C2 cutoff_phi_c2(double t);

/// eta: 1 on [0,3/4], 0 on [1,inf), transition smooth_bump(4(1-t)).
double cutoff_eta(double t);
C2 cutoff_eta_c2(double t);

/// Far-field behaviour beyond the last breakpoint, used to close unbounded
/// integrals analytically.
struct Tail {
  enum class Kind { compact, power, log_growth };
  Kind kind = Kind::compact;
  double coeff = 0.0;     // power: g ~ coeff r^{-exponent}; log: g ~ coeff log(1/r) + offset
  double exponent = 0.0;
  double offset = 0.0;

  static Tail compact() { return {}; }
  static Tail power(double coeff, double exponent) {
    return {Kind::power, coeff, exponent, 0.0};
  }
  static Tail log_growth(double coeff, double offset = 0.0) {
    return {Kind::log_growth, coeff, 0.0, offset};
  }
};

/// One closed-form piece on [lo, hi).
struct Segment {
  double lo;
  double hi;
  std::function<C2(double)> eval;
};

/// Piecewise-smooth radial function on [0, inf) with closed-form segment
/// evaluators. Segments must be contiguous from 0; a compact profile ends at
/// support_radius with value 0 beyond, otherwise the last segment extends to
/// infinity and the tail tag describes its asymptotics.
class RadialProfile {
 public:
  RadialProfile(Dim dim, std::vector<Segment> segments, Tail tail,
                bool origin_singular = false);

  double value(double r) const { return eval(r).v; }
  C2 eval(double r) const;

  Dim dim() const { return dim_; }
  const Tail& tail() const { return tail_; }
  bool origin_singular() const { return origin_singular_; }
  /// Interior breakpoints (segment edges excluding 0 and infinity).
  const std::vector<double>& breakpoints() const { return breaks_; }
  /// Radius beyond which the profile vanishes; inf for non-compact profiles.
  double support_radius() const { return support_; }
  /// Last finite segment edge (tail model valid beyond this radius).
  double last_break() const { return breaks_.empty() ? 0.0 : breaks_.back(); }

 private:
  Dim dim_;
  std::vector<Segment> segments_;
  std::vector<double> breaks_;
  Tail tail_;
  bool origin_singular_;
  double support_;
};

/// Profile scaled by a constant factor.
RadialProfile scaled(const RadialProfile& g, double c);

/// Integration region for radial quadrature.
struct Region {
  enum class Kind { ball, annulus, complement, all };
  Kind kind = Kind::all;
  double a = 0.0;
  double b = 0.0;

  static Region ball(double radius) { return {Kind::ball, 0.0, radius}; }
  static Region annulus(double a, double b) { return {Kind::annulus, a, b}; }
  static Region complement(double radius) {
    return {Kind::complement, radius, std::numeric_limits<double>::infinity()};
  }
  static Region all() {
    return {Kind::all, 0.0, std::numeric_limits<double>::infinity()};
  }
  double lo() const { return kind == Kind::ball || kind == Kind::all ? 0.0 : a; }
  double hi() const { return b; }
  bool unbounded() const { return std::isinf(b); }
};

/// L^p norm (|S^{n-1}| int |g|^p r^{n-1} dr)^{1/p} over the region.
/// Adaptive panels split at breakpoints; log singularity at the origin
/// handled by the substitution r = e^{-u}; unbounded regions closed with the
/// tail model. Throws numeric_error when the tail integral diverges.
double lp_norm(const RadialProfile& g, double p, const Region& region, double tol);

}  // namespace fm
