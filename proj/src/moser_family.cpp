#include "fracmoser/moser_family.hpp"

#include <cmath>
#include <memory>

namespace fm {

double psi_eps_value(double t, double eps) {
  if (t <= 0.5) return 1.0 - cutoff_phi(t / eps);
  return cutoff_eta(t);
}

RadialProfile v_eps(const MoserParams& params) {
  const double eps = params.eps;
  const double k = params.log_inv_eps();
  const double norm = std::pow(k, -1.0 / params.p.p);
  const double plateau = norm * k;  // (log 1/eps)^{1/p'}

  std::vector<Segment> segs;
  segs.push_back({0.0, eps, [plateau](double) { return C2{plateau, 0.0, 0.0}; }});
  // transition: v = norm (k phi(r/eps) + log(1/r)(1 - phi(r/eps)))
  segs.push_back({eps, 2.0 * eps, [norm, k, eps](double r) {
                    const C2 ph = cutoff_phi_c2(r / eps);
                    const double lg = std::log(1.0 / r);
                    const double dph = ph.d1 / eps, d2ph = ph.d2 / (eps * eps);
                    const double v = norm * (k * ph.v + lg * (1.0 - ph.v));
                    const double d1 =
                        norm * (k * dph - (1.0 - ph.v) / r - lg * dph);
                    const double d2 = norm * (k * d2ph + (1.0 - ph.v) / (r * r) +
                                              2.0 * dph / r - lg * d2ph);
                    return C2{v, d1, d2};
                  }});
  auto pure_log = [norm](double r) {
    return C2{norm * std::log(1.0 / r), -norm / r, norm / (r * r)};
  };
  segs.push_back({2.0 * eps, 3.0 * eps, pure_log});
  segs.push_back({3.0 * eps, 0.5, pure_log});
  segs.push_back({0.5, 0.75, pure_log});
  // outer cutoff: v = norm log(1/r) eta(r)
  segs.push_back({0.75, 1.0, [norm](double r) {
                    const C2 et = cutoff_eta_c2(r);
                    const double lg = std::log(1.0 / r);
                    const double v = norm * lg * et.v;
                    const double d1 = norm * (-et.v / r + lg * et.d1);
                    const double d2 = norm * (et.v / (r * r) - 2.0 * et.d1 / r +
                                              lg * et.d2);
                    return C2{v, d1, d2};
                  }});
  return RadialProfile(params.n, std::move(segs), Tail::compact());
}

RadialProfile u_eps(const MoserParams& params) {
  return scaled(v_eps(params), kappa_np(params.n, params.p));
}

MoserDecomposition decompose(const MoserParams& params) {
  const double eps = params.eps;
  const double norm = std::pow(params.log_inv_eps(), -1.0 / params.p.p);

  // f_eps = norm log(r/eps) phi(r/eps), supported in B_{2eps}
  std::vector<Segment> fsegs;
  fsegs.push_back({0.0, eps, [norm, eps](double r) {
                     return C2{norm * std::log(r / eps), norm / r,
                               -norm / (r * r)};
                   }});
  fsegs.push_back({eps, 2.0 * eps, [norm, eps](double r) {
                     const C2 ph = cutoff_phi_c2(r / eps);
                     const double lg = std::log(r / eps);
                     const double dph = ph.d1 / eps, d2ph = ph.d2 / (eps * eps);
                     return C2{norm * lg * ph.v,
                               norm * (ph.v / r + lg * dph),
                               norm * (-ph.v / (r * r) + 2.0 * dph / r +
                                       lg * d2ph)};
                   }});
  RadialProfile f(params.n, std::move(fsegs), Tail::compact(), true);

  // g_eps = norm (eta(r) - 1) log(1/r), zero on B_{3/4}, equals norm log r outside B_1
  std::vector<Segment> gsegs;
  gsegs.push_back({0.0, 0.75, [](double) { return C2{0.0, 0.0, 0.0}; }});
  gsegs.push_back({0.75, 1.0, [norm](double r) {
                     const C2 et = cutoff_eta_c2(r);
                     const double em1 = et.v - 1.0;
                     const double lg = std::log(1.0 / r);
                     return C2{norm * em1 * lg,
                               norm * (et.d1 * lg - em1 / r),
                               norm * (et.d2 * lg - 2.0 * et.d1 / r +
                                       em1 / (r * r))};
                   }});
  gsegs.push_back({1.0, std::numeric_limits<double>::infinity(),
                   [norm](double r) {
                     return C2{norm * std::log(r), norm / r, -norm / (r * r)};
                   }});
  RadialProfile g(params.n, std::move(gsegs), Tail::log_growth(-norm));

  // R_eps = f_eps + g_eps
  RadialProfile v = v_eps(params);
  auto fv = std::make_shared<RadialProfile>(f);
  auto gv = std::make_shared<RadialProfile>(g);
  std::vector<Segment> rsegs;
  auto sum_eval = [fv, gv](double r) {
    const C2 a = fv->eval(r), b = gv->eval(r);
    return C2{a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
  };
  double lo = 0.0;
  for (double b : {eps, 2.0 * eps, 0.75, 1.0}) {
    rsegs.push_back({lo, b, sum_eval});
    lo = b;
  }
  rsegs.push_back({lo, std::numeric_limits<double>::infinity(), sum_eval});
  RadialProfile R(params.n, std::move(rsegs), Tail::log_growth(-norm), true);

  return {std::move(f), std::move(g), std::move(R)};
}

}  // namespace fm
