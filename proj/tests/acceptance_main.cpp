// Acceptance suite: runs every shipped criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code = number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fracmoser/fraclap.hpp"
#include "fracmoser/gridfield.hpp"
#include "fracmoser/moser_family.hpp"
#include "fracmoser/mt_functionals.hpp"
#include "fracmoser/nehari.hpp"

using namespace fm;

namespace {

struct Tally {
  int failures = 0;
  int index = 0;

  void run(const std::string& name, const std::function<bool(std::string&)>& body) {
    ++index;
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] %2d. %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", index,
                name.c_str(), secs, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// shared Riesz rows for criteria 4-5 (norm columns are weight-independent)
std::map<int, SweepRow> riesz_rows_22;

const SweepRow& row22(int k) {
  auto it = riesz_rows_22.find(k);
  if (it == riesz_rows_22.end()) {
    MoserParams params(Dim(2), ExponentPair(2), std::exp(-k));
    it = riesz_rows_22.emplace(k, sharpness_row(params, WeightFn::power(2.0)))
             .first;
  }
  return it->second;
}

double reweight(const SweepRow& row, const WeightFn& w) {
  MoserParams params(Dim(2), ExponentPair(2), std::exp(-row.k));
  const double S = row.lp_norm_p + row.seminorm_p;
  const double plateau = kappa_np(params.n, params.p) *
                         std::pow(params.log_inv_eps(), 0.5);
  return row.I_eps * w(plateau / std::sqrt(S));
}

}  // namespace

int main() {
  Tally tally;

  tally.run("constant identities", [](std::string& detail) {
    for (int n = 1; n <= 8; ++n) {
      for (double p : {1.25, 1.5, 2.0, 3.0, 5.0}) {
        ExponentPair e(p);
        const double v = alpha_np(Dim(n), e) *
                         std::pow(kappa_np(Dim(n), e), e.p_conj);
        if (!rel_close(v, n, 1e-11)) {
          detail = "plateau identity failed at n=" + std::to_string(n);
          return false;
        }
      }
    }
    for (int n : {2, 4, 6, 8}) {
      if (!rel_close(alpha_np(Dim(n), ExponentPair(2)),
                     alpha_classical(n / 2, Dim(n)), 1e-12)) {
        detail = "integer-order match failed at n=" + std::to_string(n);
        return false;
      }
    }
    if (!rel_close(alpha_np(Dim(2), ExponentPair(2)), 4.0 * M_PI, 1e-12)) {
      detail = "alpha(2,2) != 4 pi";
      return false;
    }
    return true;
  });

  tally.run("log-kernel oracle", [](std::string& detail) {
    for (auto [n, s] : {std::pair{1, 0.25}, {2, 0.25}, {2, 0.5}, {3, 0.75}}) {
      RadialProfile g = log_kernel_profile(Dim(n));
      const double c = log_kernel_constant(Dim(n), s);
      for (double r : {0.5, 1.0, 2.0}) {
        const double got = frac_lap_pointwise(g, OperatorSpec(s), r, 1e-8);
        const double want = c * std::pow(r, -2.0 * s);
        if (!rel_close(got, want, 1e-6)) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "n=%d sigma=%.2f r=%.1f: %.3e vs %.3e",
                        n, s, r, got, want);
          detail = buf;
          return false;
        }
      }
    }
    return true;
  });

  tally.run("discretization cross-check", [](std::string& detail) {
    MoserParams params(Dim(2), ExponentPair(2), std::exp(-3));
    RadialProfile u = u_eps(params);
    const double radial = seminorm(u, OperatorSpec(0.5), 2.0, 3e-5);
    // 2048 per axis: the plateau at eps = e^{-3} needs ~6 cells per radius
    const GridField f = GridField::sample_radial(u, 2048, 8.0);
    const GridField w = spectral_apply(f, SymbolSpec::riesz(0.5));
    const double grid = grid_lp_norm(w, 2.0);
    char buf[96];
    std::snprintf(buf, sizeof buf, "radial=%.6f grid=%.6f rel=%.2e", radial,
                  grid, std::abs(grid - radial) / radial);
    detail = buf;
    return std::abs(grid - radial) <= 1e-3 * radial;
  });

  tally.run("seminorm trend of the normalized family", [](std::string& detail) {
    std::vector<double> D;
    for (int k = 2; k <= 8; ++k) {
      const SweepRow& row = row22(k);
      if (row.seminorm_p > 1.5) {
        detail = "seminorm^2 > 1.5 at k=" + std::to_string(k);
        return false;
      }
      D.push_back((row.seminorm_p - 1.0) * k);
    }
    const double mx = *std::max_element(D.begin(), D.end());
    const double med = median(D);
    char buf[96];
    std::snprintf(buf, sizeof buf, "max D=%.4f median D=%.4f", mx, med);
    detail = buf;
    return mx <= 2.0 * med;
  });

  tally.run("divergence of the weighted functional", [](std::string& detail) {
    const std::vector<WeightFn> weights = {
        WeightFn::power(0.5), WeightFn::power(2.0), WeightFn::logweight()};
    for (int k = 3; k <= 7; ++k) {
      if (row22(k).I_eps < 1e-2) {
        detail = "I_eps < 1e-2 at k=" + std::to_string(k);
        return false;
      }
      if (row22(k).I_eps > ball_volume(Dim(2)) + 1e-12) {
        detail = "I_eps above |B_1| at k=" + std::to_string(k);
        return false;
      }
    }
    for (const WeightFn& w : weights) {
      double prev = -1.0;
      for (int k = 3; k <= 7; ++k) {
        const double cur = reweight(row22(k), w);
        if (!(cur > prev)) {
          detail = "weighted not increasing for " + w.name() + " at k=" +
                   std::to_string(k);
          return false;
        }
        prev = cur;
      }
    }
    return true;
  });

  tally.run("shifted-operator sweep and symbol remainder", [](std::string& detail) {
    const auto rows = bessel_sharpness_sweep(Dim(2), ExponentPair(2), 1.0, 2, 7,
                                             WeightFn::power(2.0), true);
    std::vector<double> D;
    double prev = -1.0;
    for (const SweepRow& row : rows) {
      D.push_back((row.bessel_norm_p - 1.0) * row.k);
      if (!(row.weighted > prev)) {
        detail = "phi-weighted column not increasing at k=" +
                 std::to_string(row.k);
        return false;
      }
      prev = row.weighted;
    }
    const double mx = *std::max_element(D.begin(), D.end());
    if (mx > 2.0 * median(D)) {
      detail = "bessel trend unbounded: max D > 2 median";
      return false;
    }
    // symbol-expansion remainder: sup |E|(1+t)^{2m-2s} on [0,1e3], stable
    // under grid doubling
    for (auto [s, m] : {std::pair{0.5, 1}, {1.5, 2}}) {
      const auto c = taylor_coeffs(s, 1.0, m);
      auto sup_on_grid = [&](int nodes) {
        double sup = 0.0;
        for (int i = 0; i <= nodes; ++i) {
          const double t = 1e3 * i / nodes;
          double partial = 0.0;
          for (int j = 0; j < m; ++j)
            partial += c[j] * std::pow(t, 2.0 * s - 2.0 * j);
          const double E = std::pow(1.0 + t * t, s) - partial;
          sup = std::max(sup, std::abs(E) * std::pow(1.0 + t, 2.0 * m - 2.0 * s));
        }
        return sup;
      };
      const double s1 = sup_on_grid(1000), s2 = sup_on_grid(2000);
      if (!std::isfinite(s1) || std::abs(s2 - s1) > 0.05 * s1) {
        detail = "remainder bound unstable under grid doubling";
        return false;
      }
    }
    return true;
  });

  tally.run("bessel potential mass", [](std::string& detail) {
    for (auto [n, sigma] : {std::pair{1, 1.0}, {2, 1.0}, {2, 1.5}}) {
      const double mass = bessel_potential_mass(Dim(n), sigma, 1e-8);
      if (std::abs(mass - 1.0) > 1e-6) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "n=%d sigma=%.1f: mass=%.8f", n, sigma,
                      mass);
        detail = buf;
        return false;
      }
    }
    return true;
  });

  tally.run("classical solve on the unit square", [](std::string& detail) {
    DiscreteSpace sp = assemble_space(2, 1.0 / 64);
    Eigenpair e = lambda1(sp);
    const double cont = 2.0 * M_PI * M_PI;
    if (std::abs(e.lambda - cont) > 0.01 * cont) {
      detail = "lambda1 off by more than 1%";
      return false;
    }
    ProblemParams pp{0.5 * e.lambda, 1.0};
    NehariResult res = minimize_on_S(sp, pp, e.vec);
    const double wr = weak_residual(sp, pp, res.u);
    const double rel_F = std::abs(res.F_val) / res.u.dot(sp.A * res.u);
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "lambda1=%.4f J=%.4f weak_res=%.2e relF=%.2e iters=%d",
                  e.lambda, res.J_val, wr, rel_F, res.iterations);
    detail = buf;
    return res.converged && wr <= 1e-6 && rel_F <= 1e-8 &&
           res.J_val < 2.0 * M_PI;
  });

  tally.run("fractional solve on the unit interval", [](std::string& detail) {
    DiscreteSpace sp = assemble_space(1, 1.0 / 256);
    DiscreteSpace sp2 = assemble_space(1, 1.0 / 512);
    Eigenpair e = lambda1(sp);
    const double l2 = lambda1(sp2).lambda;
    if (e.lambda < M_PI / 4.0) {
      detail = "lambda1 below the explicit lower bound";
      return false;
    }
    if (std::abs(l2 - e.lambda) > 0.05 * e.lambda) {
      detail = "mesh-Cauchy violation";
      return false;
    }
    ProblemParams pp{0.5 * e.lambda, 1.0};
    NehariResult res = minimize_on_S(sp, pp, e.vec);
    const double wr = weak_residual(sp, pp, res.u);
    char buf[128];
    std::snprintf(buf, sizeof buf, "lambda1=%.6f (h/2: %.6f) J=%.6f weak_res=%.2e",
                  e.lambda, l2, res.J_val, wr);
    detail = buf;
    return res.converged && wr <= 1e-6 && res.J_val < M_PI / 2.0;
  });

  tally.run("projection mechanics", [](std::string& detail) {
    // scalar surrogate: one node, A = M = [1], lambda = 1/2, b = 1
    DiscreteSpace mock;
    mock.dim = 1;
    mock.h = 1.0;
    mock.ndof = 1;
    mock.A.resize(1, 1);
    mock.A.insert(0, 0) = 1.0;
    mock.A.makeCompressed();
    mock.lumped_mass = Eigen::VectorXd::Ones(1);
    mock.M = mock.A;
    mock.llt =
        std::make_shared<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
    mock.llt->compute(mock.A);
    const double t = nehari_project(mock, {0.5, 1.0}, Eigen::VectorXd::Ones(1));
    if (std::abs(t - std::sqrt(std::log(2.0))) > 1e-10) {
      detail = "scalar surrogate root off";
      return false;
    }
    // projected iterates stay on the constraint set and descend
    DiscreteSpace sp = assemble_space(2, 1.0 / 32);
    Eigenpair e = lambda1(sp);
    NehariResult res = minimize_on_S(sp, {0.5 * e.lambda, 1.0}, e.vec);
    for (size_t i = 0; i < res.F_residuals.size(); ++i) {
      const double t2 = res.t_history[i] * res.t_history[i];
      if (res.F_residuals[i] > 1e-10 * t2) {
        detail = "projected iterate off the constraint set";
        return false;
      }
    }
    for (size_t i = 1; i < res.J_history.size(); ++i) {
      if (res.J_history[i] > res.J_history[i - 1]) {
        detail = "objective increased along an accepted step";
        return false;
      }
    }
    return true;
  });

  tally.run("one-dimensional witness search", [](std::string& detail) {
    IsConditionResult res = is_condition_search(1e30, 8);
    if (res.history.size() != 6) {
      detail = "expected six sweep records";
      return false;
    }
    for (size_t i = 1; i < res.history.size(); ++i) {
      if (!(res.history[i].second > res.history[i - 1].second)) {
        detail = "M not strictly increasing at k=" +
                 std::to_string(res.history[i].first);
        return false;
      }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "M(k=8)=%.3f sup_t=%.4f vs threshold %.1f (report only)",
                  res.M_value, res.sup_t, res.threshold);
    detail = buf;
    return true;
  });

  std::printf("%d of %d criteria passed\n", tally.index - tally.failures,
              tally.index);
  return tally.failures;
}
