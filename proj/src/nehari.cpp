#include "fracmoser/nehari.hpp"

#include <cmath>
#include <limits>

#include "fracmoser/parallel.hpp"

namespace fm {

namespace {
constexpr double kExpCap = 700.0;

void check_exponent(double b, const Eigen::VectorXd& u) {
  for (int i = 0; i < u.size(); ++i) {
    if (b * u[i] * u[i] > kExpCap)
      throw numeric_error("nehari: exp(b u^2) overflow at node " +
                          std::to_string(i));
  }
}
}  // namespace

Eigen::VectorXd DiscreteSpace::solve_A(const Eigen::VectorXd& rhs) const {
  return llt->solve(rhs);
}

double stiffness_entry_1d(int d) {
  auto f = [](double t) { return t <= 0.0 ? 0.0 : t * t * std::log(t); };
  const double dd = d;
  return (3.0 * f(dd) - 2.0 * f(dd + 1.0) - 2.0 * f(std::abs(dd - 1.0)) +
          0.5 * f(dd + 2.0) + 0.5 * f(std::abs(dd - 2.0))) /
         M_PI;
}

namespace kernels {

std::vector<double> stiffness_column_1d(int count) {
  std::vector<double> col(count);
  parallel_for(count, [&](std::ptrdiff_t d) {
    col[d] = stiffness_entry_1d(static_cast<int>(d));
  });
  return col;
}

std::vector<double> stiffness_column_1d_serial(int count) {
  std::vector<double> col(count);
  for (int d = 0; d < count; ++d) col[d] = stiffness_entry_1d(d);
  return col;
}

}  // namespace kernels

DiscreteSpace assemble_space(int dim, double h, MassKind mass) {
  if (dim != 1 && dim != 2)
    throw std::domain_error("assemble_space: dim must be 1 or 2");
  const double inv = 1.0 / h;
  const int nh = static_cast<int>(std::lround(inv));
  if (std::abs(inv - nh) > 1e-9 || nh < 2)
    throw std::domain_error("assemble_space: h must divide the domain");

  DiscreteSpace sp;
  sp.dim = dim;
  sp.h = h;
  sp.lumped = mass == MassKind::lumped;

  using T = Eigen::Triplet<double>;
  std::vector<T> at, mt;

  if (dim == 2) {
    sp.domain = "(0,1)^2";
    const int N = nh - 1;
    sp.ndof = N * N;
    auto idx = [N](int i, int j) { return i * N + j; };
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        at.emplace_back(idx(i, j), idx(i, j), 4.0);
        if (i > 0) at.emplace_back(idx(i, j), idx(i - 1, j), -1.0);
        if (i < N - 1) at.emplace_back(idx(i, j), idx(i + 1, j), -1.0);
        if (j > 0) at.emplace_back(idx(i, j), idx(i, j - 1), -1.0);
        if (j < N - 1) at.emplace_back(idx(i, j), idx(i, j + 1), -1.0);
      }
    }
    sp.lumped_mass = Eigen::VectorXd::Constant(sp.ndof, h * h);
    if (sp.lumped) {
      for (int i = 0; i < sp.ndof; ++i) mt.emplace_back(i, i, h * h);
    } else {
      // P1 consistent mass on the right-triangle mesh (diagonal (i,j)-(i+1,j+1))
      const double d0 = h * h / 2.0, d1 = h * h / 12.0;
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          mt.emplace_back(idx(i, j), idx(i, j), d0);
          if (i > 0) mt.emplace_back(idx(i, j), idx(i - 1, j), d1);
          if (i < N - 1) mt.emplace_back(idx(i, j), idx(i + 1, j), d1);
          if (j > 0) mt.emplace_back(idx(i, j), idx(i, j - 1), d1);
          if (j < N - 1) mt.emplace_back(idx(i, j), idx(i, j + 1), d1);
          if (i > 0 && j > 0) mt.emplace_back(idx(i, j), idx(i - 1, j - 1), d1);
          if (i < N - 1 && j < N - 1)
            mt.emplace_back(idx(i, j), idx(i + 1, j + 1), d1);
        }
      }
    }
  } else {
    sp.domain = "(0,1)";
    const int N = nh - 1;
    sp.ndof = N;
    const std::vector<double> col = kernels::stiffness_column_1d(N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        at.emplace_back(i, j, col[std::abs(i - j)]);
    sp.lumped_mass = Eigen::VectorXd::Constant(N, h);
    if (sp.lumped) {
      for (int i = 0; i < N; ++i) mt.emplace_back(i, i, h);
    } else {
      for (int i = 0; i < N; ++i) {
        mt.emplace_back(i, i, 2.0 * h / 3.0);
        if (i > 0) mt.emplace_back(i, i - 1, h / 6.0);
        if (i < N - 1) mt.emplace_back(i, i + 1, h / 6.0);
      }
    }
  }

  sp.A.resize(sp.ndof, sp.ndof);
  sp.A.setFromTriplets(at.begin(), at.end());
  sp.M.resize(sp.ndof, sp.ndof);
  sp.M.setFromTriplets(mt.begin(), mt.end());

  sp.llt = std::make_shared<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
  sp.llt->compute(sp.A);
  if (sp.llt->info() != Eigen::Success)
    throw numeric_error("assemble_space: Cholesky factorization failed");
  return sp;
}

Eigenpair lambda1(const DiscreteSpace& space, double shift, double tol,
                  int max_iter) {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(space.ndof);
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> shifted;
  const bool use_shift = shift != 0.0;
  if (use_shift) {
    Eigen::SparseMatrix<double> As = space.A - shift * space.M;
    shifted.compute(As);
    if (shifted.info() != Eigen::Success)
      throw numeric_error("lambda1: shifted factorization failed");
  }
  double lam = 0.0, lam_prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXd rhs = space.M * x;
    Eigen::VectorXd y = use_shift ? shifted.solve(rhs) : space.solve_A(rhs);
    const double mn = std::sqrt(y.dot(space.M * y));
    if (!(mn > 0.0)) throw numeric_error("lambda1: iteration collapsed");
    x = y / mn;
    lam = x.dot(space.A * x) / x.dot(space.M * x);
    if (std::abs(lam - lam_prev) <= tol * std::abs(lam))
      return {lam, x, it};
    lam_prev = lam;
  }
  throw numeric_error("lambda1: no convergence within iteration budget");
}

double J_functional(const DiscreteSpace& sp, const ProblemParams& pp,
                    const Eigen::VectorXd& u) {
  check_exponent(pp.b, u);
  double nl = 0.0;
  for (int i = 0; i < u.size(); ++i)
    nl += sp.lumped_mass[i] * std::expm1(pp.b * u[i] * u[i]);
  return 0.5 * u.dot(sp.A * u) - pp.lambda / (2.0 * pp.b) * nl;
}

double F_functional(const DiscreteSpace& sp, const ProblemParams& pp,
                    const Eigen::VectorXd& u) {
  check_exponent(pp.b, u);
  double nl = 0.0;
  for (int i = 0; i < u.size(); ++i)
    nl += sp.lumped_mass[i] * u[i] * u[i] * std::exp(pp.b * u[i] * u[i]);
  return u.dot(sp.A * u) - pp.lambda * nl;
}

double I_functional(const DiscreteSpace& sp, const ProblemParams& pp,
                    const Eigen::VectorXd& u) {
  check_exponent(pp.b, u);
  double nl = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double q = pp.b * u[i] * u[i];
    // (u^2 - 1/b) e^{bu^2} + 1/b = u^2 e^{bu^2} - expm1(bu^2)/b, stable near 0
    nl += sp.lumped_mass[i] *
          (u[i] * u[i] * std::exp(q) - std::expm1(q) / pp.b);
  }
  return 0.5 * pp.lambda * nl;
}

double nehari_project(const DiscreteSpace& sp, const ProblemParams& pp,
                      const Eigen::VectorXd& v) {
  if (!(pp.lambda > 0.0) || !(pp.b > 0.0))
    throw std::domain_error("nehari: requires lambda > 0 and b > 0");
  const double vAv = v.dot(sp.A * v);
  if (std::abs(vAv - 1.0) > 1e-6)
    throw std::domain_error("nehari_project: v must be A-normalized");
  const double vmax2 = v.cwiseAbs().maxCoeff() * v.cwiseAbs().maxCoeff();

  // phi(t) = lambda sum w v^2 e^{b t^2 v^2} - 1, strictly increasing in t
  auto phi = [&](double t) {
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i)
      s += sp.lumped_mass[i] * v[i] * v[i] * std::exp(pp.b * t * t * v[i] * v[i]);
    return pp.lambda * s - 1.0;
  };

  if (phi(0.0) >= 0.0)
    throw std::domain_error("nehari_project: lambda not below lambda_1");
  double lo = 0.0, hi = 1.0;
  while (phi(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (pp.b * hi * hi * vmax2 > kExpCap)
      throw numeric_error(
          "nehari_project: no sign change before the overflow horizon");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

NehariResult minimize_on_S(const DiscreteSpace& sp, const ProblemParams& pp,
                           const Eigen::VectorXd& seed, int max_iter) {
  if (seed.size() != sp.ndof || seed.norm() == 0.0)
    throw std::domain_error("minimize_on_S: seed must be a nonzero vector");

  NehariResult res;
  Eigen::VectorXd v = seed / std::sqrt(seed.dot(sp.A * seed));
  double t = nehari_project(sp, pp, v);
  Eigen::VectorXd u = t * v;
  double Jv = J_functional(sp, pp, u);
  res.t_history.push_back(t);
  res.J_history.push_back(Jv);
  res.F_residuals.push_back(std::abs(F_functional(sp, pp, u)));

  auto g_vec = [&](const Eigen::VectorXd& w) {
    Eigen::VectorXd out(w.size());
    for (int i = 0; i < w.size(); ++i)
      out[i] = sp.lumped_mass[i] * pp.lambda * w[i] * std::exp(pp.b * w[i] * w[i]);
    return out;
  };
  auto residual_norm = [&](const Eigen::VectorXd& w, Eigen::VectorXd& r_out) {
    r_out = sp.A * w - g_vec(w);
    return std::sqrt(std::max(r_out.dot(sp.solve_A(r_out)), 0.0));
  };
  auto accept = [&](Eigen::VectorXd&& vn, double tn, const Eigen::VectorXd& un,
                    double Jn) {
    v = std::move(vn);
    t = tn;
    u = un;
    Jv = Jn;
    res.t_history.push_back(t);
    res.J_history.push_back(Jv);
    res.F_residuals.push_back(std::abs(F_functional(sp, pp, u)));
  };

  int it = 0;
  double res_norm = 0.0;
  bool converged = false;
  Eigen::VectorXd r;
  for (it = 0; it < max_iter; ++it) {
    res_norm = residual_norm(u, r);
    if (res_norm <= 1e-8) {
      converged = true;
      break;
    }
    bool accepted = false;

    if (res_norm <= 1e-4 * std::max(1.0, t)) {
      // Newton polish on A u = w g(u): quadratic, and the objective decrement
      // still dwarfs the floating-point resolution of J at this range
      Eigen::SparseMatrix<double> Jac = sp.A;
      Eigen::VectorXd gp(sp.ndof);
      for (int i = 0; i < sp.ndof; ++i) {
        const double q = pp.b * u[i] * u[i];
        gp[i] = sp.lumped_mass[i] * pp.lambda * (1.0 + 2.0 * q) * std::exp(q);
      }
      for (int i = 0; i < sp.ndof; ++i) Jac.coeffRef(i, i) -= gp[i];
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(Jac);
      if (lu.info() == Eigen::Success) {
        const Eigen::VectorXd un_raw = u - lu.solve(r);
        Eigen::VectorXd vn = un_raw / std::sqrt(un_raw.dot(sp.A * un_raw));
        try {
          const double tn = nehari_project(sp, pp, vn);
          const Eigen::VectorXd un = tn * vn;
          const double Jn = J_functional(sp, pp, un);
          Eigen::VectorXd rn;
          const double resn = residual_norm(un, rn);
          if (resn < 0.5 * res_norm && Jn <= Jv) {
            accept(std::move(vn), tn, un, Jn);
            accepted = true;
          }
        } catch (const numeric_error&) {
        }
      }
    }

    const Eigen::VectorXd d = sp.solve_A(r);
    double eta = 1.0;
    while (!accepted && eta > 1e-14) {
      Eigen::VectorXd vn = v - eta * d;
      vn /= std::sqrt(vn.dot(sp.A * vn));
      double tn;
      try {
        tn = nehari_project(sp, pp, vn);
      } catch (const numeric_error&) {
        eta *= 0.5;  // saturated candidate: halve the step
        continue;
      }
      const Eigen::VectorXd un = tn * vn;
      const double Jn = J_functional(sp, pp, un);
      if (Jn <= Jv - 1e-4 * eta * res_norm * res_norm) {
        accept(std::move(vn), tn, un, Jn);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;  // descent stall: report the last residual
  }

  res.u = u;
  res.J_val = Jv;
  res.F_val = F_functional(sp, pp, u);
  res.I_val = I_functional(sp, pp, u);
  res.dj_residual = res_norm;
  res.iterations = it;
  res.converged = converged;
  res.energy_level = Jv;
  return res;
}

double weak_residual(const DiscreteSpace& sp, const ProblemParams& pp,
                     const Eigen::VectorXd& u) {
  Eigen::VectorXd ghat(u.size());
  for (int i = 0; i < u.size(); ++i)
    ghat[i] = pp.lambda * u[i] * std::exp(pp.b * u[i] * u[i]);
  const Eigen::VectorXd mg = sp.M * ghat;
  const double den = mg.norm();
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (sp.A * u - mg).norm() / den;
}

}  // namespace fm
