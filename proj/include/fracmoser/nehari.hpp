#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <string>
#include <vector>

#include "fracmoser/errors.hpp"

namespace fm {

enum class MassKind { lumped, consistent };

/// Discrete Dirichlet form of (-Delta)^{n/2} on Omega with P1 elements and
/// exterior zero extension: dim = 2 is the classical -Delta on (0,1)^2
/// (5-point stiffness), dim = 1 the restricted half-Laplacian on (0,1) whose
/// Gagliardo form yields a dense Toeplitz matrix.
struct DiscreteSpace {
  int dim = 0;
  double h = 0.0;
  int ndof = 0;
  std::string domain;
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd lumped_mass;       // nodal quadrature weights
  Eigen::SparseMatrix<double> M;     // mass matrix (diag when lumped)
  bool lumped = true;

  Eigen::VectorXd solve_A(const Eigen::VectorXd& rhs) const;
  double a_norm2(const Eigen::VectorXd& v) const { return v.dot(A * v); }

  std::shared_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> llt;
};

/// Exact Toeplitz entry of the 1D half-Laplacian P1 stiffness at node
/// distance d (h-independent; derived from the sin^4 spectral identity).
double stiffness_entry_1d(int d);

DiscreteSpace assemble_space(int dim, double h, MassKind mass = MassKind::lumped);

namespace kernels {
/// 1D stiffness column a_d for d = 0..count-1 (OpenMP + serial reference).
std::vector<double> stiffness_column_1d(int count);
std::vector<double> stiffness_column_1d_serial(int count);
}  // namespace kernels

struct Eigenpair {
  double lambda = 0.0;
  Eigen::VectorXd vec;
  int iterations = 0;
};

/// Smallest generalized eigenvalue of A u = lambda M u by shifted inverse
/// power iteration; tol applies to the Rayleigh quotient.
Eigenpair lambda1(const DiscreteSpace& space, double shift = 0.0,
                  double tol = 1e-10, int max_iter = 10000);

struct ProblemParams {
  double lambda = 0.0;  // in (0, lambda_1)
  double b = 1.0;       // > 0
};

/// J(u) = 1/2 u'Au - sum w G(u), G(t) = (lambda/2b)(e^{bt^2}-1).
double J_functional(const DiscreteSpace&, const ProblemParams&,
                    const Eigen::VectorXd& u);
/// F(u) = DJ(u)(u) = u'Au - sum w g(u) u, g(t) = lambda t e^{bt^2}.
double F_functional(const DiscreteSpace&, const ProblemParams&,
                    const Eigen::VectorXd& u);
/// I(u) = J(u) - F(u)/2 = (lambda/2) sum w ((u^2-1/b)e^{bu^2}+1/b) > 0.
double I_functional(const DiscreteSpace&, const ProblemParams&,
                    const Eigen::VectorXd& u);

/// Unique t > 0 with F(t v) = 0 for an A-unit vector v (bracketing-doubling
/// then bisection). Saturation beyond exponent 700 raises numeric_error.
double nehari_project(const DiscreteSpace&, const ProblemParams&,
                      const Eigen::VectorXd& v);

struct NehariResult {
  Eigen::VectorXd u;
  double J_val = 0.0;
  double F_val = 0.0;
  double I_val = 0.0;
  std::vector<double> t_history;   // projection scale per accepted step
  std::vector<double> J_history;   // J at each accepted step
  std::vector<double> F_residuals; // |F(t_v v)| per accepted projection
  double dj_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double energy_level = 0.0;  // s^2/2 at the computed minimizer
};

/// Constrained minimization of J on the set {F = 0}: A-preconditioned
/// gradient descent through the projection t_v with Armijo backtracking.
NehariResult minimize_on_S(const DiscreteSpace&, const ProblemParams&,
                           const Eigen::VectorXd& seed, int max_iter = 10000);

/// ||A u - M g(u)||_2 / ||M g(u)||_2; NaN marks the degenerate u = 0 input.
double weak_residual(const DiscreteSpace&, const ProblemParams&,
                     const Eigen::VectorXd& u);

}  // namespace fm
