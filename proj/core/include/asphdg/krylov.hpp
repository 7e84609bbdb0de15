#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "asphdg/linear_operator.hpp"

namespace asphdg {

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  /// ||r_j|| / ||r_0|| for j = 0..iterations.
  std::vector<double> residual_history;
  /// sqrt(r_j . B r_j) / sqrt(r_0 . B r_0), recorded but not used for stopping.
  std::vector<double> preconditioned_history;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;
  double setup_ms = 0.0;
  double solve_ms = 0.0;
};

struct PcgOptions {
  double tol = 1e-10;
  int maxit = 2000;
};

/// Preconditioned CG stopped on ||r_j||_2 / ||r_0||_2 <= tol. Extreme Ritz values of
/// B A come from the Lanczos tridiagonal of the CG coefficients. Throws
/// std::runtime_error on non-finite values or a non-positive curvature.
Eigen::VectorXd pcg(const LinearOperator& a, const LinearOperator& b, const Eigen::VectorXd& rhs,
                    SolveReport& report, const PcgOptions& options = {}, const Eigen::VectorXd* x0 = nullptr);

/// Ritz extreme eigenvalues from CG step sizes alpha_j and directions beta_j.
Eigen::VectorXd lanczos_ritz_values(const std::vector<double>& alpha, const std::vector<double>& beta);

/// Condition number of B A. Dense mode (n <= 2000): exact generalized eigensolve.
/// Iterative mode: Ritz values of CG runs on seeded random right-hand sides.
double estimate_condition(const LinearOperator& a, const LinearOperator& b, int probes = 1, bool dense = false,
                          std::uint64_t seed = 1);

/// Eigenvalues of B A for SPD dense A, B (ascending).
Eigen::VectorXd dense_preconditioned_spectrum(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace asphdg
