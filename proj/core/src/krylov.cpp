#include "asphdg/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace asphdg {

Eigen::VectorXd lanczos_ritz_values(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const int m = static_cast<int>(alpha.size());
  if (m == 0) return Eigen::VectorXd();
  Eigen::VectorXd diag(m), off(std::max(m - 1, 0));
  for (int j = 0; j < m; ++j) {
    diag(j) = 1.0 / alpha[j];
    if (j > 0) diag(j) += beta[j - 1] / alpha[j - 1];
    if (j + 1 < m) off(j) = std::sqrt(beta[j]) / alpha[j];
  }
  if (m == 1) return diag;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

Eigen::VectorXd pcg(const LinearOperator& a, const LinearOperator& b, const Eigen::VectorXd& rhs, SolveReport& report,
                    const PcgOptions& options, const Eigen::VectorXd* x0) {
  const int n = static_cast<int>(rhs.size());
  if (a.rows() != n || b.rows() != n) throw std::invalid_argument("pcg: dimension mismatch");
  report = SolveReport{};
  Eigen::VectorXd x = x0 ? *x0 : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = rhs - (x0 ? a.apply(x) : Eigen::VectorXd::Zero(n));
  const double r0 = r.norm();
  if (!std::isfinite(r0)) throw std::runtime_error("pcg: non-finite right-hand side");
  report.residual_history.push_back(1.0);
  if (r0 == 0.0) {
    report.converged = true;
    report.kappa = 1.0;
    report.lambda_min = report.lambda_max = 1.0;
    return x;
  }
  Eigen::VectorXd z = b.apply(r);
  double rz = r.dot(z);
  const double rz0 = rz;
  report.preconditioned_history.push_back(1.0);
  Eigen::VectorXd p = z;
  std::vector<double> alphas, betas;
  for (int it = 0; it < options.maxit; ++it) {
    const Eigen::VectorXd ap = a.apply(p);
    const double pap = p.dot(ap);
    if (!std::isfinite(pap) || !std::isfinite(rz)) throw std::runtime_error("pcg: non-finite values");
    if (pap <= 0.0 || rz <= 0.0) throw std::runtime_error("pcg: operator or preconditioner not positive definite");
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    alphas.push_back(alpha);
    report.iterations = it + 1;
    const double rel = r.norm() / r0;
    report.residual_history.push_back(rel);
    if (rel <= options.tol) {
      report.converged = true;
      report.preconditioned_history.push_back(std::sqrt(std::max(r.dot(b.apply(r)), 0.0) / rz0));
      break;
    }
    z = b.apply(r);
    const double rz_new = r.dot(z);
    report.preconditioned_history.push_back(std::sqrt(std::max(rz_new, 0.0) / rz0));
    const double beta = rz_new / rz;
    betas.push_back(beta);
    rz = rz_new;
    p = z + beta * p;
  }
  const Eigen::VectorXd ritz = lanczos_ritz_values(alphas, betas);
  if (ritz.size() > 0) {
    report.lambda_min = ritz.minCoeff();
    report.lambda_max = ritz.maxCoeff();
    report.kappa = report.lambda_max / report.lambda_min;
  }
  return x;
}

Eigen::VectorXd dense_preconditioned_spectrum(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd bs = 0.5 * (b + b.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(bs);
  if (llt.info() != Eigen::Success) throw std::runtime_error("preconditioner is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  Eigen::MatrixXd m = l.transpose() * a * l;
  m = 0.5 * (m + m.transpose());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

double estimate_condition(const LinearOperator& a, const LinearOperator& b, int probes, bool dense,
                          std::uint64_t seed) {
  const int n = a.rows();
  if (dense) {
    if (n > 2000) throw std::invalid_argument("dense condition estimate limited to 2000 unknowns");
    const Eigen::VectorXd ev = dense_preconditioned_spectrum(a.materialize(), b.materialize());
    return ev.maxCoeff() / ev.minCoeff();
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double lo = 0.0, hi = 0.0;
  for (int p = 0; p < std::max(probes, 1); ++p) {
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = normal(rng);
    SolveReport rep;
    PcgOptions opt;
    opt.tol = 1e-13;
    opt.maxit = std::max(n, 50);
    pcg(a, b, rhs, rep, opt);
    if (p == 0 || rep.lambda_min < lo) lo = rep.lambda_min;
    if (p == 0 || rep.lambda_max > hi) hi = rep.lambda_max;
  }
  return hi / lo;
}

}  // namespace asphdg
