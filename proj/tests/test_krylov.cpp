#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "asphdg/assembly.hpp"
#include "asphdg/condense.hpp"
#include "asphdg/krylov.hpp"
#include "asphdg/mesh.hpp"
#include "asphdg/smoother.hpp"

using namespace asphdg;

namespace {

LinearOperator diagonal(const Eigen::VectorXd& d) {
  return dense_operator(Eigen::MatrixXd(d.asDiagonal()));
}

}  // namespace

TEST_CASE("identity system converges in one step") {
  const Eigen::VectorXd rhs = Eigen::VectorXd::LinSpaced(5, 1.0, 5.0);
  SolveReport rep;
  const Eigen::VectorXd x = pcg(identity_operator(5), identity_operator(5), rhs, rep);
  CHECK(rep.converged);
  CHECK(rep.iterations == 1);
  CHECK((x - rhs).norm() < 1e-14);
  CHECK(rep.kappa == doctest::Approx(1.0));
  CHECK(rep.residual_history.size() == 2);
}

TEST_CASE("two distinct eigenvalues need at most two steps") {
  SolveReport rep;
  const Eigen::VectorXd x = pcg(diagonal(Eigen::Vector2d(1.0, 4.0)), identity_operator(2), Eigen::Vector2d(1.0, 1.0), rep);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 2);
  CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x(1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rep.kappa == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("zero right-hand side returns immediately") {
  SolveReport rep;
  const Eigen::VectorXd x = pcg(identity_operator(3), identity_operator(3), Eigen::VectorXd::Zero(3), rep);
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
  CHECK(x.norm() == 0.0);
}

TEST_CASE("the exact inverse as preconditioner") {
  const Mesh m = build_structured_mesh(2, 3);
  const CondensedSystem s = condense(assemble_scalar_rd(m, 2, TauField{1.0, 1.0}));
  const Eigen::MatrixXd a(s.schur);
  const LinearOperator b = dense_operator(a.inverse());
  SolveReport rep;
  pcg(matrix_operator(s.schur), b, s.lifted_rhs, rep);
  CHECK(rep.iterations == 1);
  CHECK(estimate_condition(matrix_operator(s.schur), b, 1, true) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("iteration count respects the Chebyshev bound") {
  const int n = 200;
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = std::pow(1e3, static_cast<double>(i) / (n - 1));
  const double kappa = 1e3;
  const double tol = 1e-8;
  SolveReport rep;
  PcgOptions opt;
  opt.tol = tol;
  pcg(diagonal(d), identity_operator(n), Eigen::VectorXd::Ones(n), rep, opt);
  REQUIRE(rep.converged);
  // ||r_j|| <= sqrt(kappa) ||e_j||_A / ... gives j <= ln(2 sqrt(kappa) / tol) / ln((sk+1)/(sk-1))
  const double sk = std::sqrt(kappa);
  const int bound = static_cast<int>(std::ceil(std::log(2 * sk / tol) / std::log((sk + 1) / (sk - 1))));
  CHECK(rep.iterations <= bound);
  CHECK(rep.kappa <= kappa * (1 + 1e-8));
  CHECK(rep.kappa > 0.9 * kappa);
}

TEST_CASE("Ritz estimate against the dense spectrum") {
  const Mesh m = build_structured_mesh(2, 6);
  const ProblemMatrix p = assemble_scalar_rd(m, 1, TauField{1.0, 1.0});
  const CondensedSystem s = condense(p);
  const LinearOperator a = matrix_operator(s.schur);
  const LinearOperator b = jacobi(s.schur);
  const double dense = estimate_condition(a, b, 1, true);
  const double ritz = estimate_condition(a, b, 3, false, 42);
  CHECK(ritz <= dense * (1 + 1e-8));
  CHECK(ritz > 0.85 * dense);
  CHECK(estimate_condition(a, b, 3, false, 42) == ritz);
  const Eigen::VectorXd ev = dense_preconditioned_spectrum(Eigen::MatrixXd(s.schur), b.materialize());
  CHECK(ev(0) > 0.0);
  CHECK(ev(ev.size() - 1) / ev(0) == doctest::Approx(dense));
}

TEST_CASE("maxit stops without convergence") {
  const int n = 50;
  const Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(n, 1.0, 100.0);
  SolveReport rep;
  PcgOptions opt;
  opt.maxit = 3;
  pcg(diagonal(d), identity_operator(n), Eigen::VectorXd::Ones(n), rep, opt);
  CHECK_FALSE(rep.converged);
  CHECK(rep.iterations == 3);
  CHECK(rep.residual_history.size() == 4);
}

TEST_CASE("invalid input") {
  SolveReport rep;
  CHECK_THROWS_AS(pcg(identity_operator(3), identity_operator(4), Eigen::VectorXd::Ones(3), rep),
                  std::invalid_argument);
  CHECK_THROWS_AS(pcg(diagonal(Eigen::Vector2d(1.0, -1.0)), identity_operator(2), Eigen::Vector2d(0.0, 1.0), rep),
                  std::runtime_error);
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(2);
  bad(0) = std::nan("");
  CHECK_THROWS_AS(pcg(identity_operator(2), identity_operator(2), bad, rep), std::runtime_error);
  CHECK_THROWS_AS(estimate_condition(identity_operator(2001), identity_operator(2001), 1, true),
                  std::invalid_argument);
}
