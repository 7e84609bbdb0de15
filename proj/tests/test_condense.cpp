#include <doctest.h>

#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "asphdg/assembly.hpp"
#include "asphdg/condense.hpp"
#include "asphdg/mesh.hpp"
#include "asphdg/sparse.hpp"

using namespace asphdg;

namespace {

Eigen::MatrixXd dense_schur(const ProblemMatrix& p) {
  const Eigen::MatrixXd a(p.matrix);
  const int nl = p.layout.num_local, ng = p.layout.num_global;
  return a.bottomRightCorner(ng, ng) -
         a.bottomLeftCorner(ng, nl) * a.topLeftCorner(nl, nl).inverse() * a.topRightCorner(nl, ng);
}

std::vector<ProblemMatrix> small_problems(int n, int k) {
  const Mesh m2 = build_structured_mesh(2, n);
  const Mesh m3 = build_structured_mesh(3, n);
  const TauField tau{1.0, 10.0};
  return {assemble_scalar_rd(m2, k, tau), assemble_scalar_rd(m3, k, tau),
          assemble_vector_rd(m2, k, tau), assemble_vector_rd(m2, k, tau, 4.0, VectorVariant::cst),
          assemble_cip_biharmonic(m2, k, tau, 4.0, PlateBoundary::simply_supported),
          assemble_cip_biharmonic(m2, k, tau, 4.0, PlateBoundary::clamped)};
}

}  // namespace

TEST_CASE("Schur complement matches dense elimination on the (2,1) mesh") {
  const Mesh m = build_structured_mesh(2, 1);
  const ProblemMatrix p = assemble_scalar_rd(m, 1, TauField{1.0, 1.0});
  const CondensedSystem s = condense(p);
  const Eigen::MatrixXd oracle = dense_schur(p);
  CHECK((Eigen::MatrixXd(s.schur) - oracle).norm() / oracle.norm() < 1e-12);
}

TEST_CASE("Schur complements are SPD and match dense elimination") {
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= 2; ++k)
      for (const ProblemMatrix& p : small_problems(n, k)) {
        const CondensedSystem s = condense(p);
        const Eigen::MatrixXd oracle = dense_schur(p);
        CHECK((Eigen::MatrixXd(s.schur) - oracle).norm() / oracle.norm() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(oracle, Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
      }
}

TEST_CASE("no local DOFs leaves the global block unchanged") {
  const Mesh m = build_structured_mesh(2, 2);
  // BDM1 has no bubbles and the k=1 tangential facet space is global.
  const ProblemMatrix p = assemble_vector_rd(m, 1, TauField{1.0, 1.0});
  REQUIRE(p.layout.num_local == 0);
  const CondensedSystem s = condense(p);
  CHECK((Eigen::MatrixXd(s.schur) - Eigen::MatrixXd(p.matrix)).norm() == 0.0);
  CHECK((s.lifted_rhs - p.rhs).norm() == 0.0);
}

TEST_CASE("recovered solution solves the full system") {
  const Mesh m = build_structured_mesh(2, 2);
  const ProblemMatrix p = assemble_scalar_rd(m, 2, TauField{1.0, 1.0});
  const CondensedSystem s = condense(p);
  const Eigen::VectorXd u = recover(s, SparseCholesky(s.schur).solve(s.lifted_rhs));
  CHECK((p.matrix * u - p.rhs).norm() / p.rhs.norm() < 1e-9);
  const Eigen::VectorXd direct = Eigen::MatrixXd(p.matrix).llt().solve(p.rhs);
  CHECK((u - direct).norm() / direct.norm() < 1e-9);
}

TEST_CASE("zero right-hand side") {
  const Mesh m = build_structured_mesh(2, 2);
  const ProblemMatrix p = assemble_cip_biharmonic(m, 2, TauField{1.0, 1.0});
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(p.layout.size());
  const CondensedSystem s = condense(p, zero);
  CHECK(s.lifted_rhs.norm() == 0.0);
  CHECK(recover(s, Eigen::VectorXd::Zero(s.num_global)).norm() == 0.0);
  CHECK(eliminate(s, zero).norm() == 0.0);
}

TEST_CASE("energy identity of the lifting") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (const ProblemMatrix& p : small_problems(2, 2)) {
    const CondensedSystem s = condense(p, Eigen::VectorXd::Zero(p.layout.size()));
    for (int r = 0; r < 5; ++r) {
      Eigen::VectorXd g(s.num_global);
      for (int i = 0; i < g.size(); ++i) g(i) = nd(rng);
      const Eigen::VectorXd full = recover(s, g);
      CHECK((full.tail(s.num_global) - g).norm() == 0.0);
      const double lhs = g.dot(s.schur * g);
      const double rhs = full.dot(p.matrix * full);
      CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-11);
    }
  }
}

TEST_CASE("a penalty below the coercivity threshold is reported") {
  const Mesh m = build_structured_mesh(2, 2);
  CHECK_THROWS_AS(condense(assemble_scalar_rd(m, 1, TauField{0.0, 0.0}, 0.5)), std::runtime_error);
}
