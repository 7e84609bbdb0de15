#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "asphdg/assembly.hpp"
#include "asphdg/condense.hpp"
#include "asphdg/mesh.hpp"
#include "asphdg/sparse.hpp"

using namespace asphdg;

namespace {

double min_eigenvalue(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool touches_boundary(const Mesh& m, int e) {
  for (int i = 0; i <= m.dim; ++i)
    if (m.facets[m.element_facets[e][i]].is_boundary()) return true;
  return false;
}

}  // namespace

TEST_CASE("problem matrices are symmetric and positive definite") {
  const Mesh m2 = build_structured_mesh(2, 2);
  const Mesh m3 = build_structured_mesh(3, 1);
  const TauField tau{1.0, 100.0};
  for (int k = 1; k <= 2; ++k) {
    const ProblemMatrix probs[] = {
        assemble_scalar_rd(m2, k, tau),
        assemble_scalar_rd(m3, k, tau),
        assemble_vector_rd(m2, k, tau),
        assemble_vector_rd(m2, k, tau, 4.0, VectorVariant::cst),
        assemble_vector_rd(m2, k, tau, 4.0, VectorVariant::cst, nullptr, true),
        assemble_cip_biharmonic(m2, k, tau, 4.0, PlateBoundary::simply_supported),
        assemble_cip_biharmonic(m2, k, tau, 4.0, PlateBoundary::clamped),
    };
    for (const ProblemMatrix& p : probs) {
      CAPTURE(k);
      CHECK(p.matrix.rows() == p.layout.size());
      CHECK(p.rhs.size() == p.layout.size());
      CHECK(symmetry_defect(p.matrix) < 1e-12);
      const Eigen::MatrixXd a(p.matrix);
      REQUIRE(a.rows() <= 600);
      CHECK(min_eigenvalue(a) > 0.0);
    }
  }
}

TEST_CASE("constants are in the kernel of the scalar form away from the boundary") {
  const Mesh m = build_structured_mesh(2, 4);
  for (int k = 1; k <= 3; ++k) {
    const ProblemMatrix p = assemble_scalar_rd(m, k, TauField{0.0, 0.0});
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(p.layout.size());
    const Eigen::VectorXd r = p.matrix * ones;
    int checked = 0;
    for (int e = 0; e < m.num_elements(); ++e) {
      if (touches_boundary(m, e)) continue;
      for (int i : p.layout.element_locals[e]) {
        CHECK(std::abs(r(i)) < 1e-12);
        ++checked;
      }
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("the local blocks stay positive definite when alpha doubles") {
  const Mesh m = build_structured_mesh(2, 3);
  for (int k = 1; k <= 3; ++k)
    for (double alpha : {4.0, 8.0, 16.0, 32.0}) {
      CHECK_NOTHROW(condense(assemble_scalar_rd(m, k, TauField{1.0, 1.0}, alpha)));
      CHECK_NOTHROW(condense(assemble_vector_rd(m, k, TauField{1.0, 1.0}, alpha)));
      CHECK_NOTHROW(condense(assemble_cip_biharmonic(m, k, TauField{1.0, 1.0}, alpha)));
    }
}

TEST_CASE("skeleton operator scales like h^-2 in the facet inner product") {
  double prev = 0.0;
  for (int n : {2, 4, 8}) {
    const Mesh m = build_structured_mesh(2, n);
    const ProblemMatrix p = assemble_scalar_rd(m, 1, TauField{1.0, 1.0});
    const CondensedSystem s = condense(p);
    // facet inner product in the condensed ordering
    const SparseMatrix w = facet_inner_product(m, p.spaces[1]);
    Eigen::MatrixXd mw = Eigen::MatrixXd::Zero(s.num_global, s.num_global);
    const Eigen::MatrixXd wd(w);
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j)
        mw(p.layout.map[1][i] - p.layout.num_local, p.layout.map[1][j] - p.layout.num_local) = wd(i, j);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(Eigen::MatrixXd(s.schur), mw,
                                                                  Eigen::EigenvaluesOnly);
    const double rho = eig.eigenvalues().maxCoeff();
    if (prev > 0.0) {
      const double ratio = rho / prev;
      CHECK(ratio > 2.0);
      CHECK(ratio < 8.0);
    }
    prev = rho;
  }
}

TEST_CASE("P1 auxiliary operator") {
  SUBCASE("interior vertex of the (2,2) mesh has the five-point diagonal") {
    const Mesh m = build_structured_mesh(2, 2);
    const SparseMatrix a = assemble_aux_p1(m, TauField{0.0, 0.0});
    REQUIRE(a.rows() == 1);
    CHECK(a.coeff(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
  }
  SUBCASE("zero row sums for rows with interior neighbours") {
    const Mesh m = build_structured_mesh(2, 6);
    const SparseMatrix a = assemble_aux_p1(m, TauField{0.0, 0.0});
    const Eigen::VectorXd r = a * Eigen::VectorXd::Ones(a.cols());
    // interior vertices of the 6x6 grid away from the boundary ring are rows (i,j), 2 <= i,j <= 4
    // in the interior numbering; their row sum sees only interior neighbours.
    int checked = 0;
    for (int j = 1; j <= 3; ++j)
      for (int i = 1; i <= 3; ++i) {
        CHECK(std::abs(r(j * 5 + i)) < 1e-13);
        ++checked;
      }
    CHECK(checked == 9);
  }
  SUBCASE("SPD with a large reaction") {
    const Mesh m = build_structured_mesh(2, 4);
    const Eigen::MatrixXd a(assemble_aux_p1(m, TauField{1e4, 1e4}, true));
    CHECK(symmetry_defect(assemble_aux_p1(m, TauField{1e4, 1e4}, true)) < 1e-15);
    CHECK(min_eigenvalue(a) > 0.0);
  }
  SUBCASE("slip numbering keeps tangential components on the sides") {
    const Mesh m = build_structured_mesh(2, 4);
    const VectorP1Numbering clamp = vector_p1_numbering(m, false);
    const VectorP1Numbering slip = vector_p1_numbering(m, true);
    CHECK(clamp.size == 2 * 9);
    // each side adds its 3 non-corner vertices for the tangential component
    CHECK(slip.size == 2 * 9 + 4 * 3);
    CHECK(assemble_aux_p1(m, TauField{}, true, true).rows() == slip.size);
  }
}

TEST_CASE("facet inner product") {
  SUBCASE("P0 on the (2,1) mesh") {
    const Mesh m = build_structured_mesh(2, 1);
    const Space s = build_space(m, SpaceKind::scalar_facet, 0, BoundaryCondition::dirichlet);
    const SparseMatrix a = facet_inner_product(m, s);
    REQUIRE(a.rows() == 1);
    CHECK(a.coeff(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("block diagonal by facet and SPD") {
    const Mesh m = build_structured_mesh(2, 3);
    const Space s = build_space(m, SpaceKind::scalar_facet, 2, BoundaryCondition::dirichlet);
    const SparseMatrix a = facet_inner_product(m, s);
    std::vector<int> facet_of(s.num_dofs, -1);
    for (int f = 0; f < m.num_facets(); ++f)
      for (const DofRef& r : s.facet_dofs[f])
        if (r.index >= 0) facet_of[r.index] = f;
    for (int i = 0; i < a.outerSize(); ++i)
      for (SparseMatrix::InnerIterator it(a, i); it; ++it)
        if (it.value() != 0.0) CHECK(facet_of[i] == facet_of[it.col()]);
    CHECK(min_eigenvalue(Eigen::MatrixXd(a)) > 0.0);
  }
  SUBCASE("vector inner product is SPD") {
    const Mesh m = build_structured_mesh(2, 2);
    const ProblemMatrix p = assemble_vector_rd(m, 2, TauField{1.0, 1.0});
    const SparseMatrix a = vector_inner_product(m, p, TauField{1.0, 1.0});
    CHECK(symmetry_defect(a) < 1e-14);
    CHECK(min_eigenvalue(Eigen::MatrixXd(a)) > 0.0);
  }
}

TEST_CASE("scalar manufactured solution converges at the optimal rate") {
  const double pi = 3.14159265358979323846;
  auto exact = [pi](const Point& x) { return std::sin(pi * x(0)) * std::sin(pi * x(1)); };
  auto f = [&](const Point& x) { return (2 * pi * pi + 1.0) * exact(x); };
  for (int k = 1; k <= 2; ++k) {
    double prev = 0.0;
    for (int n : {4, 8, 16}) {
      const Mesh m = build_structured_mesh(2, n);
      const ProblemMatrix p = assemble_scalar_rd(m, k, TauField{1.0, 1.0}, 4.0, f);
      const CondensedSystem s = condense(p);
      const double err =
          scalar_l2_error(m, p, recover(s, SparseCholesky(s.schur).solve(s.lifted_rhs)), exact);
      if (prev > 0.0) CHECK(std::log2(prev / err) > k + 0.8);
      prev = err;
    }
  }
}

TEST_CASE("invalid arguments") {
  const Mesh m2 = build_structured_mesh(2, 2);
  const Mesh m3 = build_structured_mesh(3, 1);
  CHECK_THROWS_AS(assemble_scalar_rd(m2, 0, TauField{}), std::invalid_argument);
  CHECK_THROWS_AS(assemble_scalar_rd(m2, 1, TauField{}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assemble_vector_rd(m3, 1, TauField{}), std::invalid_argument);
}
