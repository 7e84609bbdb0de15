#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "asphdg/bench.hpp"

using namespace asphdg;

namespace {

ExperimentConfig scalar3d(int n) {
  ExperimentConfig c;
  c.problem = ProblemKind::scalar_rd;
  c.dim = 3;
  c.n = n;
  return c;
}

ExperimentConfig plate(int n, PlateBoundary bc) {
  ExperimentConfig c;
  c.problem = ProblemKind::biharmonic;
  c.n = n;
  c.bc = bc;
  c.smoother = SmootherKind::none;
  c.aux = AuxKind::direct;
  return c;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("table configurations") {
  const std::vector<ExperimentConfig> t1 = table_configs(1, 16, {1});
  CHECK(t1.size() == 16);
  const double tau1[] = {1, 1, 1e4, 1e4}, tau2[] = {1, 1e4, 1, 1e4};
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1[i].n == (i < 8 ? 8 : 16));
    CHECK(t1[i].tau1 == tau1[(i / 2) % 4]);
    CHECK(t1[i].tau2 == tau2[(i / 2) % 4]);
    CHECK(t1[i].smoother == (i % 2 == 0 ? SmootherKind::jacobi : SmootherKind::bgs));
    CHECK(t1[i].dim == 3);
    CHECK_NOTHROW(validate(t1[i]));
  }
  for (const ExperimentConfig& c : table_configs(4, 32, {1, 2})) {
    CHECK(c.problem == ProblemKind::biharmonic);
    CHECK(c.bc == PlateBoundary::clamped);
    CHECK_NOTHROW(validate(c));
  }
  CHECK(table_configs(3, 32, {1, 2}).size() == 2 * 3 * 4 * 2);
  CHECK(table_configs(2, 4, {1}).empty());
  CHECK_THROWS_AS(table_configs(5, 8, {1}), std::invalid_argument);
}

TEST_CASE("validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(validate(c));
  auto bad = [](auto mutate) {
    ExperimentConfig x;
    mutate(x);
    return x;
  };
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.n = 0; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.k = 0; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.tau2 = -1; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.dim = 4; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.problem = ProblemKind::vector_rd; x.dim = 3; })),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.alpha = 0; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.tol = 0; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.smoother = SmootherKind::none; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](ExperimentConfig& x) { x.aux = AuxKind::asp; })), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(bad([](ExperimentConfig& x) { x.n = 0; })), std::invalid_argument);
}

TEST_CASE("CSV round trip") {
  ResultRow a;
  a.config = plate(16, PlateBoundary::clamped);
  a.config.tau1 = 1e4;
  a.config.tau2 = 0.1;
  a.dofs_global = 1234;
  a.iters = 17;
  a.kappa_est = 12.5;
  a.converged = true;
  ResultRow b;
  b.config = scalar3d(8);
  b.config.smoother = SmootherKind::jacobi;
  b.iters = 40;
  const std::string csv = to_csv({a, b});
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(count_lines(csv) == 3);
  const std::vector<ResultRow> back = parse_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back[0].config.problem == ProblemKind::biharmonic);
  CHECK(back[0].config.bc == PlateBoundary::clamped);
  CHECK(back[0].config.tau1 == 1e4);
  CHECK(back[0].config.tau2 == 0.1);
  CHECK(back[0].dofs_global == 1234);
  CHECK(back[0].iters == 17);
  CHECK(back[0].kappa_est == doctest::Approx(12.5));
  CHECK(back[0].converged);
  CHECK(back[1].config.dim == 3);
  CHECK(back[1].config.smoother == SmootherKind::jacobi);
  CHECK_FALSE(back[1].converged);
  CHECK(to_csv(back) == csv);

  CHECK_THROWS_AS(parse_csv("problem,dim\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\nscalar_rd,2,1\n"), std::invalid_argument);
  std::string bad = csv;
  bad.replace(bad.find("true"), 4, "yes!");
  CHECK_THROWS_AS(parse_csv(bad), std::invalid_argument);
}

TEST_CASE("no-timing output is reproducible") {
  ExperimentConfig c = scalar3d(4);
  c.record_timings = false;
  const ResultRow r1 = run_experiment(c), r2 = run_experiment(c);
  CHECK(r1.setup_ms == 0.0);
  CHECK(r1.solve_ms == 0.0);
  CHECK(to_csv({r1}) == to_csv({r2}));
}

TEST_CASE("3D scalar block smoother at N=8") {
  const ResultRow r = run_experiment(scalar3d(8));
  CHECK(r.converged);
  CHECK(r.iters >= 8);
  CHECK(r.iters <= 40);
  CHECK(r.kappa_est > 1.0);
}

TEST_CASE("plate problems") {
  const ResultRow ss = run_experiment(plate(8, PlateBoundary::simply_supported));
  CHECK(ss.converged);
  CHECK(ss.iters >= 6);
  CHECK(ss.iters <= 25);
  const ResultRow c8 = run_experiment(plate(8, PlateBoundary::clamped));
  const ResultRow c32 = run_experiment(plate(32, PlateBoundary::clamped));
  CHECK(c8.converged);
  CHECK(c32.converged);
  CHECK(static_cast<double>(c32.iters) / c8.iters >= 1.5);
}

TEST_CASE("global DOF counts grow with N") {
  int prev = 0;
  for (int n : {2, 4, 8}) {
    ExperimentConfig c;
    c.n = n;
    const Discretization d = discretize(c);
    CHECK(d.system.num_global > prev);
    CHECK(d.system.num_global == d.problem.layout.num_global);
    prev = d.system.num_global;
  }
}

TEST_CASE("dense oracle") {
  ExperimentConfig c;
  c.n = 3;
  c.k = 2;
  const DenseOracle o = dense_oracle(c);
  const Discretization d = discretize(c);
  CHECK((Eigen::MatrixXd(d.system.schur) - o.schur).norm() < 1e-10 * o.schur.norm());
  CHECK((o.full * o.full_solution - Eigen::VectorXd(d.problem.rhs)).norm() < 1e-9 * d.problem.rhs.norm());
  CHECK(o.schur_eigenvalues.minCoeff() > 0.0);
  CHECK(o.kappa_schur > o.kappa_preconditioned);
  CHECK(o.kappa_preconditioned >= 1.0);
  ExperimentConfig big = scalar3d(8);
  CHECK_THROWS_AS(dense_oracle(big), std::invalid_argument);
}
