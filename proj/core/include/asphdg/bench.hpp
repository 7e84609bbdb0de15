#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "asphdg/asp.hpp"
#include "asphdg/assembly.hpp"
#include "asphdg/condense.hpp"
#include "asphdg/mesh.hpp"

namespace asphdg {

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::scalar_rd;
  int dim = 2;
  int k = 1;
  int n = 8;
  double tau1 = 1.0;
  double tau2 = 1.0;
  SmootherKind smoother = SmootherKind::bgs;
  AuxKind aux = AuxKind::direct;
  PlateBoundary bc = PlateBoundary::simply_supported;
  double alpha = 4.0;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  int maxit = 2000;
  /// When false the timing columns are written as 0 so output is byte-reproducible.
  bool record_timings = true;
};

struct ResultRow {
  ExperimentConfig config;
  int dofs_global = 0;
  int iters = 0;
  double kappa_est = 0.0;
  double setup_ms = 0.0;
  double solve_ms = 0.0;
  bool converged = false;
};

/// Throws std::invalid_argument for an invalid configuration.
void validate(const ExperimentConfig& config);

/// Mesh, assembled problem and its condensed system for a configuration.
struct Discretization {
  Mesh mesh;
  ProblemMatrix problem;
  CondensedSystem system;
};

Discretization discretize(const ExperimentConfig& config);
PreconditionerConfig preconditioner_config(const ExperimentConfig& config);

/// mesh -> spaces -> assembly -> condensation -> preconditioner -> PCG.
ResultRow run_experiment(const ExperimentConfig& config);

/// Rows of table 1..4 in output order: k, N = 8, 16, ... <= n_max, tau combination,
/// preconditioner (JAC-ASP, BGS-ASP for tables 1-2; ASP-ASP, ASP-DIR for tables 3-4).
std::vector<ExperimentConfig> table_configs(int table, int n_max, const std::vector<int>& k_set);
std::string reproduce_table(int table, int n_max, const std::vector<int>& k_set, bool record_timings = true);

extern const char* const kCsvHeader;
std::string to_csv(const std::vector<ResultRow>& rows);
/// Throws std::invalid_argument on a malformed header or row.
std::vector<ResultRow> parse_csv(const std::string& text);

/// Dense verification data for small configurations (<= 2000 unknowns).
struct DenseOracle {
  Eigen::MatrixXd full;
  Eigen::MatrixXd schur;           // dense elimination of the local block
  Eigen::VectorXd schur_eigenvalues;
  Eigen::VectorXd full_solution;   // dense solve of the uncondensed system
  double kappa_schur = 0.0;
  double kappa_preconditioned = 0.0;  // kappa(B S) with B materialized
};

/// Throws std::invalid_argument above the size cap.
DenseOracle dense_oracle(const ExperimentConfig& config);

}  // namespace asphdg
