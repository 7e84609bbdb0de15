#pragma once

#include <vector>

#include <Eigen/Dense>

#include "asphdg/assembly.hpp"
#include "asphdg/sparse.hpp"

namespace asphdg {

/// Schur complement on the global DOFs plus the element data needed to recover
/// the local DOFs. Global indices here are compound index - num_local.
struct CondensedSystem {
  struct ElementBlock {
    std::vector<int> locals;   // compound indices
    std::vector<int> globals;  // global indices coupled to the locals
    Eigen::LLT<Eigen::MatrixXd> factor;
    Eigen::MatrixXd coupling;  // A_lg, locals x globals
  };

  SparseMatrix schur;
  Eigen::VectorXd lifted_rhs;
  Eigen::VectorXd rhs;  // full right-hand side used for recovery
  int num_local = 0;
  int num_global = 0;
  std::vector<ElementBlock> blocks;
};

/// Eliminates the local DOFs element by element. Throws std::runtime_error if a
/// local block is not positive definite.
CondensedSystem condense(const ProblemMatrix& problem, const Eigen::VectorXd& rhs);
inline CondensedSystem condense(const ProblemMatrix& problem) { return condense(problem, problem.rhs); }

/// b_g - A_gl A_ll^{-1} b_l for a full right-hand side.
Eigen::VectorXd eliminate(const CondensedSystem& system, const Eigen::VectorXd& full_rhs);

/// Full vector (local, global) from global values: u_l = A_ll^{-1} (b_l - A_lg u_g).
Eigen::VectorXd back_substitute(const CondensedSystem& system, const Eigen::VectorXd& full_rhs,
                                const Eigen::VectorXd& global_solution);

inline Eigen::VectorXd recover(const CondensedSystem& system, const Eigen::VectorXd& global_solution) {
  return back_substitute(system, system.rhs, global_solution);
}

}  // namespace asphdg
