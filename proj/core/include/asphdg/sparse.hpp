#pragma once

#include <memory>
#include <vector>

#include <Eigen/Sparse>

namespace asphdg {

/// Compressed-row sparse matrix shared by assembly, condensation and the solvers.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Triplet = Eigen::Triplet<double, int>;

/// Builds a CSR matrix from triplets; duplicates are summed in list order.
SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& triplets);

/// max |A - A^T| / max |A|.
double symmetry_defect(const SparseMatrix& a);

/// Principal submatrix on the given (sorted or not) index list, as a dense matrix.
Eigen::MatrixXd dense_submatrix(const SparseMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols);

/// Sparse symmetric factorization (LDL^T with fill-reducing ordering).
/// Throws std::runtime_error when the matrix is not numerically positive definite.
class SparseCholesky {
 public:
  explicit SparseCholesky(const SparseMatrix& a);
  ~SparseCholesky();
  SparseCholesky(SparseCholesky&&) noexcept;
  SparseCholesky& operator=(SparseCholesky&&) noexcept;

  int size() const { return n_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

}  // namespace asphdg
