#pragma once

#include <functional>

#include <Eigen/Dense>

#include "asphdg/sparse.hpp"

namespace asphdg {

/// Type-erased linear map. Copies share whatever state the apply function captured.
class LinearOperator {
 public:
  using Apply = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  LinearOperator() = default;
  LinearOperator(int rows, int cols, Apply apply, bool symmetric = true);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool symmetric() const { return symmetric_; }
  /// Throws std::invalid_argument on a size mismatch.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const { return apply(x); }

  /// Dense matrix obtained by applying to unit vectors.
  Eigen::MatrixXd materialize() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  bool symmetric_ = true;
  Apply apply_;
};

LinearOperator matrix_operator(const SparseMatrix& a);
LinearOperator dense_operator(const Eigen::MatrixXd& a);
LinearOperator identity_operator(int n);
LinearOperator zero_operator(int n);

}  // namespace asphdg
