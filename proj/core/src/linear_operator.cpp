#include "asphdg/linear_operator.hpp"

#include <memory>
#include <stdexcept>
#include <utility>

namespace asphdg {

LinearOperator::LinearOperator(int rows, int cols, Apply apply, bool symmetric)
    : rows_(rows), cols_(cols), symmetric_(symmetric), apply_(std::move(apply)) {}

Eigen::VectorXd LinearOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != cols_) throw std::invalid_argument("LinearOperator: input size mismatch");
  Eigen::VectorXd y = apply_(x);
  if (y.size() != rows_) throw std::logic_error("LinearOperator: output size mismatch");
  return y;
}

Eigen::MatrixXd LinearOperator::materialize() const {
  Eigen::MatrixXd m(rows_, cols_);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(cols_);
  for (int j = 0; j < cols_; ++j) {
    e(j) = 1.0;
    m.col(j) = apply(e);
    e(j) = 0.0;
  }
  return m;
}

LinearOperator matrix_operator(const SparseMatrix& a) {
  auto m = std::make_shared<const SparseMatrix>(a);
  return LinearOperator(static_cast<int>(a.rows()), static_cast<int>(a.cols()),
                        [m](const Eigen::VectorXd& x) -> Eigen::VectorXd { return *m * x; });
}

LinearOperator dense_operator(const Eigen::MatrixXd& a) {
  auto m = std::make_shared<const Eigen::MatrixXd>(a);
  return LinearOperator(static_cast<int>(a.rows()), static_cast<int>(a.cols()),
                        [m](const Eigen::VectorXd& x) -> Eigen::VectorXd { return *m * x; });
}

LinearOperator identity_operator(int n) {
  return LinearOperator(n, n, [](const Eigen::VectorXd& x) { return x; });
}

LinearOperator zero_operator(int n) {
  return LinearOperator(n, n, [n](const Eigen::VectorXd&) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(n); });
}

}  // namespace asphdg
