#include "asphdg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCholesky>

namespace asphdg {

SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& triplets) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

double symmetry_defect(const SparseMatrix& a) {
  SparseMatrix at = a.transpose();
  SparseMatrix d = a - at;
  double top = 0.0, diff = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) top = std::max(top, std::abs(it.value()));
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) diff = std::max(diff, std::abs(it.value()));
  return top > 0 ? diff / top : diff;
}

Eigen::MatrixXd dense_submatrix(const SparseMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows.size(), cols.size());
  std::vector<std::pair<int, int>> sorted_cols;
  sorted_cols.reserve(cols.size());
  for (size_t j = 0; j < cols.size(); ++j) sorted_cols.emplace_back(cols[j], static_cast<int>(j));
  std::sort(sorted_cols.begin(), sorted_cols.end());
  for (size_t i = 0; i < rows.size(); ++i)
    for (SparseMatrix::InnerIterator it(a, rows[i]); it; ++it) {
      auto pos = std::lower_bound(sorted_cols.begin(), sorted_cols.end(), std::make_pair(static_cast<int>(it.col()), -1));
      for (; pos != sorted_cols.end() && pos->first == it.col(); ++pos) out(i, pos->second) = it.value();
    }
  return out;
}

struct SparseCholesky::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower> ldlt;
};

SparseCholesky::SparseCholesky(const SparseMatrix& a) : impl_(std::make_unique<Impl>()), n_(static_cast<int>(a.rows())) {
  if (a.rows() != a.cols()) throw std::invalid_argument("SparseCholesky needs a square matrix");
  Eigen::SparseMatrix<double> col = a;
  impl_->ldlt.compute(col);
  if (impl_->ldlt.info() != Eigen::Success) throw std::runtime_error("sparse factorization failed");
  const Eigen::VectorXd d = impl_->ldlt.vectorD();
  if (n_ > 0 && !(d.minCoeff() > 0.0)) throw std::runtime_error("matrix is not positive definite");
}

SparseCholesky::~SparseCholesky() = default;
SparseCholesky::SparseCholesky(SparseCholesky&&) noexcept = default;
SparseCholesky& SparseCholesky::operator=(SparseCholesky&&) noexcept = default;

Eigen::VectorXd SparseCholesky::solve(const Eigen::VectorXd& b) const {
  if (b.size() != n_) throw std::invalid_argument("SparseCholesky::solve size mismatch");
  if (n_ == 0) return b;
  return impl_->ldlt.solve(b);
}

}  // namespace asphdg
