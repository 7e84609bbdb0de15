#include "asphdg/scalar_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace asphdg {

namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

MonomialSet::MonomialSet(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("monomial dimension must be 1..3");
  if (degree < 0) throw std::invalid_argument("monomial degree must be non-negative");
  for (int d = 0; d <= degree; ++d) {
    if (dim == 1) {
      exponents_.push_back({d, 0, 0});
    } else if (dim == 2) {
      for (int b = 0; b <= d; ++b) exponents_.push_back({d - b, b, 0});
    } else {
      for (int c = 0; c <= d; ++c)
        for (int b = 0; b <= d - c; ++b) exponents_.push_back({d - b - c, b, c});
    }
  }
}

int MonomialSet::index_of(const std::array<int, 3>& e) const {
  for (int i = 0; i < size(); ++i)
    if (exponents_[i] == e) return i;
  return -1;
}

Eigen::VectorXd MonomialSet::values(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) {
    double p = 1.0;
    for (int d = 0; d < dim_; ++d) p *= ipow(x(d), exponents_[i][d]);
    v(i) = p;
  }
  return v;
}

Eigen::MatrixXd MonomialSet::gradients(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd g(size(), dim_);
  for (int i = 0; i < size(); ++i)
    for (int a = 0; a < dim_; ++a) {
      const auto& e = exponents_[i];
      if (e[a] == 0) {
        g(i, a) = 0.0;
        continue;
      }
      double p = e[a];
      for (int d = 0; d < dim_; ++d) p *= ipow(x(d), e[d] - (d == a ? 1 : 0));
      g(i, a) = p;
    }
  return g;
}

Eigen::MatrixXd MonomialSet::hessians(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd h(size(), dim_ * dim_);
  for (int i = 0; i < size(); ++i)
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) {
        std::array<int, 3> e = exponents_[i];
        double c = e[a];
        --e[a];
        c *= e[b];
        --e[b];
        double p = 0.0;
        if (c != 0.0) {
          p = c;
          for (int d = 0; d < dim_; ++d) p *= ipow(x(d), e[d]);
        }
        h(i, a * dim_ + b) = p;
      }
  return h;
}

Eigen::VectorXd MonomialSet::differentiate(const Eigen::VectorXd& coeffs, int axis) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
  for (int i = 0; i < size(); ++i) {
    auto e = exponents_[i];
    if (e[axis] == 0 || coeffs(i) == 0.0) continue;
    double c = coeffs(i) * e[axis];
    --e[axis];
    out(index_of(e)) += c;
  }
  return out;
}

std::vector<LatticeNode> simplex_lattice(int dim, int degree) {
  std::vector<LatticeNode> nodes;
  if (degree == 0) {
    LatticeNode n;
    n.point = Eigen::VectorXd::Constant(dim, 1.0 / (dim + 1));
    n.support = dim + 1;
    nodes.push_back(n);
    return nodes;
  }
  MonomialSet exps(dim, degree);
  for (int i = 0; i < exps.size(); ++i) {
    // Reuse the graded exponent enumeration for (a_1..a_dim); a_0 fills the rest.
    const auto& e = exps.exponent(i);
    LatticeNode n;
    int sum = 0;
    n.point.resize(dim);
    for (int d = 0; d < dim; ++d) {
      n.multi[d + 1] = e[d];
      sum += e[d];
      n.point(d) = static_cast<double>(e[d]) / degree;
    }
    n.multi[0] = degree - sum;
    for (int d = 0; d <= dim; ++d) n.support += n.multi[d] > 0 ? 1 : 0;
    nodes.push_back(n);
  }
  return nodes;
}

LagrangeBasis::LagrangeBasis(int dim, int degree)
    : dim_(dim), degree_(degree), monomials_(dim, degree), nodes_(simplex_lattice(dim, degree)) {
  const int n = monomials_.size();
  Eigen::MatrixXd vandermonde(n, n);
  for (int i = 0; i < n; ++i) vandermonde.row(i) = monomials_.values(nodes_[i].point).transpose();
  coeffs_ = vandermonde.fullPivLu().inverse();
}

Eigen::VectorXd LagrangeBasis::values(const Eigen::VectorXd& x) const {
  return coeffs_.transpose() * monomials_.values(x);
}

Eigen::MatrixXd LagrangeBasis::gradients(const Eigen::VectorXd& x) const {
  return coeffs_.transpose() * monomials_.gradients(x);
}

Eigen::MatrixXd LagrangeBasis::hessians(const Eigen::VectorXd& x) const {
  return coeffs_.transpose() * monomials_.hessians(x);
}

Eigen::MatrixXd tabulate_values(const LagrangeBasis& basis, const Eigen::MatrixXd& points) {
  Eigen::MatrixXd t(points.cols(), basis.size());
  for (int q = 0; q < points.cols(); ++q) t.row(q) = basis.values(points.col(q)).transpose();
  return t;
}

FacetProjection::FacetProjection(int facet_dim, int degree, int quadrature_order)
    : basis_(facet_dim, degree), rule_(simplex_quadrature(facet_dim, quadrature_order)) {
  table_ = tabulate_values(basis_, rule_.points);
  Eigen::MatrixXd weighted = rule_.weights.asDiagonal() * table_;
  mass_ = table_.transpose() * weighted;
  projector_ = mass_.llt().solve(weighted.transpose());
}

FacetProjection facet_l2_projection_matrix(int k, int facet_dim) {
  if (k < 1) throw std::invalid_argument("facet projection needs k >= 1");
  return FacetProjection(facet_dim, k - 1, 2 * k + 2);
}

}  // namespace asphdg
