#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "asphdg/quadrature.hpp"

namespace asphdg {

/// Monomials x^a y^b z^c of total degree <= degree, graded order.
class MonomialSet {
 public:
  MonomialSet(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }
  const std::array<int, 3>& exponent(int i) const { return exponents_[i]; }
  /// Index of a monomial, or -1 if its degree exceeds the set.
  int index_of(const std::array<int, 3>& e) const;

  Eigen::VectorXd values(const Eigen::VectorXd& x) const;
  /// size x dim
  Eigen::MatrixXd gradients(const Eigen::VectorXd& x) const;
  /// size x (dim*dim), row-major Hessian per monomial.
  Eigen::MatrixXd hessians(const Eigen::VectorXd& x) const;

  /// Coefficients of d/dx_axis p over this set.
  Eigen::VectorXd differentiate(const Eigen::VectorXd& coeffs, int axis) const;

 private:
  int dim_;
  int degree_;
  std::vector<std::array<int, 3>> exponents_;
};

/// Node of the degree-r principal lattice, identified by its barycentric multi-index.
struct LatticeNode {
  std::array<int, 4> multi{0, 0, 0, 0};
  Eigen::VectorXd point;
  /// Number of nonzero barycentric indices: 1 = vertex, 2 = edge, dim+1 = interior.
  int support = 0;
};

/// Nodal Lagrange basis of P^r on the reference simplex (dim 1, 2 or 3).
class LagrangeBasis {
 public:
  LagrangeBasis(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<LatticeNode>& nodes() const { return nodes_; }
  const MonomialSet& monomials() const { return monomials_; }
  /// Columns are basis functions expressed in monomial coefficients.
  const Eigen::MatrixXd& coefficients() const { return coeffs_; }

  Eigen::VectorXd values(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd gradients(const Eigen::VectorXd& x) const;  // size x dim
  Eigen::MatrixXd hessians(const Eigen::VectorXd& x) const;   // size x dim*dim

 private:
  int dim_;
  int degree_;
  MonomialSet monomials_;
  std::vector<LatticeNode> nodes_;
  Eigen::MatrixXd coeffs_;
};

/// Lattice of degree r in barycentric multi-indices, graded order; r = 0 gives the centroid.
std::vector<LatticeNode> simplex_lattice(int dim, int degree);

/// Values of a basis at every quadrature point: rows = points, cols = functions.
Eigen::MatrixXd tabulate_values(const LagrangeBasis& basis, const Eigen::MatrixXd& points);

/// L2 projection onto P^r on a facet, acting on values sampled at a facet
/// quadrature rule. Coefficients refer to the facet Lagrange basis in the facet's
/// own parametrization and are independent of the facet's size.
class FacetProjection {
 public:
  FacetProjection(int facet_dim, int degree, int quadrature_order);

  const LagrangeBasis& basis() const { return basis_; }
  const QuadratureRule& rule() const { return rule_; }
  /// Basis values at the rule points: rule size x basis size.
  const Eigen::MatrixXd& basis_values() const { return table_; }
  /// Reference mass matrix (scale by |F|/|F_ref| for a physical facet).
  const Eigen::MatrixXd& reference_mass() const { return mass_; }
  /// basis size x rule size: coefficients = matrix() * samples.
  const Eigen::MatrixXd& matrix() const { return projector_; }

  Eigen::VectorXd project(const Eigen::VectorXd& samples) const { return projector_ * samples; }

 private:
  LagrangeBasis basis_;
  QuadratureRule rule_;
  Eigen::MatrixXd table_;
  Eigen::MatrixXd mass_;
  Eigen::MatrixXd projector_;
};

/// Projection onto facet polynomials of degree k-1, with quadrature exact for degree-k traces.
FacetProjection facet_l2_projection_matrix(int k, int facet_dim);

}  // namespace asphdg
