#pragma once

#include <Eigen/Dense>

namespace asphdg {

/// Rule on the reference simplex {x_i >= 0, sum x_i <= 1} (the interval [0,1] for dim 1).
struct QuadratureRule {
  int dim = 0;
  int order = 0;
  Eigen::MatrixXd points;  // dim x size
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre points and weights on [0, 1].
QuadratureRule gauss_legendre(int n);

/// Collapsed (Duffy) Gauss rule exact for total degree `order`; orders 0 and 1
/// use the centroid rule. Weights are positive and sum to 1/dim!.
QuadratureRule simplex_quadrature(int dim, int order);

/// Measure of the reference simplex: 1, 1/2, 1/6.
double reference_simplex_measure(int dim);

}  // namespace asphdg
