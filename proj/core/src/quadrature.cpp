#include "asphdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace asphdg {

double reference_simplex_measure(int dim) {
  switch (dim) {
    case 1: return 1.0;
    case 2: return 0.5;
    case 3: return 1.0 / 6.0;
    default: throw std::invalid_argument("simplex dimension must be 1, 2 or 3");
  }
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
  QuadratureRule rule;
  rule.dim = 1;
  rule.order = 2 * n - 1;
  rule.points.resize(1, n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double pn = n == 1 ? x : p1;
      double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points(0, i) = 0.5 * (1.0 - x);
    rule.weights(i) = 0.5 * w;
  }
  return rule;
}

QuadratureRule simplex_quadrature(int dim, int order) {
  if (order < 0) throw std::invalid_argument("quadrature order must be non-negative");
  double vol = reference_simplex_measure(dim);
  QuadratureRule rule;
  rule.dim = dim;
  rule.order = order;
  if (dim > 1 && order <= 1) {
    rule.points = Eigen::MatrixXd::Constant(dim, 1, 1.0 / (dim + 1));
    rule.weights = Eigen::VectorXd::Constant(1, vol);
    return rule;
  }
  const int n = (order + dim + 1) / 2;
  const QuadratureRule g = gauss_legendre(n);
  if (dim == 1) {
    rule.points = g.points;
    rule.weights = g.weights;
    return rule;
  }
  if (dim == 2) {
    rule.points.resize(2, n * n);
    rule.weights.resize(n * n);
    int q = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b, ++q) {
        double u = g.points(0, a), v = g.points(0, b);
        rule.points(0, q) = u;
        rule.points(1, q) = (1.0 - u) * v;
        rule.weights(q) = g.weights(a) * g.weights(b) * (1.0 - u);
      }
    return rule;
  }
  rule.points.resize(3, n * n * n);
  rule.weights.resize(n * n * n);
  int q = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c, ++q) {
        double u = g.points(0, a), v = g.points(0, b), w = g.points(0, c);
        rule.points(0, q) = u;
        rule.points(1, q) = (1.0 - u) * v;
        rule.points(2, q) = (1.0 - u) * (1.0 - v) * w;
        rule.weights(q) = g.weights(a) * g.weights(b) * g.weights(c) * (1.0 - u) * (1.0 - u) * (1.0 - v);
      }
  return rule;
}

}  // namespace asphdg
