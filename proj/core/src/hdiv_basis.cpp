#include "asphdg/hdiv_basis.hpp"

#include <stdexcept>

namespace asphdg {

namespace {

constexpr int kEdgeVertices[3][2] = {{1, 2}, {0, 2}, {0, 1}};

Eigen::Vector3d reference_barycentric(const Eigen::VectorXd& x) {
  return {1.0 - x(0) - x(1), x(0), x(1)};
}

const Eigen::Matrix<double, 3, 2>& reference_barycentric_gradients() {
  static const Eigen::Matrix<double, 3, 2> g = (Eigen::Matrix<double, 3, 2>() << -1, -1, 1, 0, 0, 1).finished();
  return g;
}

double legendre(int n, double s) {
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = s;
  for (int j = 2; j <= n; ++j) {
    double p2 = ((2.0 * j - 1.0) * s * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

HdivBasis::HdivBasis(int k) : k_(k), monomials_(2, k < 1 ? 1 : k + 1) {
  if (k < 1) throw std::invalid_argument("H(div) basis needs k >= 1");
  const LagrangeBasis lattice(2, k + 1);
  const int nm = monomials_.size();
  const auto& nodes = lattice.nodes();
  const Eigen::MatrixXd& fit = lattice.coefficients();  // monomial coeffs = fit * nodal values
  const auto& glam = reference_barycentric_gradients();

  std::vector<Eigen::VectorXd> fx, fy;
  auto add_curl = [&](const Eigen::VectorXd& nodal) {
    Eigen::VectorXd s = fit * nodal;
    fx.push_back(monomials_.differentiate(s, 1));
    fy.push_back(-monomials_.differentiate(s, 0));
  };

  for (int e = 0; e < 3; ++e) {
    const int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
    Eigen::VectorXd vx(nodes.size()), vy(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
      Eigen::Vector3d lam = reference_barycentric(nodes[i].point);
      // lambda_a curl(lambda_b) - lambda_b curl(lambda_a), curl = (d/dy, -d/dx)
      vx(i) = lam(a) * glam(b, 1) - lam(b) * glam(a, 1);
      vy(i) = -lam(a) * glam(b, 0) + lam(b) * glam(a, 0);
    }
    fx.push_back(fit * vx);
    fy.push_back(fit * vy);
    info_.push_back({HdivFamily::lowest_order_facet, e, 0});
    for (int j = 1; j <= k; ++j) {
      Eigen::VectorXd s(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i) {
        Eigen::Vector3d lam = reference_barycentric(nodes[i].point);
        s(i) = lam(a) * lam(b) * legendre(j - 1, lam(b) - lam(a));
      }
      add_curl(s);
      info_.push_back({HdivFamily::facet_divfree, e, j});
    }
  }

  const int first_divfree = static_cast<int>(fx.size());
  for (int p = 0; p <= k - 2; ++p)
    for (int q = 0; q <= k - 2 - p; ++q) {
      Eigen::VectorXd s(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i) {
        Eigen::Vector3d lam = reference_barycentric(nodes[i].point);
        double pw = 1.0;
        for (int r = 0; r < p; ++r) pw *= lam(1);
        for (int r = 0; r < q; ++r) pw *= lam(2);
        s(i) = lam(0) * lam(1) * lam(2) * pw;
      }
      add_curl(s);
      info_.push_back({HdivFamily::interior_divfree, -1, n_divfree_++});
    }

  // L2 Gram of fields over the monomial set.
  const QuadratureRule rule = simplex_quadrature(2, 2 * k + 2);
  Eigen::MatrixXd mono_gram = Eigen::MatrixXd::Zero(nm, nm);
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::VectorXd m = monomials_.values(rule.points.col(q));
    mono_gram += rule.weights(q) * m * m.transpose();
  }
  auto field_gram = [&](const Eigen::MatrixXd& ax, const Eigen::MatrixXd& ay, const Eigen::MatrixXd& bx,
                        const Eigen::MatrixXd& by) -> Eigen::MatrixXd {
    return ax.transpose() * mono_gram * bx + ay.transpose() * mono_gram * by;
  };

  // Interior bubbles of BDM_k: degree-k fields with vanishing normal trace.
  const MonomialSet low(2, k);
  const int nl = low.size();
  const QuadratureRule edge_pts = gauss_legendre(k + 1);
  const Eigen::Vector2d vref[3] = {{0, 0}, {1, 0}, {0, 1}};
  Eigen::MatrixXd constraints(3 * (k + 1), 2 * nl);
  for (int e = 0; e < 3; ++e) {
    Eigen::Vector2d pa = vref[kEdgeVertices[e][0]], pb = vref[kEdgeVertices[e][1]];
    Eigen::Vector2d t = pb - pa;
    Eigen::Vector2d n(t.y(), -t.x());
    for (int q = 0; q <= k; ++q) {
      Eigen::VectorXd x = pa + edge_pts.points(0, q) * t;
      Eigen::VectorXd m = low.values(x);
      constraints.row(e * (k + 1) + q) << n.x() * m.transpose(), n.y() * m.transpose();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  const int n_bubble = 2 * nl - rank;
  if (n_bubble != (k + 1) * (k - 1)) throw std::logic_error("unexpected BDM bubble dimension");

  if (n_bubble > n_divfree_) {
    Eigen::MatrixXd zx = Eigen::MatrixXd::Zero(nm, n_bubble), zy = Eigen::MatrixXd::Zero(nm, n_bubble);
    const Eigen::MatrixXd kernel = svd.matrixV().rightCols(n_bubble);
    for (int i = 0; i < nl; ++i) {
      int dst = monomials_.index_of(low.exponent(i));
      zx.row(dst) = kernel.row(i);
      zy.row(dst) = kernel.row(nl + i);
    }
    Eigen::MatrixXd px(nm, n_divfree_), py(nm, n_divfree_);
    for (int i = 0; i < n_divfree_; ++i) {
      px.col(i) = fx[first_divfree + i];
      py.col(i) = fy[first_divfree + i];
    }
    if (n_divfree_ > 0) {
      Eigen::MatrixXd gpp = field_gram(px, py, px, py);
      Eigen::MatrixXd gpz = field_gram(px, py, zx, zy);
      Eigen::MatrixXd c = gpp.llt().solve(gpz);
      zx -= px * c;
      zy -= py * c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(field_gram(zx, zy, zx, zy));
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double top = ev.maxCoeff();
    for (int i = n_bubble - 1; i >= 0; --i) {
      if (ev(i) <= 1e-10 * top) continue;
      Eigen::VectorXd v = eig.eigenvectors().col(i) / std::sqrt(ev(i));
      fx.push_back(zx * v);
      fy.push_back(zy * v);
      info_.push_back({HdivFamily::interior_nonsolenoidal, -1, n_nonsol_++});
    }
  }
  if (size() != (k + 1) * (k + 2)) throw std::logic_error("hierarchical basis does not span BDM_k");

  const int nf = size();
  cx_.resize(nm, nf);
  cy_.resize(nm, nf);
  dxx_.resize(nm, nf);
  dxy_.resize(nm, nf);
  dyx_.resize(nm, nf);
  dyy_.resize(nm, nf);
  for (int i = 0; i < nf; ++i) {
    cx_.col(i) = fx[i];
    cy_.col(i) = fy[i];
    dxx_.col(i) = monomials_.differentiate(fx[i], 0);
    dxy_.col(i) = monomials_.differentiate(fx[i], 1);
    dyx_.col(i) = monomials_.differentiate(fy[i], 0);
    dyy_.col(i) = monomials_.differentiate(fy[i], 1);
  }
}

HdivEval HdivBasis::evaluate(const Eigen::VectorXd& xhat) const {
  const Eigen::VectorXd m = monomials_.values(xhat);
  HdivEval out;
  const int nf = size();
  out.values.resize(nf, 2);
  out.values.col(0) = cx_.transpose() * m;
  out.values.col(1) = cy_.transpose() * m;
  Eigen::VectorXd a = dxx_.transpose() * m, b = dxy_.transpose() * m;
  Eigen::VectorXd c = dyx_.transpose() * m, d = dyy_.transpose() * m;
  out.jacobians.resize(nf);
  for (int i = 0; i < nf; ++i) out.jacobians[i] << a(i), b(i), c(i), d(i);
  out.divergence = a + d;
  return out;
}

HdivBasis build_hdiv_basis(int k) { return HdivBasis(k); }

HdivEval piola_map(const HdivEval& reference, const ElementGeometry& geometry) {
  if (geometry.dim != 2) throw std::invalid_argument("Piola map implemented for triangles only");
  if (!(std::abs(geometry.det) > 0.0)) throw std::invalid_argument("degenerate element");
  const Eigen::Matrix2d jac = geometry.jacobian;
  const Eigen::Matrix2d inv = geometry.inverse;
  const double scale = 1.0 / geometry.det;
  HdivEval out;
  out.values = scale * reference.values * jac.transpose();
  out.jacobians.resize(reference.jacobians.size());
  for (size_t i = 0; i < reference.jacobians.size(); ++i)
    out.jacobians[i] = scale * jac * reference.jacobians[i] * inv;
  out.divergence = scale * reference.divergence;
  return out;
}

Eigen::VectorXd hdiv_orientation_signs(const HdivBasis& basis, const Mesh& mesh, int element) {
  Eigen::VectorXd s = Eigen::VectorXd::Ones(basis.size());
  const auto& el = mesh.elements[element];
  for (int i = 0; i < basis.size(); ++i) {
    const auto& inf = basis.info()[i];
    if (inf.facet < 0) continue;
    int ga = el[kEdgeVertices[inf.facet][0]], gb = el[kEdgeVertices[inf.facet][1]];
    if (ga > gb) s(i) = HdivBasis::orientation_sign(inf.index);
  }
  return s;
}

}  // namespace asphdg
