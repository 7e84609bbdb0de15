#include "asphdg/transfer.hpp"

#include <cmath>
#include <stdexcept>

#include "asphdg/hdiv_basis.hpp"
#include "asphdg/quadrature.hpp"
#include "asphdg/scalar_basis.hpp"

namespace asphdg {

namespace {

std::vector<int> vertex_dofs(const Mesh& mesh, const Space& p1) {
  std::vector<int> v(mesh.num_vertices(), -1);
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int i = 0; i <= mesh.dim; ++i) v[mesh.elements[e][i]] = p1.element_dofs[e][i].index;
  return v;
}

// Facet rule points mapped to physical space, with physical weights.
void facet_points(const Mesh& mesh, int f, const QuadratureRule& rule, std::vector<Point>& pts, Eigen::VectorXd& w) {
  const Facet& facet = mesh.facets[f];
  const Point& v0 = mesh.vertices[facet.vertices[0]];
  pts.assign(rule.size(), v0);
  for (int q = 0; q < rule.size(); ++q)
    for (int i = 1; i < mesh.dim; ++i) pts[q] += rule.points(i - 1, q) * (mesh.vertices[facet.vertices[i]] - v0);
  w = rule.weights * (facet.measure / reference_simplex_measure(mesh.dim - 1));
}

// Barycentric coordinates of the facet rule points w.r.t. the sorted facet vertices.
Eigen::MatrixXd facet_barycentric(const QuadratureRule& rule, int dim) {
  Eigen::MatrixXd lam(rule.size(), dim);
  for (int q = 0; q < rule.size(); ++q) {
    double s = 0.0;
    for (int i = 1; i < dim; ++i) {
      lam(q, i) = rule.points(i - 1, q);
      s += rule.points(i - 1, q);
    }
    lam(q, 0) = 1.0 - s;
  }
  return lam;
}

Eigen::Vector2d tangent(const Point& n) { return {n.y(), -n.x()}; }

}  // namespace

Prolongation build_scalar_prolongation(const Mesh& mesh, const ProblemMatrix& problem) {
  const Space& facet = problem.spaces.at(1);
  if (facet.kind != SpaceKind::scalar_facet) throw std::invalid_argument("scalar prolongation needs a scalar problem");
  const Space p1 = build_space(mesh, SpaceKind::scalar_p1_continuous, 1, BoundaryCondition::dirichlet);
  const std::vector<int> vdof = vertex_dofs(mesh, p1);
  const FacetProjection proj(mesh.dim - 1, facet.degree, 2 * facet.degree + 2);
  const Eigen::MatrixXd local = proj.matrix() * facet_barycentric(proj.rule(), mesh.dim);  // nf x dim
  const int nl = problem.layout.num_local;
  std::vector<Triplet> trip;
  for (int f = 0; f < mesh.num_facets(); ++f)
    for (const DofRef& r : facet.facet_dofs[f]) {
      if (r.index < 0) continue;
      const int row = problem.layout.map[1][r.index] - nl;
      for (int i = 0; i < mesh.dim; ++i) {
        const int col = vdof[mesh.facets[f].vertices[i]];
        if (col >= 0 && local(r.local, i) != 0.0) trip.emplace_back(row, col, local(r.local, i));
      }
    }
  Prolongation p;
  p.matrix = from_triplets(problem.layout.num_global, p1.num_dofs, trip);
  p.source = "P1_0";
  p.target = "scalar_facet";
  return p;
}

Prolongation build_vector_prolongation(const Mesh& mesh, const ProblemMatrix& problem) {
  const Space& hdiv = problem.spaces.at(0);
  const Space& tang = problem.spaces.at(1);
  if (!hdiv.is_hdiv() || tang.kind != SpaceKind::tangential_facet)
    throw std::invalid_argument("vector prolongation needs a vector problem");
  const int k = hdiv.degree;
  const VectorP1Numbering num = vector_p1_numbering(mesh, tang.bc == BoundaryCondition::none);
  const int nl = problem.layout.num_local;
  const HdivBasis basis(k);
  const QuadratureRule rule = simplex_quadrature(1, 2 * k + 2);
  const Eigen::MatrixXd lam = facet_barycentric(rule, 2);
  const FacetProjection proj(1, k - 1, 2 * k + 2);
  const Eigen::MatrixXd tang_local = proj.matrix() * lam;  // k x 2 (facet vertices)

  std::vector<Triplet> trip;
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& facet = mesh.facets[f];
    const Eigen::Vector2d n = facet.normal.head<2>();
    const Eigen::Vector2d t = tangent(facet.normal);
    const auto& cols = num.dof;
    const int fv[2] = {facet.vertices[0], facet.vertices[1]};

    const auto& fdofs = hdiv.facet_dofs[f];
    if (!fdofs.empty() && fdofs[0].index >= 0) {
      const int e = facet.owners[0];
      const int le = facet.local_index[0];
      const ElementGeometry g = mesh.element_geometry(e);
      const Eigen::VectorXd signs = hdiv_orientation_signs(basis, mesh, e);
      std::vector<Point> pts;
      Eigen::VectorXd w;
      facet_points(mesh, f, rule, pts, w);
      Eigen::MatrixXd sigma(rule.size(), k + 1);
      for (int q = 0; q < rule.size(); ++q) {
        const HdivEval ph = piola_map(basis.evaluate(g.to_reference(pts[q])), g);
        for (int j = 0; j <= k; ++j) {
          const int i = le * (k + 1) + j;
          sigma(q, j) = signs(i) * ph.values.row(i).dot(n);
        }
      }
      const Eigen::MatrixXd gram = sigma.transpose() * w.asDiagonal() * sigma;
      Eigen::LLT<Eigen::MatrixXd> llt(gram);
      if (llt.info() != Eigen::Success) throw std::runtime_error("singular normal-trace Gram matrix");
      // Right-hand side columns: (vertex i, component c) -> int lambda_i n_c sigma_j
      const Eigen::MatrixXd base = sigma.transpose() * w.asDiagonal() * lam;  // (k+1) x 2
      const Eigen::MatrixXd coef = llt.solve(base);
      for (int j = 0; j <= k; ++j) {
        const int row = problem.layout.map[0][fdofs[j].index] - nl;
        for (int i = 0; i < 2; ++i)
          for (int c = 0; c < 2; ++c)
            if (cols[fv[i]][c] >= 0 && n(c) != 0.0) trip.emplace_back(row, cols[fv[i]][c], coef(j, i) * n(c));
      }
    }
    for (const DofRef& r : tang.facet_dofs[f]) {
      if (r.index < 0) continue;
      const int row = problem.layout.map[1][r.index] - nl;
      for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 2; ++c)
          if (cols[fv[i]][c] >= 0 && t(c) != 0.0 && tang_local(r.local, i) != 0.0)
            trip.emplace_back(row, cols[fv[i]][c], tang_local(r.local, i) * t(c));
    }
  }
  Prolongation p;
  p.matrix = from_triplets(problem.layout.num_global, num.size, trip);
  p.source = tang.bc == BoundaryCondition::none ? "P1_slip^2" : "P1_0^2";
  p.target = "hdiv_facet x tangential_facet";
  return p;
}

BiharmonicTransfer::BiharmonicTransfer(const Mesh& mesh, const ProblemMatrix& aux, const ProblemMatrix& target)
    : mesh_(&mesh), aux_size_(aux.layout.size()), target_size_(target.layout.size()) {
  const Space& xs = target.spaces.at(0);
  const Space& wt = target.spaces.at(1);
  const Space& us = aux.spaces.at(0);
  const Space& wa = aux.spaces.at(1);
  if (xs.kind != SpaceKind::scalar_h1_order_kp1 || !us.is_hdiv())
    throw std::invalid_argument("BiharmonicTransfer needs a plate target and a vector auxiliary problem");
  if (wt.num_dofs != wa.num_dofs || us.degree + 1 != xs.degree)
    throw std::invalid_argument("BiharmonicTransfer: incompatible facet spaces or degrees");
  const int k = us.degree;
  const int nx = xs.num_dofs, nw = wt.num_dofs;

  x_map_ = target.layout.map[0];
  w_map_target_ = target.layout.map[1];
  w_map_aux_ = aux.layout.map[1];

  const HdivBasis hb(k);
  const LagrangeBasis xb(2, k + 1);
  const QuadratureRule vrule = simplex_quadrature(2, 2 * k + 2);
  const QuadratureRule frule = simplex_quadrature(1, 2 * k + 2);
  const FacetProjection proj(1, k - 1, 2 * k + 2);

  std::vector<Triplet> ct, tp, tu;
  fit_.resize(mesh.num_elements());
  fit_res_.resize(mesh.num_elements());
  x_refs_.resize(mesh.num_elements());
  u_refs_.resize(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.element_geometry(e);
    const auto& xr = xs.element_dofs[e];
    const auto& ur = us.element_dofs[e];
    const int nxl = static_cast<int>(xr.size()), nul = static_cast<int>(ur.size());
    for (const auto& r : xr) x_refs_[e].push_back(r.index);
    for (const auto& r : ur) {
      u_refs_[e].push_back(r.index >= 0 ? aux.layout.map[0][r.index] : -1);
    }
    // Volume terms: C = int u_j . curl(psi_i), and the element least-squares fit.
    Eigen::MatrixXd cm = Eigen::MatrixXd::Zero(nxl, nul);
    Eigen::MatrixXd guu = Eigen::MatrixXd::Zero(nul, nul), gux = Eigen::MatrixXd::Zero(nul, nxl);
    Eigen::MatrixXd su(2 * vrule.size(), nul), sx(2 * vrule.size(), nxl);
    for (int q = 0; q < vrule.size(); ++q) {
      const double w = vrule.weights(q) * std::abs(g.det);
      const HdivEval ph = piola_map(hb.evaluate(vrule.points.col(q)), g);
      const Eigen::MatrixXd grad = xb.gradients(vrule.points.col(q)) * g.inverse;
      Eigen::MatrixXd uv(nul, 2), cv(nxl, 2);
      for (int a = 0; a < nul; ++a) uv.row(a) = ur[a].sign * ph.values.row(ur[a].local);
      for (int a = 0; a < nxl; ++a) cv.row(a) << grad(a, 1), -grad(a, 0);
      cm += w * cv * uv.transpose();
      guu += w * uv * uv.transpose();
      gux += w * uv * cv.transpose();
      const double sw = std::sqrt(w);
      su.row(2 * q) = sw * uv.col(0).transpose();
      su.row(2 * q + 1) = sw * uv.col(1).transpose();
      sx.row(2 * q) = sw * cv.col(0).transpose();
      sx.row(2 * q + 1) = sw * cv.col(1).transpose();
    }
    fit_[e] = guu.ldlt().solve(gux);
    fit_res_[e] = su * fit_[e] - sx;
    for (int a = 0; a < nxl; ++a) {
      if (xr[a].index < 0) continue;
      for (int b = 0; b < nul; ++b)
        if (u_refs_[e][b] >= 0 && cm(a, b) != 0.0) ct.emplace_back(xr[a].index, u_refs_[e][b], cm(a, b));
    }
    // Facet averages of the tangential traces.
    for (int i = 0; i < 3; ++i) {
      const int f = mesh.element_facets[e][i];
      const Facet& facet = mesh.facets[f];
      const double weight = facet.is_boundary() ? 1.0 : 0.5;
      const Eigen::Vector2d t = tangent(facet.normal);
      std::vector<Point> pts;
      Eigen::VectorXd w;
      facet_points(mesh, f, frule, pts, w);
      Eigen::MatrixXd sxq(frule.size(), nxl), suq(frule.size(), nul);
      for (int q = 0; q < frule.size(); ++q) {
        const Eigen::VectorXd xh = g.to_reference(pts[q]);
        const Eigen::MatrixXd grad = xb.gradients(xh) * g.inverse;
        for (int a = 0; a < nxl; ++a) sxq(q, a) = grad(a, 1) * t(0) - grad(a, 0) * t(1);
        const HdivEval ph = piola_map(hb.evaluate(xh), g);
        for (int a = 0; a < nul; ++a) suq(q, a) = ur[a].sign * ph.values.row(ur[a].local).dot(t);
      }
      const Eigen::MatrixXd px = weight * proj.matrix() * sxq;
      const Eigen::MatrixXd pu = weight * proj.matrix() * suq;
      for (const DofRef& r : wt.facet_dofs[f]) {
        if (r.index < 0) continue;
        for (int a = 0; a < nxl; ++a)
          if (xr[a].index >= 0 && px(r.local, a) != 0.0) tp.emplace_back(r.index, xr[a].index, px(r.local, a));
        for (int a = 0; a < nul; ++a)
          if (u_refs_[e][a] >= 0 && pu(r.local, a) != 0.0) tu.emplace_back(r.index, u_refs_[e][a], pu(r.local, a));
      }
    }
  }
  c_ = from_triplets(nx, aux_size_, ct);
  t_phi_ = from_triplets(nw, nx, tp);
  t_u_ = from_triplets(nw, aux_size_, tu);
  poisson_ = std::make_unique<SparseCholesky>(h1_stiffness(mesh, xs));
}

BiharmonicTransfer::~BiharmonicTransfer() = default;
BiharmonicTransfer::BiharmonicTransfer(BiharmonicTransfer&&) noexcept = default;

Eigen::VectorXd BiharmonicTransfer::apply(const Eigen::VectorXd& u) const {
  if (u.size() != aux_size_) throw std::invalid_argument("BiharmonicTransfer::apply size mismatch");
  const Eigen::VectorXd phi = poisson_->solve(c_ * u);
  const int nw = static_cast<int>(t_phi_.rows());
  Eigen::VectorXd what(nw);
  for (int i = 0; i < nw; ++i) what(i) = u(w_map_aux_[i]);
  what += t_phi_ * phi - t_u_ * u;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(target_size_);
  for (int i = 0; i < phi.size(); ++i) out(x_map_[i]) = phi(i);
  for (int i = 0; i < nw; ++i) out(w_map_target_[i]) = what(i);
  return out;
}

Eigen::VectorXd BiharmonicTransfer::apply_transpose(const Eigen::VectorXd& r) const {
  if (r.size() != target_size_) throw std::invalid_argument("BiharmonicTransfer::apply_transpose size mismatch");
  const int nx = static_cast<int>(c_.rows()), nw = static_cast<int>(t_phi_.rows());
  Eigen::VectorXd rphi(nx), rw(nw);
  for (int i = 0; i < nx; ++i) rphi(i) = r(x_map_[i]);
  for (int i = 0; i < nw; ++i) rw(i) = r(w_map_target_[i]);
  const Eigen::VectorXd z = poisson_->solve(rphi + t_phi_.transpose() * rw);
  Eigen::VectorXd out = c_.transpose() * z - t_u_.transpose() * rw;
  for (int i = 0; i < nw; ++i) out(w_map_aux_[i]) += rw(i);
  return out;
}

Eigen::VectorXd BiharmonicTransfer::curl_embedding(const Eigen::VectorXd& target) const {
  if (target.size() != target_size_) throw std::invalid_argument("curl_embedding size mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(aux_size_);
  std::vector<char> seen(aux_size_, 0);
  double scale = 0.0;
  for (int i = 0; i < target.size(); ++i) scale = std::max(scale, std::abs(target(i)));
  const double tol = 1e-10 * std::max(scale, 1.0);
  for (size_t e = 0; e < fit_.size(); ++e) {
    const auto& xr = x_refs_[e];
    Eigen::VectorXd xl(xr.size());
    for (size_t a = 0; a < xr.size(); ++a) xl(a) = xr[a] >= 0 ? target(x_map_[xr[a]]) : 0.0;
    const Eigen::VectorXd c = fit_[e] * xl;
    if ((fit_res_[e] * xl).norm() > tol) throw std::runtime_error("curl embedding: field not representable");
    for (size_t a = 0; a < u_refs_[e].size(); ++a) {
      const int idx = u_refs_[e][a];
      const double val = c(a);
      if (idx < 0) {
        if (std::abs(val) > tol) throw std::runtime_error("curl embedding: nonzero constrained coefficient");
        continue;
      }
      if (seen[idx] && std::abs(out(idx) - val) > tol) throw std::runtime_error("curl embedding: inconsistent facet DOF");
      out(idx) = val;
      seen[idx] = 1;
    }
  }
  for (size_t i = 0; i < w_map_target_.size(); ++i) out(w_map_aux_[i]) = target(w_map_target_[i]);
  return out;
}

}  // namespace asphdg
