#include "asphdg/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "asphdg/hdiv_basis.hpp"
#include "asphdg/quadrature.hpp"
#include "asphdg/scalar_basis.hpp"

namespace asphdg {

namespace {

struct FacetQuadrature {
  std::vector<Point> points;
  Eigen::VectorXd weights;
};

FacetQuadrature map_facet_rule(const Mesh& mesh, int f, const QuadratureRule& rule) {
  const Facet& facet = mesh.facets[f];
  FacetQuadrature q;
  q.points.resize(rule.size());
  const Point& v0 = mesh.vertices[facet.vertices[0]];
  for (int p = 0; p < rule.size(); ++p) {
    Point x = v0;
    for (int i = 1; i < mesh.dim; ++i) x += rule.points(i - 1, p) * (mesh.vertices[facet.vertices[i]] - v0);
    q.points[p] = x;
  }
  q.weights = rule.weights * (facet.measure / reference_simplex_measure(mesh.dim - 1));
  return q;
}

Eigen::Vector2d tangent(const Point& n) { return {n.y(), -n.x()}; }

// Consistency and projected-penalty terms of one facet, for unknowns
// [volume functions (nv), facet functions (nf)] where the facet block starts at facet_offset.
void add_facet_terms(Eigen::MatrixXd& e, int facet_offset, const Eigen::MatrixXd& trace, const Eigen::MatrixXd& flux,
                     const Eigen::MatrixXd& mu, const Eigen::VectorXd& w, double penalty) {
  const int nv = static_cast<int>(trace.cols());
  const int nf = static_cast<int>(mu.cols());
  const Eigen::MatrixXd wa = w.asDiagonal() * flux;
  const Eigen::MatrixXd tva = trace.transpose() * wa;
  e.topLeftCorner(nv, nv) -= tva + tva.transpose();
  const Eigen::MatrixXd fa = mu.transpose() * wa;  // nf x nv
  e.block(facet_offset, 0, nf, nv) += fa;
  e.block(0, facet_offset, nv, nf) += fa.transpose();

  const Eigen::MatrixXd wmu = w.asDiagonal() * mu;
  const Eigen::MatrixXd mass = mu.transpose() * wmu;
  const Eigen::MatrixXd proj = mass.llt().solve(wmu.transpose() * trace);  // nf x nv
  const Eigen::MatrixXd mp = mass * proj;
  e.topLeftCorner(nv, nv) += penalty * proj.transpose() * mp;
  e.block(0, facet_offset, nv, nf) -= penalty * mp.transpose();
  e.block(facet_offset, 0, nf, nv) -= penalty * mp;
  e.block(facet_offset, facet_offset, nf, nf) += penalty * mass;
}

struct ElementSystem {
  std::vector<int> rows;
  std::vector<double> signs;
  Eigen::MatrixXd mat;
  Eigen::VectorXd rhs;

  void scatter(std::vector<Triplet>& trip, Eigen::VectorXd& b) const {
    const int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i) {
      if (rows[i] < 0) continue;
      b(rows[i]) += signs[i] * rhs(i);
      for (int j = 0; j < n; ++j)
        if (rows[j] >= 0 && mat(i, j) != 0.0) trip.emplace_back(rows[i], rows[j], signs[i] * signs[j] * mat(i, j));
    }
  }
};

void push_refs(ElementSystem& sys, const std::vector<DofRef>& refs, const std::vector<int>& map) {
  for (const DofRef& r : refs) {
    sys.rows.push_back(r.index >= 0 ? map[r.index] : -1);
    sys.signs.push_back(r.sign);
  }
}

// Reference values/gradients of a Lagrange basis at the volume rule.
struct VolumeTable {
  QuadratureRule rule;
  std::vector<Eigen::VectorXd> values;
  std::vector<Eigen::MatrixXd> gradients;
  std::vector<Eigen::MatrixXd> hessians;
};

VolumeTable tabulate(const LagrangeBasis& basis, int order, bool with_hessians) {
  VolumeTable t;
  t.rule = simplex_quadrature(basis.dim(), order);
  for (int q = 0; q < t.rule.size(); ++q) {
    t.values.push_back(basis.values(t.rule.points.col(q)));
    t.gradients.push_back(basis.gradients(t.rule.points.col(q)));
    if (with_hessians) t.hessians.push_back(basis.hessians(t.rule.points.col(q)));
  }
  return t;
}

Eigen::Matrix2d physical_hessian(const Eigen::MatrixXd& ref_hessians, int i, const Eigen::Matrix2d& inv) {
  Eigen::Matrix2d h;
  h << ref_hessians(i, 0), ref_hessians(i, 1), ref_hessians(i, 2), ref_hessians(i, 3);
  return inv.transpose() * h * inv;
}

void check_common(int k, double alpha) {
  if (k < 1) throw std::invalid_argument("scheme degree k must be >= 1");
  if (!(alpha > 0)) throw std::invalid_argument("penalty alpha must be positive");
}

ProblemMatrix finish(const Mesh& mesh, std::vector<Space> spaces) {
  ProblemMatrix p;
  p.spaces = std::move(spaces);
  std::vector<const Space*> ptrs;
  for (const auto& s : p.spaces) ptrs.push_back(&s);
  p.layout = make_layout(mesh, ptrs);
  p.rhs = Eigen::VectorXd::Zero(p.layout.size());
  return p;
}

}  // namespace

DofLayout make_layout(const Mesh& mesh, const std::vector<const Space*>& spaces) {
  DofLayout l;
  const int nb = static_cast<int>(spaces.size());
  l.map.resize(nb);
  for (int b = 0; b < nb; ++b) {
    l.map[b].assign(spaces[b]->num_dofs, -1);
    for (int d = 0; d < spaces[b]->num_dofs; ++d)
      if (spaces[b]->local[d]) l.map[b][d] = l.num_local++;
  }
  for (int b = 0; b < nb; ++b) {
    l.global_offsets.push_back(l.num_global);
    for (int d = 0; d < spaces[b]->num_dofs; ++d)
      if (!spaces[b]->local[d]) l.map[b][d] = l.num_local + l.num_global++;
  }
  l.global_offsets.push_back(l.num_global);
  l.element_locals.resize(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int b = 0; b < nb; ++b) {
      if (spaces[b]->element_dofs.empty()) continue;
      for (const DofRef& r : spaces[b]->element_dofs[e])
        if (r.index >= 0 && spaces[b]->local[r.index]) l.element_locals[e].push_back(l.map[b][r.index]);
    }
  return l;
}

ProblemMatrix assemble_scalar_rd(const Mesh& mesh, int k, const TauField& tau, double alpha, const ScalarForcing& f) {
  check_common(k, alpha);
  const int dim = mesh.dim;
  ProblemMatrix p = finish(mesh, {build_space(mesh, SpaceKind::scalar_dg, k, BoundaryCondition::none),
                                  build_space(mesh, SpaceKind::scalar_facet, k - 1, BoundaryCondition::dirichlet)});
  const LagrangeBasis vol(dim, k);
  const LagrangeBasis fac(dim - 1, k - 1);
  const VolumeTable vt = tabulate(vol, 2 * k + 2, false);
  const QuadratureRule frule = simplex_quadrature(dim - 1, 2 * k + 2);
  const Eigen::MatrixXd mu = tabulate_values(fac, frule.points);
  const int nv = vol.size(), nf = fac.size();

  std::vector<Triplet> trip;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.element_geometry(e);
    const double t = tau(mesh.subdomain[e]);
    ElementSystem sys;
    push_refs(sys, p.spaces[0].element_dofs[e], p.layout.map[0]);
    for (int i = 0; i <= dim; ++i) push_refs(sys, p.spaces[1].facet_dofs[mesh.element_facets[e][i]], p.layout.map[1]);
    const int n = nv + (dim + 1) * nf;
    sys.mat = Eigen::MatrixXd::Zero(n, n);
    sys.rhs = Eigen::VectorXd::Zero(n);
    const double jac = std::abs(g.det);
    for (int q = 0; q < vt.rule.size(); ++q) {
      const double w = vt.rule.weights(q) * jac;
      const Eigen::MatrixXd grad = vt.gradients[q] * g.inverse;
      const Eigen::VectorXd& v = vt.values[q];
      sys.mat.topLeftCorner(nv, nv) += w * (grad * grad.transpose() + t * v * v.transpose());
      const double fx = f ? f(g.to_physical(vt.rule.points.col(q))) : 1.0;
      sys.rhs.head(nv) += w * fx * v;
    }
    for (int i = 0; i <= dim; ++i) {
      const int fid = mesh.element_facets[e][i];
      const FacetQuadrature fq = map_facet_rule(mesh, fid, frule);
      const Point nk = mesh.outward_normal(e, fid);
      Eigen::MatrixXd trace(frule.size(), nv), flux(frule.size(), nv);
      for (int q = 0; q < frule.size(); ++q) {
        const Eigen::VectorXd xh = g.to_reference(fq.points[q]);
        trace.row(q) = vol.values(xh).transpose();
        flux.row(q) = (vol.gradients(xh) * g.inverse * nk.head(dim)).transpose();
      }
      add_facet_terms(sys.mat, nv + i * nf, trace, flux, mu, fq.weights, alpha * k * k / mesh.penalty_h(e, fid));
    }
    sys.scatter(trip, p.rhs);
  }
  p.matrix = from_triplets(p.layout.size(), p.layout.size(), trip);
  return p;
}

ProblemMatrix assemble_vector_rd(const Mesh& mesh, int k, const TauField& tau, double alpha, VectorVariant variant,
                                 const VectorForcing& f, bool free_tangential_boundary) {
  check_common(k, alpha);
  if (mesh.dim != 2) throw std::invalid_argument("vector reaction-diffusion is 2D only");
  const SpaceKind kind = variant == VectorVariant::full ? SpaceKind::hdiv_full : SpaceKind::hdiv_cst;
  ProblemMatrix p = finish(
      mesh, {build_space(mesh, kind, k, BoundaryCondition::dirichlet),
             build_space(mesh, SpaceKind::tangential_facet, k - 1,
                         free_tangential_boundary ? BoundaryCondition::none : BoundaryCondition::dirichlet)});
  const HdivBasis basis(k);
  const LagrangeBasis fac(1, k - 1);
  const QuadratureRule vrule = simplex_quadrature(2, 2 * k + 2);
  const QuadratureRule frule = simplex_quadrature(1, 2 * k + 2);
  const Eigen::MatrixXd mu = tabulate_values(fac, frule.points);
  const int nf = fac.size();
  std::vector<HdivEval> ref;
  for (int q = 0; q < vrule.size(); ++q) ref.push_back(basis.evaluate(vrule.points.col(q)));

  std::vector<Triplet> trip;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.element_geometry(e);
    const double t = tau(mesh.subdomain[e]);
    const auto& refs = p.spaces[0].element_dofs[e];
    const int nv = static_cast<int>(refs.size());
    ElementSystem sys;
    push_refs(sys, refs, p.layout.map[0]);
    for (int i = 0; i < 3; ++i) push_refs(sys, p.spaces[1].facet_dofs[mesh.element_facets[e][i]], p.layout.map[1]);
    const int n = nv + 3 * nf;
    sys.mat = Eigen::MatrixXd::Zero(n, n);
    sys.rhs = Eigen::VectorXd::Zero(n);
    const double jac = std::abs(g.det);
    for (int q = 0; q < vrule.size(); ++q) {
      const double w = vrule.weights(q) * jac;
      const HdivEval ph = piola_map(ref[q], g);
      const Eigen::Vector2d fx = f ? f(g.to_physical(vrule.points.col(q))) : Eigen::Vector2d(1.0, 1.0);
      for (int a = 0; a < nv; ++a) {
        const int ia = refs[a].local;
        sys.rhs(a) += w * ph.values.row(ia).dot(fx);
        for (int b = 0; b < nv; ++b) {
          const int ib = refs[b].local;
          sys.mat(a, b) += w * ((ph.jacobians[ia].array() * ph.jacobians[ib].array()).sum() +
                                t * ph.values.row(ia).dot(ph.values.row(ib)));
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      const int fid = mesh.element_facets[e][i];
      const FacetQuadrature fq = map_facet_rule(mesh, fid, frule);
      const Eigen::Vector2d nk = mesh.outward_normal(e, fid).head<2>();
      const Eigen::Vector2d tf = tangent(mesh.facets[fid].normal);
      Eigen::MatrixXd trace(frule.size(), nv), flux(frule.size(), nv);
      for (int q = 0; q < frule.size(); ++q) {
        const HdivEval ph = piola_map(basis.evaluate(g.to_reference(fq.points[q])), g);
        for (int a = 0; a < nv; ++a) {
          const int ia = refs[a].local;
          trace(q, a) = ph.values.row(ia).dot(tf);
          flux(q, a) = (ph.jacobians[ia] * nk).dot(tf);
        }
      }
      add_facet_terms(sys.mat, nv + i * nf, trace, flux, mu, fq.weights, alpha * k * k / mesh.penalty_h(e, fid));
    }
    sys.scatter(trip, p.rhs);
  }
  p.matrix = from_triplets(p.layout.size(), p.layout.size(), trip);
  return p;
}

ProblemMatrix assemble_cip_biharmonic(const Mesh& mesh, int k, const TauField& tau, double alpha, PlateBoundary bc,
                                      const ScalarForcing& f) {
  check_common(k, alpha);
  if (mesh.dim != 2) throw std::invalid_argument("biharmonic scheme is 2D only");
  ProblemMatrix p = finish(
      mesh, {build_space(mesh, SpaceKind::scalar_h1_order_kp1, k + 1, BoundaryCondition::dirichlet),
             build_space(mesh, SpaceKind::tangential_facet, k - 1,
                         bc == PlateBoundary::clamped ? BoundaryCondition::dirichlet : BoundaryCondition::none)});
  const LagrangeBasis vol(2, k + 1);
  const LagrangeBasis fac(1, k - 1);
  const VolumeTable vt = tabulate(vol, 2 * k + 2, true);
  const QuadratureRule frule = simplex_quadrature(1, 2 * k + 2);
  const Eigen::MatrixXd mu = tabulate_values(fac, frule.points);
  const int nv = vol.size(), nf = fac.size();

  std::vector<Triplet> trip;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.element_geometry(e);
    const Eigen::Matrix2d inv = g.inverse;
    const double t = tau(mesh.subdomain[e]);
    ElementSystem sys;
    push_refs(sys, p.spaces[0].element_dofs[e], p.layout.map[0]);
    for (int i = 0; i < 3; ++i) push_refs(sys, p.spaces[1].facet_dofs[mesh.element_facets[e][i]], p.layout.map[1]);
    const int n = nv + 3 * nf;
    sys.mat = Eigen::MatrixXd::Zero(n, n);
    sys.rhs = Eigen::VectorXd::Zero(n);
    const double jac = std::abs(g.det);
    for (int q = 0; q < vt.rule.size(); ++q) {
      const double w = vt.rule.weights(q) * jac;
      const Eigen::MatrixXd grad = vt.gradients[q] * inv;
      std::vector<Eigen::Matrix2d> hs(nv);
      for (int a = 0; a < nv; ++a) hs[a] = physical_hessian(vt.hessians[q], a, inv);
      for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b)
          sys.mat(a, b) += w * ((hs[a].array() * hs[b].array()).sum() + t * grad.row(a).dot(grad.row(b)));
      const double fx = f ? f(g.to_physical(vt.rule.points.col(q))) : 1.0;
      sys.rhs.head(nv) += w * fx * vt.values[q];
    }
    for (int i = 0; i < 3; ++i) {
      const int fid = mesh.element_facets[e][i];
      const FacetQuadrature fq = map_facet_rule(mesh, fid, frule);
      const Eigen::Vector2d nk = mesh.outward_normal(e, fid).head<2>();
      const Eigen::Vector2d tf = tangent(mesh.facets[fid].normal);
      Eigen::MatrixXd trace(frule.size(), nv), flux(frule.size(), nv);
      for (int q = 0; q < frule.size(); ++q) {
        const Eigen::VectorXd xh = g.to_reference(fq.points[q]);
        const Eigen::MatrixXd grad = vol.gradients(xh) * inv;
        const Eigen::MatrixXd hess = vol.hessians(xh);
        for (int a = 0; a < nv; ++a) {
          const Eigen::Vector2d curl(grad(a, 1), -grad(a, 0));
          const Eigen::Matrix2d h = physical_hessian(hess, a, inv);
          const Eigen::Vector2d hn = h * nk;
          trace(q, a) = curl.dot(tf);
          flux(q, a) = hn(1) * tf(0) - hn(0) * tf(1);
        }
      }
      add_facet_terms(sys.mat, nv + i * nf, trace, flux, mu, fq.weights, alpha * k * k / mesh.penalty_h(e, fid));
    }
    sys.scatter(trip, p.rhs);
  }
  p.matrix = from_triplets(p.layout.size(), p.layout.size(), trip);
  return p;
}

VectorP1Numbering vector_p1_numbering(const Mesh& mesh, bool slip) {
  const std::vector<bool> on_boundary = mesh.boundary_vertices();
  VectorP1Numbering out;
  out.dof.assign(mesh.num_vertices(), {-1, -1, -1});
  for (int c = 0; c < mesh.dim; ++c)
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      bool fixed = on_boundary[v];
      if (fixed && slip) {
        const double x = mesh.vertices[v](c);
        fixed = std::abs(x) < 1e-12 || std::abs(x - 1.0) < 1e-12;
      }
      if (!fixed) out.dof[v][c] = out.size++;
    }
  return out;
}

SparseMatrix assemble_aux_p1(const Mesh& mesh, const TauField& tau, bool vector, bool slip) {
  const LagrangeBasis p1(mesh.dim, 1);
  const VolumeTable vt = tabulate(p1, 2, false);
  const int comps = vector ? mesh.dim : 1;
  VectorP1Numbering num = vector_p1_numbering(mesh, vector && slip);
  if (!vector) {
    // scalar: keep only the first component's numbering
    num.size = 0;
    for (auto& d : num.dof) {
      d[0] = d[0] >= 0 ? num.size++ : -1;
    }
  }
  std::vector<Triplet> trip;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.element_geometry(e);
    const double t = tau(mesh.subdomain[e]);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p1.size(), p1.size());
    for (int q = 0; q < vt.rule.size(); ++q) {
      const double w = vt.rule.weights(q) * std::abs(g.det);
      const Eigen::MatrixXd grad = vt.gradients[q] * g.inverse;
      m += w * (grad * grad.transpose() + t * vt.values[q] * vt.values[q].transpose());
    }
    const auto& el = mesh.elements[e];
    for (int c = 0; c < comps; ++c)
      for (int a = 0; a < p1.size(); ++a) {
        const int ra = num.dof[el[a]][c];
        if (ra < 0) continue;
        for (int b = 0; b < p1.size(); ++b) {
          const int rb = num.dof[el[b]][c];
          if (rb >= 0) trip.emplace_back(ra, rb, m(a, b));
        }
      }
  }
  return from_triplets(num.size, num.size, trip);
}

SparseMatrix facet_inner_product(const Mesh& mesh, const Space& facet_space) {
  if (!facet_space.is_facet_space()) throw std::invalid_argument("facet_inner_product needs a facet space");
  const LagrangeBasis fac(mesh.dim - 1, facet_space.degree);
  const QuadratureRule rule = simplex_quadrature(mesh.dim - 1, 2 * facet_space.degree + 2);
  const Eigen::MatrixXd mu = tabulate_values(fac, rule.points);
  const Eigen::MatrixXd ref_mass = mu.transpose() * rule.weights.asDiagonal() * mu;
  std::vector<Triplet> trip;
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const double scale = mesh.facet_h(f) * mesh.facets[f].measure / reference_simplex_measure(mesh.dim - 1);
    const auto& refs = facet_space.facet_dofs[f];
    for (const DofRef& a : refs)
      for (const DofRef& b : refs)
        if (a.index >= 0 && b.index >= 0) trip.emplace_back(a.index, b.index, scale * ref_mass(a.local, b.local));
  }
  return from_triplets(facet_space.num_dofs, facet_space.num_dofs, trip);
}

SparseMatrix vector_inner_product(const Mesh& mesh, const ProblemMatrix& problem, const TauField& tau) {
  const Space& hdiv = problem.spaces.at(0);
  const Space& tang = problem.spaces.at(1);
  if (!hdiv.is_hdiv() || tang.kind != SpaceKind::tangential_facet)
    throw std::invalid_argument("vector_inner_product needs a vector problem");
  const HdivBasis basis(hdiv.degree);
  const QuadratureRule vrule = simplex_quadrature(2, 2 * hdiv.degree + 2);
  std::vector<Triplet> trip;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.element_geometry(e);
    const double h = mesh.element_diameters[e];
    const double scale = 1.0 + tau(mesh.subdomain[e]) * h * h;
    const auto& refs = hdiv.element_dofs[e];
    const int nv = static_cast<int>(refs.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nv, nv);
    for (int q = 0; q < vrule.size(); ++q) {
      const HdivEval ph = piola_map(basis.evaluate(vrule.points.col(q)), g);
      const double w = vrule.weights(q) * std::abs(g.det) * scale;
      for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b) m(a, b) += w * ph.values.row(refs[a].local).dot(ph.values.row(refs[b].local));
    }
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b)
        if (refs[a].index >= 0 && refs[b].index >= 0)
          trip.emplace_back(problem.layout.map[0][refs[a].index], problem.layout.map[0][refs[b].index],
                            refs[a].sign * refs[b].sign * m(a, b));
  }
  const SparseMatrix facet = facet_inner_product(mesh, tang);
  for (int r = 0; r < facet.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(facet, r); it; ++it)
      trip.emplace_back(problem.layout.map[1][r], problem.layout.map[1][it.col()], it.value());
  return from_triplets(problem.layout.size(), problem.layout.size(), trip);
}

SparseMatrix h1_stiffness(const Mesh& mesh, const Space& h1) {
  const LagrangeBasis vol(mesh.dim, h1.degree);
  const VolumeTable vt = tabulate(vol, 2 * h1.degree, false);
  std::vector<Triplet> trip;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.element_geometry(e);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(vol.size(), vol.size());
    for (int q = 0; q < vt.rule.size(); ++q) {
      const Eigen::MatrixXd grad = vt.gradients[q] * g.inverse;
      m += vt.rule.weights(q) * std::abs(g.det) * grad * grad.transpose();
    }
    const auto& refs = h1.element_dofs[e];
    for (int a = 0; a < vol.size(); ++a)
      for (int b = 0; b < vol.size(); ++b)
        if (refs[a].index >= 0 && refs[b].index >= 0) trip.emplace_back(refs[a].index, refs[b].index, m(a, b));
  }
  return from_triplets(h1.num_dofs, h1.num_dofs, trip);
}

double scalar_l2_error(const Mesh& mesh, const ProblemMatrix& problem, const Eigen::VectorXd& solution,
                       const ScalarForcing& exact) {
  const Space& s = problem.spaces.at(0);
  if (s.is_hdiv() || s.is_facet_space()) throw std::invalid_argument("scalar_l2_error needs a scalar volume space");
  const LagrangeBasis vol(mesh.dim, s.degree);
  const QuadratureRule rule = simplex_quadrature(mesh.dim, 2 * s.degree + 6);
  std::vector<Eigen::VectorXd> values;
  for (int q = 0; q < rule.size(); ++q) values.push_back(vol.values(rule.points.col(q)));
  double err = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry g = mesh.element_geometry(e);
    const auto& refs = s.element_dofs[e];
    Eigen::VectorXd c = Eigen::VectorXd::Zero(vol.size());
    for (int a = 0; a < vol.size(); ++a)
      if (refs[a].index >= 0) c(a) = solution(problem.layout.map[0][refs[a].index]);
    for (int q = 0; q < rule.size(); ++q) {
      const double d = values[q].dot(c) - exact(g.to_physical(rule.points.col(q)));
      err += rule.weights(q) * std::abs(g.det) * d * d;
    }
  }
  return std::sqrt(err);
}

}  // namespace asphdg
