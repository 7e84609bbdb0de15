#include "asphdg/fespace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "asphdg/hdiv_basis.hpp"
#include "asphdg/scalar_basis.hpp"

namespace asphdg {

namespace {

int binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return static_cast<int>(b);
}

bool on_unit_boundary(const Point& x, int dim) {
  for (int d = 0; d < dim; ++d)
    if (std::abs(x(d)) < 1e-12 || std::abs(x(d) - 1.0) < 1e-12) return true;
  return false;
}

Space build_h1(const Mesh& mesh, SpaceKind kind, int degree) {
  Space s;
  const LagrangeBasis basis(mesh.dim, degree);
  std::map<std::vector<int>, int> ids;
  s.element_dofs.resize(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.elements[e];
    const ElementGeometry g = mesh.element_geometry(e);
    for (int i = 0; i < basis.size(); ++i) {
      const LatticeNode& node = basis.nodes()[i];
      const bool interior = node.support == mesh.dim + 1 && degree > 0;
      std::vector<int> key;
      if (interior) {
        key = {-1, e, i};
      } else {
        std::vector<std::pair<int, int>> parts;
        for (int v = 0; v <= mesh.dim; ++v)
          if (node.multi[v] > 0) parts.emplace_back(el[v], node.multi[v]);
        std::sort(parts.begin(), parts.end());
        for (auto [v, m] : parts) {
          key.push_back(v);
          key.push_back(m);
        }
      }
      auto [it, fresh] = ids.emplace(key, s.num_dofs);
      if (fresh) {
        ++s.num_dofs;
        s.local.push_back(interior ? 1 : 0);
        s.boundary.push_back(!interior && on_unit_boundary(g.to_physical(node.point), mesh.dim) ? 1 : 0);
      }
      s.element_dofs[e].push_back({it->second, i, 1.0});
    }
  }
  (void)kind;
  return s;
}

Space build_facet(const Mesh& mesh, int degree) {
  Space s;
  const int nf = binomial(degree + mesh.dim - 1, mesh.dim - 1);
  s.facet_dofs.resize(mesh.num_facets());
  for (int f = 0; f < mesh.num_facets(); ++f)
    for (int j = 0; j < nf; ++j) {
      s.facet_dofs[f].push_back({s.num_dofs++, j, 1.0});
      s.local.push_back(0);
      s.boundary.push_back(mesh.facets[f].is_boundary() ? 1 : 0);
    }
  return s;
}

Space build_hdiv(const Mesh& mesh, SpaceKind kind, int k) {
  Space s;
  const HdivBasis basis(k);
  const int pf = basis.per_facet();
  s.facet_dofs.resize(mesh.num_facets());
  for (int f = 0; f < mesh.num_facets(); ++f)
    for (int j = 0; j < pf; ++j) {
      s.facet_dofs[f].push_back({s.num_dofs++, j, 1.0});
      s.local.push_back(0);
      s.boundary.push_back(mesh.facets[f].is_boundary() ? 1 : 0);
    }
  s.element_dofs.resize(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Eigen::VectorXd signs = hdiv_orientation_signs(basis, mesh, e);
    for (int i = 0; i < basis.size(); ++i) {
      const HdivFunctionInfo& inf = basis.info()[i];
      if (inf.facet >= 0) {
        const int f = mesh.element_facets[e][inf.facet];
        s.element_dofs[e].push_back({f * pf + inf.index, i, signs(i)});
      } else if (inf.family == HdivFamily::interior_divfree ||
                 (inf.family == HdivFamily::interior_nonsolenoidal && kind == SpaceKind::hdiv_full)) {
        s.element_dofs[e].push_back({s.num_dofs++, i, 1.0});
        s.local.push_back(1);
        s.boundary.push_back(0);
      }
    }
  }
  return s;
}

}  // namespace

int Space::num_local() const {
  int n = 0;
  for (char c : local) n += c;
  return n;
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::scalar_dg: return "scalar_dg";
    case SpaceKind::scalar_facet: return "scalar_facet";
    case SpaceKind::scalar_p1_continuous: return "scalar_p1_continuous";
    case SpaceKind::scalar_h1_order_kp1: return "scalar_h1_order_kp1";
    case SpaceKind::hdiv_full: return "hdiv_full";
    case SpaceKind::hdiv_cst: return "hdiv_cst";
    case SpaceKind::tangential_facet: return "tangential_facet";
  }
  return "unknown";
}

int element_basis_size(SpaceKind kind, int dim, int degree) {
  switch (kind) {
    case SpaceKind::scalar_dg:
    case SpaceKind::scalar_h1_order_kp1: return binomial(degree + dim, dim);
    case SpaceKind::scalar_p1_continuous: return dim + 1;
    case SpaceKind::hdiv_full: return (degree + 1) * (degree + 2);
    case SpaceKind::hdiv_cst: return (degree + 1) * (degree + 2) - (degree - 1) * (degree + 2) / 2;
    default: return 0;
  }
}

int facet_basis_size(SpaceKind kind, int dim, int degree) {
  switch (kind) {
    case SpaceKind::scalar_facet:
    case SpaceKind::tangential_facet: return binomial(degree + dim - 1, dim - 1);
    case SpaceKind::hdiv_full:
    case SpaceKind::hdiv_cst: return degree + 1;
    default: return 0;
  }
}

std::vector<int> restrict_dirichlet(const Space& space, const Mesh& mesh) {
  (void)mesh;
  std::vector<int> map(space.num_dofs, -1);
  int next = 0;
  for (int d = 0; d < space.num_dofs; ++d)
    if (!space.boundary[d]) map[d] = next++;
  return map;
}

Space renumber(const Space& space, const std::vector<int>& map, BoundaryCondition bc) {
  Space out = space;
  out.bc = bc;
  int n = 0;
  for (int m : map) n = std::max(n, m + 1);
  out.num_dofs = n;
  out.local.assign(n, 0);
  out.boundary.assign(n, 0);
  for (int d = 0; d < space.num_dofs; ++d)
    if (map[d] >= 0) {
      out.local[map[d]] = space.local[d];
      out.boundary[map[d]] = space.boundary[d];
    }
  auto apply = [&](std::vector<std::vector<DofRef>>& lists) {
    for (auto& list : lists)
      for (auto& ref : list)
        if (ref.index >= 0) ref.index = map[ref.index];
  };
  apply(out.element_dofs);
  apply(out.facet_dofs);
  return out;
}

Space build_space(const Mesh& mesh, SpaceKind kind, int degree, BoundaryCondition bc) {
  if (degree < 0) throw std::invalid_argument("negative space degree");
  Space s;
  switch (kind) {
    case SpaceKind::scalar_dg: {
      const int nb = binomial(degree + mesh.dim, mesh.dim);
      s.element_dofs.resize(mesh.num_elements());
      for (int e = 0; e < mesh.num_elements(); ++e)
        for (int i = 0; i < nb; ++i) {
          s.element_dofs[e].push_back({s.num_dofs++, i, 1.0});
          s.local.push_back(1);
          s.boundary.push_back(0);
        }
      break;
    }
    case SpaceKind::scalar_facet:
      s = build_facet(mesh, degree);
      break;
    case SpaceKind::tangential_facet:
      if (mesh.dim != 2) throw std::invalid_argument("tangential facet space is 2D only");
      s = build_facet(mesh, degree);
      break;
    case SpaceKind::scalar_p1_continuous:
      if (degree != 1) throw std::invalid_argument("scalar_p1_continuous has degree 1");
      s = build_h1(mesh, kind, 1);
      for (auto& c : s.local) c = 0;
      break;
    case SpaceKind::scalar_h1_order_kp1:
      if (degree < 1) throw std::invalid_argument("H1 space needs degree >= 1");
      s = build_h1(mesh, kind, degree);
      break;
    case SpaceKind::hdiv_full:
    case SpaceKind::hdiv_cst:
      if (mesh.dim != 2) throw std::invalid_argument("H(div) spaces are 2D only");
      if (degree < 1) throw std::invalid_argument("H(div) space needs degree >= 1");
      s = build_hdiv(mesh, kind, degree);
      break;
  }
  s.kind = kind;
  s.dim = mesh.dim;
  s.degree = degree;
  s.bc = BoundaryCondition::none;
  if (bc == BoundaryCondition::dirichlet) return renumber(s, restrict_dirichlet(s, mesh), bc);
  return s;
}

}  // namespace asphdg
