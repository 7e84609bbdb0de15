#include "asphdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace asphdg {

Eigen::VectorXd ElementGeometry::to_reference(const Point& x) const {
  return inverse * (x - origin).head(dim);
}

Point ElementGeometry::to_physical(const Eigen::VectorXd& xhat) const {
  Point x = origin;
  x.head(dim) += jacobian * xhat;
  return x;
}

namespace {

double simplex_volume(const Mesh& mesh, const std::array<int, 4>& el, int dim) {
  Eigen::MatrixXd jac(dim, dim);
  for (int i = 0; i < dim; ++i)
    jac.col(i) = (mesh.vertices[el[i + 1]] - mesh.vertices[el[0]]).head(dim);
  double fact = dim == 2 ? 2.0 : 6.0;
  return jac.determinant() / fact;
}

double facet_measure(const Mesh& mesh, const std::array<int, 3>& fv, int dim) {
  const Point& a = mesh.vertices[fv[0]];
  const Point& b = mesh.vertices[fv[1]];
  if (dim == 2) return (b - a).norm();
  const Point& c = mesh.vertices[fv[2]];
  return 0.5 * (b - a).cross(c - a).norm();
}

}  // namespace

int Mesh::num_interior_facets() const {
  return static_cast<int>(std::count_if(facets.begin(), facets.end(),
                                        [](const Facet& f) { return !f.is_boundary(); }));
}

int Mesh::num_boundary_facets() const { return num_facets() - num_interior_facets(); }

double Mesh::h_max() const {
  return *std::max_element(element_diameters.begin(), element_diameters.end());
}

double Mesh::facet_h(int f) const {
  double m = facets[f].measure;
  return dim == 2 ? m : std::sqrt(m);
}

double Mesh::penalty_h(int e, int f) const {
  return element_volume(e) / facets[f].measure;
}

double Mesh::element_volume(int e) const { return simplex_volume(*this, elements[e], dim); }

Point Mesh::element_barycenter(int e) const {
  Point c = Point::Zero();
  for (int i = 0; i <= dim; ++i) c += vertices[elements[e][i]];
  return c / (dim + 1);
}

ElementGeometry Mesh::element_geometry(int e) const {
  ElementGeometry g;
  g.dim = dim;
  const auto& el = elements[e];
  g.origin = vertices[el[0]];
  g.jacobian.resize(dim, dim);
  for (int i = 0; i < dim; ++i) g.jacobian.col(i) = (vertices[el[i + 1]] - g.origin).head(dim);
  g.det = g.jacobian.determinant();
  if (!(g.det > 0.0)) throw std::runtime_error("degenerate or inverted element");
  g.inverse = g.jacobian.inverse();
  // grad(lambda_i) = J^{-T} e_{i-1} for i >= 1, and lambda_0 = 1 - sum.
  g.barycentric_gradients.resize(dim + 1, dim);
  Eigen::MatrixXd inv_t = g.inverse.transpose();
  for (int i = 0; i < dim; ++i) g.barycentric_gradients.row(i + 1) = inv_t.col(i).transpose();
  g.barycentric_gradients.row(0) = -g.barycentric_gradients.bottomRows(dim).colwise().sum();
  return g;
}

Point Mesh::outward_normal(int e, int f) const {
  return facets[f].owners[0] == e ? facets[f].normal : Point(-facets[f].normal);
}

std::vector<bool> Mesh::boundary_vertices() const {
  std::vector<bool> on(vertices.size(), false);
  for (const auto& f : facets)
    if (f.is_boundary())
      for (int i = 0; i < dim; ++i) on[f.vertices[i]] = true;
  return on;
}

Mesh build_structured_mesh(int dim, int n) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  if (n < 1) throw std::invalid_argument("N must be positive");

  Mesh mesh;
  mesh.dim = dim;
  mesh.n = n;
  const int np = n + 1;
  const double h = 1.0 / n;

  if (dim == 2) {
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) mesh.vertices.emplace_back(i * h, j * h, 0.0);
    auto vid = [np](int i, int j) { return i + np * j; };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
        mesh.elements.push_back({v00, v10, v11, -1});
        mesh.elements.push_back({v00, v11, v01, -1});
      }
  } else {
    for (int l = 0; l <= n; ++l)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) mesh.vertices.emplace_back(i * h, j * h, l * h);
    auto vid = [np](int i, int j, int l) { return i + np * (j + np * l); };
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          std::array<int, 3> perm{0, 1, 2};
          do {
            std::array<int, 3> c{i, j, l};
            std::array<int, 4> tet{};
            tet[0] = vid(c[0], c[1], c[2]);
            for (int s = 0; s < 3; ++s) {
              ++c[perm[s]];
              tet[s + 1] = vid(c[0], c[1], c[2]);
            }
            if (simplex_volume(mesh, tet, 3) < 0) std::swap(tet[2], tet[3]);
            mesh.elements.push_back(tet);
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
  }

  const int ne = mesh.num_elements();
  const int nv = dim + 1;
  mesh.element_facets.assign(ne, {-1, -1, -1, -1});
  std::map<std::array<int, 3>, int> lookup;
  for (int e = 0; e < ne; ++e) {
    const auto& el = mesh.elements[e];
    for (int lf = 0; lf < nv; ++lf) {
      std::array<int, 3> key{-1, -1, -1};
      int c = 0;
      for (int i = 0; i < nv; ++i)
        if (i != lf) key[c++] = el[i];
      std::sort(key.begin(), key.begin() + dim);
      auto [it, inserted] = lookup.try_emplace(key, mesh.num_facets());
      if (inserted) {
        Facet f;
        f.vertices = key;
        f.owners[0] = e;
        f.local_index[0] = lf;
        mesh.facets.push_back(f);
      } else {
        Facet& f = mesh.facets[it->second];
        if (f.owners[1] >= 0) throw std::logic_error("facet with more than two owners");
        f.owners[1] = e;
        f.local_index[1] = lf;
      }
      mesh.element_facets[e][lf] = it->second;
    }
  }

  for (auto& f : mesh.facets) {
    f.measure = facet_measure(mesh, f.vertices, dim);
    const auto& el = mesh.elements[f.owners[0]];
    const Point& a = mesh.vertices[f.vertices[0]];
    Point nrm;
    if (dim == 2) {
      Point t = mesh.vertices[f.vertices[1]] - a;
      nrm = Point(t.y(), -t.x(), 0.0);
    } else {
      nrm = (mesh.vertices[f.vertices[1]] - a).cross(mesh.vertices[f.vertices[2]] - a);
    }
    nrm.normalize();
    // Orient away from the vertex of owner 0 that is not on the facet.
    const Point& opposite = mesh.vertices[el[f.local_index[0]]];
    if (nrm.dot(opposite - a) > 0) nrm = -nrm;
    f.normal = nrm;
  }

  mesh.element_diameters.resize(ne);
  for (int e = 0; e < ne; ++e) {
    double d = 0;
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b)
        d = std::max(d, (mesh.vertices[mesh.elements[e][a]] - mesh.vertices[mesh.elements[e][b]]).norm());
    mesh.element_diameters[e] = d;
  }
  mesh.subdomain = tag_subdomains(mesh);
  return mesh;
}

std::vector<int> tag_subdomains(const Mesh& mesh) {
  std::vector<int> tags(mesh.num_elements());
  auto inside = [&](const Point& c, double lo, double hi) {
    for (int i = 0; i < mesh.dim; ++i)
      if (c[i] < lo || c[i] > hi) return false;
    return true;
  };
  for (int e = 0; e < mesh.num_elements(); ++e) {
    Point c = mesh.element_barycenter(e);
    tags[e] = (inside(c, 0.25, 0.5) || inside(c, 0.5, 0.75)) ? 1 : 2;
  }
  return tags;
}

FacetGeometry facet_geometry(const Mesh& mesh, int facet_id) {
  const Facet& f = mesh.facets.at(facet_id);
  FacetGeometry g;
  g.normal = f.normal;
  g.measure = f.measure;
  for (int s = 0; s < 2; ++s) {
    g.owner_local_facet[s] = f.local_index[s];
    g.vertex_map[s] = {-1, -1, -1};
    if (f.owners[s] < 0) continue;
    const auto& el = mesh.elements[f.owners[s]];
    for (int i = 0; i < mesh.dim; ++i)
      for (int lv = 0; lv <= mesh.dim; ++lv)
        if (el[lv] == f.vertices[i]) g.vertex_map[s][i] = lv;
  }
  return g;
}

void write_mesh_listing(const Mesh& mesh, std::ostream& os) {
  os << "dim " << mesh.dim << " N " << mesh.n << "\n";
  os << "vertices " << mesh.num_vertices() << "\n";
  for (const auto& v : mesh.vertices) {
    for (int i = 0; i < mesh.dim; ++i) os << (i ? " " : "") << v[i];
    os << "\n";
  }
  os << "elements " << mesh.num_elements() << "\n";
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int i = 0; i <= mesh.dim; ++i) os << (i ? " " : "") << mesh.elements[e][i];
    os << " tag " << mesh.subdomain[e] << "\n";
  }
  os << "facets " << mesh.num_facets() << "\n";
  for (const auto& f : mesh.facets) {
    for (int i = 0; i < mesh.dim; ++i) os << (i ? " " : "") << f.vertices[i];
    os << " owners " << f.owners[0] << " " << f.owners[1] << " measure " << f.measure << "\n";
  }
}

}  // namespace asphdg
