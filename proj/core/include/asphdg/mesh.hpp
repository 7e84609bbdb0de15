#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace asphdg {

using Point = Eigen::Vector3d;

/// A (dim-1)-simplex of the skeleton. Vertices are stored in ascending global
/// order; that ordering defines the facet parametrization used by every facet
/// quadrature and facet basis, so both owners see identical points.
struct Facet {
  std::array<int, 3> vertices{-1, -1, -1};
  std::array<int, 2> owners{-1, -1};
  std::array<int, 2> local_index{-1, -1};  // index of the facet inside each owner
  Point normal = Point::Zero();            // owners[0] -> owners[1]; outward on the boundary
  double measure = 0.0;

  bool is_boundary() const { return owners[1] < 0; }
};

/// Affine map x = v0 + J xhat of an element, with the barycentric gradients.
struct ElementGeometry {
  int dim = 0;
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::MatrixXd jacobian;
  Eigen::MatrixXd inverse;
  double det = 0.0;
  /// Row i is grad(lambda_i) in physical coordinates.
  Eigen::MatrixXd barycentric_gradients;

  Eigen::VectorXd to_reference(const Point& x) const;
  Point to_physical(const Eigen::VectorXd& xhat) const;
};

struct Mesh {
  int dim = 0;
  int n = 0;  // cells per direction
  std::vector<Point> vertices;
  /// dim+1 vertex ids per element, positively oriented; unused slots are -1.
  std::vector<std::array<int, 4>> elements;
  /// Facet id opposite local vertex i.
  std::vector<std::array<int, 4>> element_facets;
  std::vector<Facet> facets;
  std::vector<double> element_diameters;
  std::vector<int> subdomain;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  int num_facets() const { return static_cast<int>(facets.size()); }
  int vertices_per_element() const { return dim + 1; }
  int num_interior_facets() const;
  int num_boundary_facets() const;

  double h_max() const;
  /// Facet length scale h_F = |F|^{1/(dim-1)}, used to weight facet inner products.
  double facet_h(int f) const;
  /// Penalty length scale |K| / |F| of element e over its facet f.
  double penalty_h(int e, int f) const;
  double element_volume(int e) const;
  Point element_barycenter(int e) const;
  ElementGeometry element_geometry(int e) const;
  /// Outward normal of facet f seen from element e.
  Point outward_normal(int e, int f) const;
  /// Per-vertex flag: vertex lies on a boundary facet.
  std::vector<bool> boundary_vertices() const;
};

/// Orientation bookkeeping between a facet and its owners.
struct FacetGeometry {
  Point normal;
  double measure = 0.0;
  std::array<int, 2> owner_local_facet{-1, -1};
  /// vertex_map[s][i]: local vertex index (in owner s) of the facet's i-th sorted vertex.
  std::array<std::array<int, 3>, 2> vertex_map{};
};

/// Uniform N^dim grid of squares/cubes split into 2 triangles / 6 Kuhn tetrahedra.
/// Throws std::invalid_argument for N < 1 or dim outside {2, 3}.
Mesh build_structured_mesh(int dim, int n);

/// Tag 1 iff the element barycenter lies in [0.25,0.5]^d u [0.5,0.75]^d, else 2.
std::vector<int> tag_subdomains(const Mesh& mesh);

FacetGeometry facet_geometry(const Mesh& mesh, int facet_id);

/// Plain-text listing of vertices, elements and facets for debugging.
void write_mesh_listing(const Mesh& mesh, std::ostream& os);

}  // namespace asphdg
