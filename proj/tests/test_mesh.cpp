#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "asphdg/mesh.hpp"
#include "asphdg/quadrature.hpp"

using namespace asphdg;

namespace {

double inradius(const Mesh& m, int e) {
  double surface = 0;
  for (int i = 0; i <= m.dim; ++i) surface += m.facets[m.element_facets[e][i]].measure;
  return m.dim * m.element_volume(e) / surface;
}

Point facet_centroid(const Mesh& m, const Facet& f) {
  Point c = Point::Zero();
  for (int i = 0; i < m.dim; ++i) c += m.vertices[f.vertices[i]];
  return c / m.dim;
}

}  // namespace

TEST_CASE("structured mesh element and facet counts") {
  Mesh m21 = build_structured_mesh(2, 1);
  CHECK(m21.num_elements() == 2);
  CHECK(m21.num_facets() == 5);
  CHECK(m21.num_interior_facets() == 1);

  Mesh m22 = build_structured_mesh(2, 2);
  CHECK(m22.num_elements() == 8);
  CHECK(m22.num_facets() == 16);
  CHECK(m22.num_interior_facets() == 8);

  Mesh m31 = build_structured_mesh(3, 1);
  CHECK(m31.num_elements() == 6);
  CHECK(m31.num_facets() == 18);
  CHECK(m31.num_interior_facets() == 6);
  CHECK(m31.num_boundary_facets() == 12);

  for (int n : {3, 5}) {
    CHECK(build_structured_mesh(2, n).num_elements() == 2 * n * n);
    CHECK(build_structured_mesh(3, n).num_elements() == 6 * n * n * n);
  }
}

TEST_CASE("mesh construction rejects bad arguments") {
  CHECK_THROWS_AS(build_structured_mesh(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_structured_mesh(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_structured_mesh(1, 2), std::invalid_argument);
}

TEST_CASE("mesh invariants") {
  for (int dim : {2, 3})
    for (int n : {1, 2, 4}) {
      CAPTURE(dim);
      CAPTURE(n);
      Mesh m = build_structured_mesh(dim, n);
      double vol = 0;
      for (int e = 0; e < m.num_elements(); ++e) {
        CHECK(m.element_volume(e) > 0);
        vol += m.element_volume(e);
      }
      CHECK(vol == doctest::Approx(1.0).epsilon(1e-13));

      double boundary = 0;
      for (const auto& f : m.facets) {
        CHECK(std::abs(f.normal.norm() - 1.0) < 1e-14);
        const Point fc = facet_centroid(m, f);
        const Point c0 = m.element_barycenter(f.owners[0]);
        if (f.is_boundary()) {
          boundary += f.measure;
          CHECK(f.normal.dot(fc - c0) > 0);
        } else {
          CHECK(f.owners[0] < f.owners[1]);
          CHECK(f.normal.dot(m.element_barycenter(f.owners[1]) - c0) > 0);
        }
      }
      CHECK(std::abs(boundary - (dim == 2 ? 4.0 : 6.0)) < 1e-12);

      // Shape regularity: h_K / inradius is the same for every N.
      double worst = 0;
      for (int e = 0; e < m.num_elements(); ++e) worst = std::max(worst, m.element_diameters[e] / inradius(m, e));
      const double reference = dim == 2 ? 2.0 + 2.0 * std::sqrt(2.0) : 0.0;
      if (dim == 2) CHECK(worst == doctest::Approx(reference));
      static double first3 = 0;
      if (dim == 3) {
        if (n == 1) first3 = worst;
        CHECK(worst == doctest::Approx(first3));
      }
      CHECK(m.h_max() == doctest::Approx(std::sqrt(double(dim)) / n));
    }
}

TEST_CASE("facet quadrature points coincide from both owners") {
  for (int dim : {2, 3}) {
    Mesh m = build_structured_mesh(dim, 2);
    QuadratureRule rule = simplex_quadrature(dim - 1, 4);
    for (int fid = 0; fid < m.num_facets(); ++fid) {
      const Facet& f = m.facets[fid];
      if (f.is_boundary()) continue;
      FacetGeometry g = facet_geometry(m, fid);
      for (int s = 0; s < 2; ++s)
        for (int i = 0; i < dim; ++i)
          CHECK(m.elements[f.owners[s]][g.vertex_map[s][i]] == f.vertices[i]);
      ElementGeometry g0 = m.element_geometry(f.owners[0]);
      ElementGeometry g1 = m.element_geometry(f.owners[1]);
      for (int q = 0; q < rule.size(); ++q) {
        Point x = m.vertices[f.vertices[0]];
        for (int i = 1; i < dim; ++i) x += rule.points(i - 1, q) * (m.vertices[f.vertices[i]] - m.vertices[f.vertices[0]]);
        // Reconstruct the point from each owner's local vertex ordering.
        for (int s = 0; s < 2; ++s) {
          const ElementGeometry& g_s = s == 0 ? g0 : g1;
          Eigen::VectorXd xh = g_s.to_reference(x);
          CHECK((g_s.to_physical(xh) - x).norm() < 1e-13);
        }
        Eigen::VectorXd lam0(dim + 1), lam1(dim + 1);
        Eigen::VectorXd r0 = g0.to_reference(x), r1 = g1.to_reference(x);
        lam0 << 1 - r0.sum(), r0;
        lam1 << 1 - r1.sum(), r1;
        for (int i = 0; i < dim; ++i)
          CHECK(std::abs(lam0(g.vertex_map[0][i]) - lam1(g.vertex_map[1][i])) < 1e-13);
      }
    }
  }
}

TEST_CASE("facet geometry examples on the 2x1 mesh") {
  Mesh m = build_structured_mesh(2, 1);
  bool saw_left = false, saw_diag = false;
  for (int fid = 0; fid < m.num_facets(); ++fid) {
    FacetGeometry g = facet_geometry(m, fid);
    CHECK(std::abs(g.normal.norm() - 1.0) < 1e-14);
    CHECK(g.measure > 0);
    const Facet& f = m.facets[fid];
    Point a = m.vertices[f.vertices[0]], b = m.vertices[f.vertices[1]];
    if (a.x() == 0 && b.x() == 0) {
      saw_left = true;
      CHECK((g.normal - Point(-1, 0, 0)).norm() < 1e-14);
    }
    if (!f.is_boundary()) {
      saw_diag = true;
      CHECK(g.measure == doctest::Approx(std::sqrt(2.0)));
    }
  }
  CHECK(saw_left);
  CHECK(saw_diag);
}

TEST_CASE("subdomain tags") {
  Mesh m = build_structured_mesh(2, 8);
  int ones = 0;
  for (int e = 0; e < m.num_elements(); ++e) {
    ones += m.subdomain[e] == 1;
    Point c = m.element_barycenter(e);
    bool in = (c.x() > 0.25 && c.x() < 0.5 && c.y() > 0.25 && c.y() < 0.5) ||
              (c.x() > 0.5 && c.x() < 0.75 && c.y() > 0.5 && c.y() < 0.75);
    CHECK((m.subdomain[e] == 1) == in);
  }
  CHECK(ones == 16);

  // Single-element checks through a hand-built mesh.
  Mesh tiny = build_structured_mesh(2, 1);
  tiny.vertices = {Point(0.2, 0.2, 0), Point(0.4, 0.3, 0), Point(0.3, 0.4, 0), Point(0.1, 0.9, 0)};
  tiny.elements = {{0, 1, 2, -1}, {3, 3, 3, -1}};
  std::vector<int> tags = tag_subdomains(tiny);
  CHECK(tags[0] == 1);  // barycenter (0.3, 0.3)
  CHECK(tags[1] == 2);  // barycenter (0.1, 0.9)

  Mesh m3 = build_structured_mesh(3, 4);
  int ones3 = 0;
  for (int t : m3.subdomain) ones3 += t == 1;
  CHECK(ones3 == 2 * 6);
}

TEST_CASE("mesh construction is deterministic") {
  for (int dim : {2, 3}) {
    std::ostringstream a, b;
    write_mesh_listing(build_structured_mesh(dim, 3), a);
    write_mesh_listing(build_structured_mesh(dim, 3), b);
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());
  }
}
