#pragma once

#include <string>
#include <vector>

#include "asphdg/mesh.hpp"

namespace asphdg {

enum class SpaceKind {
  scalar_dg,
  scalar_facet,
  scalar_p1_continuous,
  scalar_h1_order_kp1,
  hdiv_full,
  hdiv_cst,
  tangential_facet,
};

enum class BoundaryCondition { none, dirichlet };

/// One basis function of an element or facet. index is the space DOF, or -1 when
/// the boundary condition removed it; local is the position in the reference basis.
struct DofRef {
  int index = -1;
  int local = 0;
  double sign = 1.0;
};

/// DOF map of a finite element space. `degree` is the polynomial degree of the
/// space itself (k-1 for the facet spaces of a degree-k scheme, k+1 for the
/// biharmonic H1 space).
struct Space {
  SpaceKind kind = SpaceKind::scalar_dg;
  int dim = 2;
  int degree = 0;
  BoundaryCondition bc = BoundaryCondition::none;
  int num_dofs = 0;
  /// Element-attached spaces: basis functions of each element in reference order
  /// (for hdiv_cst the non-solenoidal bubbles are omitted).
  std::vector<std::vector<DofRef>> element_dofs;
  /// Facet-attached DOFs: facet spaces, and the facet families of H(div).
  std::vector<std::vector<DofRef>> facet_dofs;
  /// Per DOF: 1 = element interior (condensable), 0 = skeleton.
  std::vector<char> local;
  /// Per DOF: lies on a boundary entity.
  std::vector<char> boundary;

  int num_local() const;
  int num_global() const { return num_dofs - num_local(); }
  bool is_facet_space() const { return kind == SpaceKind::scalar_facet || kind == SpaceKind::tangential_facet; }
  bool is_hdiv() const { return kind == SpaceKind::hdiv_full || kind == SpaceKind::hdiv_cst; }
};

std::string to_string(SpaceKind kind);

/// Throws std::invalid_argument for an incompatible kind/degree/dimension.
Space build_space(const Mesh& mesh, SpaceKind kind, int degree, BoundaryCondition bc);

/// Map from the unconstrained numbering of `space` (built with bc = none) to the
/// numbering without boundary DOFs; removed DOFs map to -1.
std::vector<int> restrict_dirichlet(const Space& space, const Mesh& mesh);

/// Applies a renumbering produced by restrict_dirichlet.
Space renumber(const Space& space, const std::vector<int>& map, BoundaryCondition bc);

/// Number of reference basis functions per element / per facet.
int element_basis_size(SpaceKind kind, int dim, int degree);
int facet_basis_size(SpaceKind kind, int dim, int degree);

}  // namespace asphdg
