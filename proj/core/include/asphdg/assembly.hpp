#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "asphdg/fespace.hpp"
#include "asphdg/mesh.hpp"
#include "asphdg/sparse.hpp"

namespace asphdg {

/// Piecewise constant reaction coefficient: tau1 on subdomain 1, tau2 elsewhere.
struct TauField {
  double tau1 = 1.0;
  double tau2 = 1.0;

  double operator()(int tag) const { return tag == 1 ? tau1 : tau2; }
};

/// Compound numbering of a product of spaces: every local DOF (block order) first,
/// then every global DOF (block order).
struct DofLayout {
  std::vector<std::vector<int>> map;  // map[block][space dof] -> compound index
  int num_local = 0;
  int num_global = 0;
  /// Start of each block inside the global range; size = blocks + 1.
  std::vector<int> global_offsets;
  /// Compound indices of the local DOFs of each element.
  std::vector<std::vector<int>> element_locals;

  int size() const { return num_local + num_global; }
};

DofLayout make_layout(const Mesh& mesh, const std::vector<const Space*>& spaces);

/// Discrete problem over a compound space, ordered as in its DofLayout.
struct ProblemMatrix {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  std::vector<Space> spaces;
  DofLayout layout;
};

enum class VectorVariant { full, cst };
enum class PlateBoundary { simply_supported, clamped };

using ScalarForcing = std::function<double(const Point&)>;
using VectorForcing = std::function<Eigen::Vector2d(const Point&)>;

/// Symmetric interior penalty HDG with projected jumps on W^k x W-hat^{k-1}_0.
/// Forcing defaults to f = 1. Throws std::invalid_argument for k < 1 or alpha <= 0.
ProblemMatrix assemble_scalar_rd(const Mesh& mesh, int k, const TauField& tau, double alpha = 4.0,
                                 const ScalarForcing& f = nullptr);

/// Divergence-conforming HDG on V^k_0 (or V^{k,cst}_0) x tangential V-hat^{k-1}.
/// The facet space is constrained unless `free_tangential_boundary` is set.
/// Forcing defaults to f = (1, 1). Throws std::invalid_argument on 3D meshes.
ProblemMatrix assemble_vector_rd(const Mesh& mesh, int k, const TauField& tau, double alpha = 4.0,
                                 VectorVariant variant = VectorVariant::full, const VectorForcing& f = nullptr,
                                 bool free_tangential_boundary = false);

/// C0 interior penalty HDG for the plate problem on X^{k+1}_0 x tangential V-hat^{k-1};
/// the facet space is free for simply supported and constrained for clamped plates.
ProblemMatrix assemble_cip_biharmonic(const Mesh& mesh, int k, const TauField& tau, double alpha = 4.0,
                                      PlateBoundary bc = PlateBoundary::simply_supported,
                                      const ScalarForcing& f = nullptr);

/// Vertex numbering of continuous vector P1, all x components before all y
/// components. Boundary vertices drop every component, or with `slip` only the
/// normal one (component c is dropped on the sides x_c = 0 and x_c = 1).
struct VectorP1Numbering {
  std::vector<std::array<int, 3>> dof;  // per vertex and component, -1 if constrained
  int size = 0;
};
VectorP1Numbering vector_p1_numbering(const Mesh& mesh, bool slip = false);

/// Continuous P1 stiffness plus tau-weighted mass with homogeneous Dirichlet
/// conditions. The vector version uses vector_p1_numbering(mesh, slip).
SparseMatrix assemble_aux_p1(const Mesh& mesh, const TauField& tau, bool vector = false, bool slip = false);

/// sum_F h_F int_F lambda mu on a facet space (scalar or tangential).
SparseMatrix facet_inner_product(const Mesh& mesh, const Space& facet_space);

/// (1 + tau h^2) int u.v + sum_F h_F int_F tang(u-hat).tang(v-hat) over the compound
/// numbering of a vector problem (block 0 = H(div), block 1 = tangential facets).
SparseMatrix vector_inner_product(const Mesh& mesh, const ProblemMatrix& problem, const TauField& tau);

/// Poisson stiffness int grad(phi).grad(psi) on the H1 block of a biharmonic problem,
/// in that block's own space numbering.
SparseMatrix h1_stiffness(const Mesh& mesh, const Space& h1);

/// L2 error of the volume variable of a full (local + global) solution vector.
double scalar_l2_error(const Mesh& mesh, const ProblemMatrix& problem, const Eigen::VectorXd& solution,
                       const ScalarForcing& exact);

}  // namespace asphdg
