#pragma once

#include <vector>

#include <Eigen/Dense>

#include "asphdg/mesh.hpp"
#include "asphdg/scalar_basis.hpp"

namespace asphdg {

enum class HdivFamily {
  lowest_order_facet,      // lowest-order Raviart-Thomas function of a facet
  facet_divfree,           // curl of an H1 edge bubble
  interior_divfree,        // curl of an H1 element bubble
  interior_nonsolenoidal,  // bubbles completing BDM_k, L2-orthogonal to the curls
};

struct HdivFunctionInfo {
  HdivFamily family;
  int facet = -1;  // local edge for the facet families
  int index = 0;   // position within its family on that entity
};

/// Values of all basis functions at one point.
struct HdivEval {
  Eigen::MatrixXd values;                 // size x 2
  std::vector<Eigen::Matrix2d> jacobians;  // d(u_i)/d(x_j)
  Eigen::VectorXd divergence;
};

/// Hierarchical BDM_k basis on the reference triangle (0,0),(1,0),(0,1).
///
/// Ordering: for each local edge e (opposite vertex e) the k+1 facet functions
/// [RT0, curl of edge bubbles of degree 2..k+1], then the divergence-free interior
/// bubbles, then the non-solenoidal interior bubbles. Edge functions are defined
/// for the edge oriented from its lower to its higher local vertex;
/// orientation_sign() gives the factor for the reversed orientation.
class HdivBasis {
 public:
  explicit HdivBasis(int k);

  int degree() const { return k_; }
  int size() const { return static_cast<int>(info_.size()); }
  int per_facet() const { return k_ + 1; }
  int num_facet_functions() const { return 3 * (k_ + 1); }
  int num_interior_divfree() const { return n_divfree_; }
  int num_interior_nonsolenoidal() const { return n_nonsol_; }
  const std::vector<HdivFunctionInfo>& info() const { return info_; }

  /// Sign of facet function j (0..k) when its edge is traversed the other way.
  static double orientation_sign(int j) { return j == 0 ? -1.0 : ((j - 1) % 2 == 0 ? 1.0 : -1.0); }

  HdivEval evaluate(const Eigen::VectorXd& xhat) const;

  const MonomialSet& monomials() const { return monomials_; }
  const Eigen::MatrixXd& coefficients_x() const { return cx_; }
  const Eigen::MatrixXd& coefficients_y() const { return cy_; }

 private:
  int k_;
  int n_divfree_ = 0;
  int n_nonsol_ = 0;
  MonomialSet monomials_;  // degree k+1; top-degree coefficients of fields vanish
  Eigen::MatrixXd cx_, cy_;
  Eigen::MatrixXd dxx_, dxy_, dyx_, dyy_;
  std::vector<HdivFunctionInfo> info_;
};

/// Builds the hierarchical basis; throws std::invalid_argument for k < 1.
HdivBasis build_hdiv_basis(int k);

/// Contravariant Piola transform of reference evaluations to the physical element:
/// u = J u^ / det J, grad u = J grad^ u^ J^{-1} / det J, div u = div^ u^ / det J.
HdivEval piola_map(const HdivEval& reference, const ElementGeometry& geometry);

/// Orientation signs (per basis function) of a physical triangle, from the global
/// vertex numbering; interior functions get +1.
Eigen::VectorXd hdiv_orientation_signs(const HdivBasis& basis, const Mesh& mesh, int element);

}  // namespace asphdg
