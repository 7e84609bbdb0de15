#pragma once

#include <memory>
#include <string>

#include <Eigen/Dense>

#include "asphdg/assembly.hpp"
#include "asphdg/mesh.hpp"
#include "asphdg/sparse.hpp"

namespace asphdg {

/// Coefficient map from an auxiliary space into the global (condensed) DOFs of a problem.
struct Prolongation {
  SparseMatrix matrix;  // target x source
  std::string source;
  std::string target;

  Eigen::VectorXd apply(const Eigen::VectorXd& w) const { return matrix * w; }
};

/// Facet-wise L2 projection of continuous P1 (homogeneous Dirichlet) traces onto the
/// skeleton space of a scalar problem.
Prolongation build_scalar_prolongation(const Mesh& mesh, const ProblemMatrix& problem);

/// Vector P1 (components stacked x then y) into the skeleton of a vector problem:
/// normal-trace projection onto the facet H(div) families, tangential P_{k-1} projection.
/// Throws std::runtime_error for a singular facet normal-trace Gram matrix.
Prolongation build_vector_prolongation(const Mesh& mesh, const ProblemMatrix& problem);

/// Transpose action, i.e. the residual-space adjoint.
inline Eigen::VectorXd apply_adjoint(const Prolongation& p, const Eigen::VectorXd& r) {
  if (r.size() != p.matrix.rows()) throw std::invalid_argument("apply_adjoint: size mismatch");
  return p.matrix.transpose() * r;
}

class SparseCholesky;

/// Map between the constant-divergence vector problem (auxiliary) and the plate
/// problem (target), both on full compound vectors (local + global DOFs):
///   phi   = stream function solving int curl(phi).curl(psi) = int u.curl(psi)
///   w-hat = u-hat + tang P_{k-1}<curl(phi) - u>
/// The curl embedding (phi, w-hat) -> (curl phi, w-hat) is a right inverse.
class BiharmonicTransfer {
 public:
  BiharmonicTransfer(const Mesh& mesh, const ProblemMatrix& aux, const ProblemMatrix& target);
  ~BiharmonicTransfer();
  BiharmonicTransfer(BiharmonicTransfer&&) noexcept;

  int aux_size() const { return aux_size_; }
  int target_size() const { return target_size_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& aux_vector) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& target_residual) const;

  /// Coefficients of curl(phi) in the auxiliary H(div) space. Throws std::runtime_error
  /// if the element-wise fit leaves a residual above 1e-10.
  Eigen::VectorXd curl_embedding(const Eigen::VectorXd& target_vector) const;

 private:
  const Mesh* mesh_;
  int aux_size_ = 0;
  int target_size_ = 0;
  std::vector<int> x_map_;       // X dof -> target compound index (or -1)
  std::vector<int> w_map_target_;
  std::vector<int> w_map_aux_;
  SparseMatrix c_;       // X dofs x aux compound
  SparseMatrix t_phi_;   // facet dofs x X dofs
  SparseMatrix t_u_;     // facet dofs x aux compound
  std::unique_ptr<SparseCholesky> poisson_;
  // Element-wise least-squares data for the curl embedding.
  std::vector<Eigen::MatrixXd> fit_;       // cst coefficients from local X coefficients
  std::vector<Eigen::MatrixXd> fit_res_;   // residual operator (quadrature samples)
  std::vector<std::vector<int>> x_refs_;   // X dofs of each element (-1 removed)
  std::vector<std::vector<int>> u_refs_;   // aux compound index of each cst function (-1 removed)
};

}  // namespace asphdg
