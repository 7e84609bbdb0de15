#pragma once

#include <vector>

#include "asphdg/assembly.hpp"
#include "asphdg/linear_operator.hpp"
#include "asphdg/mesh.hpp"
#include "asphdg/sparse.hpp"

namespace asphdg {

/// One block per keyed facet: sorted global DOFs of every element owning the facet.
struct BlockPartition {
  std::vector<int> facets;               // facet id of each block
  std::vector<std::vector<int>> blocks;  // global DOF indices (compound - num_local)

  int size() const { return static_cast<int>(blocks.size()); }
};

/// Global DOFs of each element of a problem (condensed numbering).
std::vector<std::vector<int>> element_global_dofs(const Mesh& mesh, const ProblemMatrix& problem);

/// Facet-patch blocks keyed on interior facets, plus boundary facets when requested.
BlockPartition facet_patch_blocks(const Mesh& mesh, const ProblemMatrix& problem, bool include_boundary_facets);

/// r -> diag(A)^{-1} r. Throws std::invalid_argument for a non-positive diagonal entry.
LinearOperator jacobi(const SparseMatrix& a);

/// Symmetric multiplicative Schwarz: forward sweep over the blocks in order, then
/// backward, with dense local solves. Throws std::runtime_error for a singular block.
LinearOperator block_sgs(const SparseMatrix& a, const BlockPartition& blocks);

}  // namespace asphdg
