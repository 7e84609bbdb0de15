#include "asphdg/smoother.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace asphdg {

std::vector<std::vector<int>> element_global_dofs(const Mesh& mesh, const ProblemMatrix& problem) {
  const int nl = problem.layout.num_local;
  std::vector<std::vector<int>> out(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    auto& list = out[e];
    for (size_t b = 0; b < problem.spaces.size(); ++b) {
      const Space& s = problem.spaces[b];
      const auto& map = problem.layout.map[b];
      if (s.is_facet_space()) {
        for (int i = 0; i <= mesh.dim; ++i)
          for (const DofRef& r : s.facet_dofs[mesh.element_facets[e][i]])
            if (r.index >= 0) list.push_back(map[r.index] - nl);
      } else {
        for (const DofRef& r : s.element_dofs[e])
          if (r.index >= 0 && !s.local[r.index]) list.push_back(map[r.index] - nl);
      }
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return out;
}

BlockPartition facet_patch_blocks(const Mesh& mesh, const ProblemMatrix& problem, bool include_boundary_facets) {
  const auto eg = element_global_dofs(mesh, problem);
  BlockPartition p;
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& facet = mesh.facets[f];
    if (facet.is_boundary() && !include_boundary_facets) continue;
    std::vector<int> blk;
    for (int o : facet.owners)
      if (o >= 0) blk.insert(blk.end(), eg[o].begin(), eg[o].end());
    std::sort(blk.begin(), blk.end());
    blk.erase(std::unique(blk.begin(), blk.end()), blk.end());
    if (blk.empty()) continue;
    p.facets.push_back(f);
    p.blocks.push_back(std::move(blk));
  }
  return p;
}

LinearOperator jacobi(const SparseMatrix& a) {
  const int n = static_cast<int>(a.rows());
  auto inv = std::make_shared<Eigen::VectorXd>(n);
  const Eigen::VectorXd d = a.diagonal();
  for (int i = 0; i < n; ++i) {
    if (!(d(i) > 0.0)) throw std::invalid_argument("jacobi: non-positive diagonal entry");
    (*inv)(i) = 1.0 / d(i);
  }
  return LinearOperator(n, n, [inv](const Eigen::VectorXd& r) -> Eigen::VectorXd { return inv->cwiseProduct(r); });
}

namespace {

struct SgsData {
  SparseMatrix a;
  std::vector<std::vector<int>> blocks;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors;

  void relax(int b, const Eigen::VectorXd& r, Eigen::VectorXd& x) const {
    const auto& idx = blocks[b];
    Eigen::VectorXd res(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
      double s = r(idx[i]);
      for (SparseMatrix::InnerIterator it(a, idx[i]); it; ++it) s -= it.value() * x(it.col());
      res(i) = s;
    }
    const Eigen::VectorXd c = factors[b].solve(res);
    for (size_t i = 0; i < idx.size(); ++i) x(idx[i]) += c(i);
  }
};

}  // namespace

LinearOperator block_sgs(const SparseMatrix& a, const BlockPartition& partition) {
  auto data = std::make_shared<SgsData>();
  data->a = a;
  data->blocks = partition.blocks;
  std::vector<char> covered(a.rows(), 0);
  for (const auto& blk : partition.blocks) {
    Eigen::LLT<Eigen::MatrixXd> llt(dense_submatrix(a, blk, blk));
    if (llt.info() != Eigen::Success) throw std::runtime_error("block_sgs: singular block");
    data->factors.push_back(std::move(llt));
    for (int i : blk) covered[i] = 1;
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end())
    throw std::invalid_argument("block_sgs: blocks do not cover every DOF");
  const int n = static_cast<int>(a.rows());
  return LinearOperator(n, n, [data](const Eigen::VectorXd& r) -> Eigen::VectorXd {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(r.size());
    const int nb = static_cast<int>(data->blocks.size());
    for (int b = 0; b < nb; ++b) data->relax(b, r, x);
    for (int b = nb - 1; b >= 0; --b) data->relax(b, r, x);
    return x;
  });
}

}  // namespace asphdg
