#include "asphdg/condense.hpp"

#include <algorithm>
#include <stdexcept>

namespace asphdg {

CondensedSystem condense(const ProblemMatrix& problem, const Eigen::VectorXd& rhs) {
  const SparseMatrix& a = problem.matrix;
  const int nl = problem.layout.num_local;
  const int ng = problem.layout.num_global;
  if (rhs.size() != nl + ng) throw std::invalid_argument("condense: rhs size mismatch");
  CondensedSystem sys;
  sys.num_local = nl;
  sys.num_global = ng;
  sys.rhs = rhs;

  std::vector<Triplet> trip;
  for (int r = nl; r < nl + ng; ++r)
    for (SparseMatrix::InnerIterator it(a, r); it; ++it)
      if (it.col() >= nl) trip.emplace_back(r - nl, it.col() - nl, it.value());

  for (const auto& locals : problem.layout.element_locals) {
    if (locals.empty()) continue;
    CondensedSystem::ElementBlock blk;
    blk.locals = locals;
    for (int r : locals)
      for (SparseMatrix::InnerIterator it(a, r); it; ++it)
        if (it.col() >= nl) blk.globals.push_back(it.col() - nl);
    std::sort(blk.globals.begin(), blk.globals.end());
    blk.globals.erase(std::unique(blk.globals.begin(), blk.globals.end()), blk.globals.end());
    const Eigen::MatrixXd all = dense_submatrix(a, locals, locals);
    blk.factor.compute(all);
    if (blk.factor.info() != Eigen::Success) throw std::runtime_error("local block is not positive definite");
    std::vector<int> gcols(blk.globals.size());
    for (size_t j = 0; j < gcols.size(); ++j) gcols[j] = blk.globals[j] + nl;
    blk.coupling = dense_submatrix(a, locals, gcols);
    const Eigen::MatrixXd update = blk.coupling.transpose() * blk.factor.solve(blk.coupling);
    for (size_t i = 0; i < gcols.size(); ++i)
      for (size_t j = 0; j < gcols.size(); ++j) trip.emplace_back(blk.globals[i], blk.globals[j], -update(i, j));
    sys.blocks.push_back(std::move(blk));
  }
  sys.schur = from_triplets(ng, ng, trip);
  sys.schur.prune(0.0);
  sys.lifted_rhs = eliminate(sys, rhs);
  return sys;
}

Eigen::VectorXd eliminate(const CondensedSystem& sys, const Eigen::VectorXd& full_rhs) {
  Eigen::VectorXd g = full_rhs.tail(sys.num_global);
  for (const auto& blk : sys.blocks) {
    Eigen::VectorXd bl(blk.locals.size());
    for (size_t i = 0; i < blk.locals.size(); ++i) bl(i) = full_rhs(blk.locals[i]);
    const Eigen::VectorXd c = blk.coupling.transpose() * blk.factor.solve(bl);
    for (size_t j = 0; j < blk.globals.size(); ++j) g(blk.globals[j]) -= c(j);
  }
  return g;
}

Eigen::VectorXd back_substitute(const CondensedSystem& sys, const Eigen::VectorXd& full_rhs,
                                const Eigen::VectorXd& global_solution) {
  Eigen::VectorXd u(sys.num_local + sys.num_global);
  u.head(sys.num_local).setZero();
  u.tail(sys.num_global) = global_solution;
  for (const auto& blk : sys.blocks) {
    Eigen::VectorXd bl(blk.locals.size()), ug(blk.globals.size());
    for (size_t i = 0; i < blk.locals.size(); ++i) bl(i) = full_rhs(blk.locals[i]);
    for (size_t j = 0; j < blk.globals.size(); ++j) ug(j) = global_solution(blk.globals[j]);
    const Eigen::VectorXd ul = blk.factor.solve(bl - blk.coupling * ug);
    for (size_t i = 0; i < blk.locals.size(); ++i) u(blk.locals[i]) = ul(i);
  }
  return u;
}

}  // namespace asphdg
