#include "asphdg/asp.hpp"

#include <stdexcept>

namespace asphdg {

LinearOperator aux_direct(const SparseMatrix& a0) {
  auto chol = std::make_shared<const SparseCholesky>(a0);
  const int n = static_cast<int>(a0.rows());
  return LinearOperator(n, n, [chol](const Eigen::VectorXd& r) { return chol->solve(r); });
}

LinearOperator make_asp(const LinearOperator& smoother, const SparseMatrix& prolongation, const LinearOperator& coarse) {
  const int n = smoother.rows();
  if (prolongation.rows() != n || prolongation.cols() != coarse.rows() || coarse.rows() != coarse.cols() ||
      smoother.cols() != n)
    throw std::invalid_argument("make_asp: dimension mismatch");
  auto p = std::make_shared<const SparseMatrix>(prolongation);
  return LinearOperator(n, n, [smoother, p, coarse](const Eigen::VectorXd& r) -> Eigen::VectorXd {
    const Eigen::VectorXd pr = p->transpose() * r;
    return smoother.apply(r) + *p * coarse.apply(pr);
  });
}

LinearOperator make_fictitious(std::shared_ptr<const BiharmonicTransfer> transfer, const LinearOperator& aux_inverse) {
  if (aux_inverse.rows() != transfer->aux_size() || aux_inverse.cols() != transfer->aux_size())
    throw std::invalid_argument("make_fictitious: dimension mismatch");
  const int n = transfer->target_size();
  return LinearOperator(n, n, [transfer, aux_inverse](const Eigen::VectorXd& r) -> Eigen::VectorXd {
    return transfer->apply(aux_inverse.apply(transfer->apply_transpose(r)));
  });
}

LinearOperator condensed_inverse(std::shared_ptr<const CondensedSystem> system, const LinearOperator& schur_inverse) {
  if (schur_inverse.rows() != system->num_global) throw std::invalid_argument("condensed_inverse: dimension mismatch");
  const int n = system->num_local + system->num_global;
  return LinearOperator(n, n, [system, schur_inverse](const Eigen::VectorXd& r) -> Eigen::VectorXd {
    return back_substitute(*system, r, schur_inverse.apply(eliminate(*system, r)));
  });
}

LinearOperator restrict_to_global(const LinearOperator& full, int num_local, int num_global) {
  if (full.rows() != num_local + num_global) throw std::invalid_argument("restrict_to_global: dimension mismatch");
  return LinearOperator(num_global, num_global, [full, num_local, num_global](const Eigen::VectorXd& r) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(num_local + num_global);
    x.tail(num_global) = r;
    return Eigen::VectorXd(full.apply(x).tail(num_global));
  });
}

namespace {

LinearOperator make_smoother(const Mesh& mesh, const ProblemMatrix& problem, const SparseMatrix& schur,
                             SmootherKind kind, bool boundary_blocks) {
  switch (kind) {
    case SmootherKind::jacobi: return jacobi(schur);
    case SmootherKind::bgs: return block_sgs(schur, facet_patch_blocks(mesh, problem, boundary_blocks));
    case SmootherKind::none: break;
  }
  throw std::invalid_argument("reaction-diffusion preconditioners need a smoother");
}

LinearOperator vector_asp(const Mesh& mesh, const ProblemMatrix& problem, const SparseMatrix& schur,
                          const TauField& tau, SmootherKind smoother, bool boundary_blocks) {
  const Prolongation p = build_vector_prolongation(mesh, problem);
  return make_asp(make_smoother(mesh, problem, schur, smoother, boundary_blocks), p.matrix,
                  aux_direct(assemble_aux_p1(mesh, tau, true, boundary_blocks)));
}

}  // namespace

LinearOperator build_preconditioner(const Mesh& mesh, const ProblemMatrix& problem, const CondensedSystem& system,
                                    const PreconditionerConfig& config) {
  switch (config.problem) {
    case ProblemKind::scalar_rd: {
      if (problem.spaces.at(0).kind != SpaceKind::scalar_dg) throw std::invalid_argument("not a scalar problem");
      if (config.aux != AuxKind::direct) throw std::invalid_argument("scalar ASP uses a direct auxiliary solve");
      const Prolongation p = build_scalar_prolongation(mesh, problem);
      return make_asp(make_smoother(mesh, problem, system.schur, config.smoother, false), p.matrix,
                      aux_direct(assemble_aux_p1(mesh, config.tau, false)));
    }
    case ProblemKind::vector_rd: {
      if (!problem.spaces.at(0).is_hdiv()) throw std::invalid_argument("not a vector problem");
      if (config.aux != AuxKind::direct) throw std::invalid_argument("vector ASP uses a direct auxiliary solve");
      const bool free = problem.spaces.at(1).bc == BoundaryCondition::none;
      return vector_asp(mesh, problem, system.schur, config.tau, config.smoother, free);
    }
    case ProblemKind::biharmonic: {
      if (problem.spaces.at(0).kind != SpaceKind::scalar_h1_order_kp1) throw std::invalid_argument("not a plate problem");
      const int k = problem.spaces.at(0).degree - 1;
      const bool ss = config.bc == PlateBoundary::simply_supported;
      if ((problem.spaces.at(1).bc == BoundaryCondition::none) != ss)
        throw std::invalid_argument("plate boundary condition does not match the problem");
      const ProblemMatrix aux =
          assemble_vector_rd(mesh, k, config.tau, config.alpha, VectorVariant::cst, nullptr, ss);
      auto aux_sys = std::make_shared<const CondensedSystem>(condense(aux));
      LinearOperator schur_inv = config.aux == AuxKind::direct
                                     ? aux_direct(aux_sys->schur)
                                     : vector_asp(mesh, aux, aux_sys->schur, config.tau,
                                                  config.smoother == SmootherKind::none ? SmootherKind::bgs
                                                                                        : config.smoother,
                                                  ss);
      auto transfer = std::make_shared<const BiharmonicTransfer>(mesh, aux, problem);
      const LinearOperator full = make_fictitious(transfer, condensed_inverse(aux_sys, schur_inv));
      return restrict_to_global(full, system.num_local, system.num_global);
    }
  }
  throw std::invalid_argument("unknown problem kind");
}

std::string to_string(ProblemKind p) {
  switch (p) {
    case ProblemKind::scalar_rd: return "scalar-rd";
    case ProblemKind::vector_rd: return "vector-rd";
    case ProblemKind::biharmonic: return "biharmonic";
  }
  return "?";
}

std::string to_string(SmootherKind s) {
  switch (s) {
    case SmootherKind::none: return "none";
    case SmootherKind::jacobi: return "jacobi";
    case SmootherKind::bgs: return "bgs";
  }
  return "?";
}

std::string to_string(AuxKind a) { return a == AuxKind::direct ? "direct" : "asp"; }

std::string to_string(PlateBoundary b) {
  return b == PlateBoundary::simply_supported ? "simply-supported" : "clamped";
}

ProblemKind parse_problem(const std::string& s) {
  if (s == "scalar-rd") return ProblemKind::scalar_rd;
  if (s == "vector-rd") return ProblemKind::vector_rd;
  if (s == "biharmonic") return ProblemKind::biharmonic;
  throw std::invalid_argument("unknown problem: " + s);
}

SmootherKind parse_smoother(const std::string& s) {
  if (s == "none") return SmootherKind::none;
  if (s == "jacobi") return SmootherKind::jacobi;
  if (s == "bgs") return SmootherKind::bgs;
  throw std::invalid_argument("unknown smoother: " + s);
}

AuxKind parse_aux(const std::string& s) {
  if (s == "direct") return AuxKind::direct;
  if (s == "asp") return AuxKind::asp;
  throw std::invalid_argument("unknown aux solver: " + s);
}

PlateBoundary parse_plate_boundary(const std::string& s) {
  if (s == "simply-supported") return PlateBoundary::simply_supported;
  if (s == "clamped") return PlateBoundary::clamped;
  throw std::invalid_argument("unknown plate boundary condition: " + s);
}

}  // namespace asphdg
