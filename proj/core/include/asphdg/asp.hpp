#pragma once

#include <memory>
#include <string>

#include "asphdg/assembly.hpp"
#include "asphdg/condense.hpp"
#include "asphdg/linear_operator.hpp"
#include "asphdg/mesh.hpp"
#include "asphdg/smoother.hpp"
#include "asphdg/transfer.hpp"

namespace asphdg {

/// r -> A0^{-1} r through a sparse factorization. Throws std::runtime_error if A0 is not SPD.
LinearOperator aux_direct(const SparseMatrix& a0);

/// r -> R r + P B0 P^T r. Throws std::invalid_argument on a dimension mismatch.
LinearOperator make_asp(const LinearOperator& smoother, const SparseMatrix& prolongation, const LinearOperator& coarse);

/// r -> Pi B Pi^T r on full compound vectors of the plate problem.
LinearOperator make_fictitious(std::shared_ptr<const BiharmonicTransfer> transfer, const LinearOperator& aux_inverse);

/// Applies an approximate inverse of a full (local + global) problem: eliminate the
/// local DOFs, apply `schur_inverse` on the skeleton, back-substitute.
LinearOperator condensed_inverse(std::shared_ptr<const CondensedSystem> system, const LinearOperator& schur_inverse);

/// Restriction E^T M E of a full-space operator to the global block (locals zero).
LinearOperator restrict_to_global(const LinearOperator& full, int num_local, int num_global);

enum class ProblemKind { scalar_rd, vector_rd, biharmonic };
enum class SmootherKind { none, jacobi, bgs };
enum class AuxKind { direct, asp };

struct PreconditionerConfig {
  ProblemKind problem = ProblemKind::scalar_rd;
  SmootherKind smoother = SmootherKind::bgs;
  AuxKind aux = AuxKind::direct;
  TauField tau;
  double alpha = 4.0;
  PlateBoundary bc = PlateBoundary::simply_supported;
};

/// Preconditioner for the condensed (Schur) system of `problem`:
///   scalar/vector: smoother + P A0^{-1} P^T with the P1 auxiliary space;
///   biharmonic: restriction of Pi B Pi^T, where B inverts the constant-divergence
///   vector problem directly (aux = direct) or by block-SGS + vector ASP (aux = asp).
/// Throws std::invalid_argument for an inconsistent pairing.
LinearOperator build_preconditioner(const Mesh& mesh, const ProblemMatrix& problem, const CondensedSystem& system,
                                    const PreconditionerConfig& config);

std::string to_string(ProblemKind p);
std::string to_string(SmootherKind s);
std::string to_string(AuxKind a);
ProblemKind parse_problem(const std::string& s);
SmootherKind parse_smoother(const std::string& s);
AuxKind parse_aux(const std::string& s);
std::string to_string(PlateBoundary b);
PlateBoundary parse_plate_boundary(const std::string& s);

}  // namespace asphdg
