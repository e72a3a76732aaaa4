#pragma once

#include "blockkrylov/operators.hpp"
#include "blockkrylov/solve_report.hpp"

namespace blockkrylov {

/// Full (unrestarted) GMRES on K u = g with modified Gram-Schmidt Arnoldi.
/// rho_k is the exact residual norm carried by the rotated right-hand side.
/// The report's x and y are the two blocks of u. Throws InvalidInputError
/// for g = 0 or a g whose length differs from the operator size.
SolveReport gmres_solve(const MonolithicOperator& op, std::span<const double> g,
                        const SolveOptions& opts = {});

/// CMRH on K u = g using the pivoted Hessenberg process of K. rho_k is the
/// bound sqrt((2N - k)(k+1)/2) |tau_{k+1}| with N = m + n.
SolveReport cmrh_solve(const MonolithicOperator& op, std::span<const double> g,
                       const SolveOptions& opts = {});

/// Same methods on an arbitrary square operator; the solution is split into
/// x (first `split` entries) and y.
SolveReport gmres_solve(const LinearOperator& K, std::span<const double> g, std::size_t split,
                        const SolveOptions& opts = {});
SolveReport cmrh_solve(const LinearOperator& K, std::span<const double> g, std::size_t split,
                       const SolveOptions& opts = {});

}  // namespace blockkrylov
