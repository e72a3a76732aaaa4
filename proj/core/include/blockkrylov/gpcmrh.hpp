#pragma once

#include "blockkrylov/givens.hpp"
#include "blockkrylov/solve_report.hpp"

namespace blockkrylov {

/// GP-CMRH on the block system [[lambda I, A], [B, mu I]] [x; y] = [b; c].
///
/// Each iteration takes one pivoted simultaneous Hessenberg step, extends
/// the QR factorization of S_{k+1,k} and stops once the residual bound
/// rho_k <= tol * ||[b; c]|| (or rho_k <= tol with opts.absolute_tol).
///
/// When only one side of the Hessenberg process breaks down, the image of
/// the surviving side's last vector is tested for membership in the
/// exhausted side's span; if it lies there the enlarged space is invariant
/// and one more column is added so the returned iterate is the exact
/// solution. Otherwise the least-squares iterate at the current dimension
/// is returned with status breakdown_d or breakdown_l (a two-sided
/// breakdown that misses the tolerance reports breakdown_d).
///
/// Throws InvalidInputError for b = 0, c = 0, tol < 0 or maxit = 0.
SolveReport gpcmrh_solve(const BlockSystem& sys, const SolveOptions& opts = {});

}  // namespace blockkrylov
