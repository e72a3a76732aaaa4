#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "blockkrylov/solve_report.hpp"

namespace blockkrylov {

/// GPMR: the same block least-squares skeleton as GP-CMRH over the
/// orthonormal bases of the orthogonal Hessenberg reduction. The quasi
/// residual equals the true residual norm and drives the stopping test.
/// Breakdown handling and errors as gpcmrh_solve.
SolveReport gpmr_solve(const BlockSystem& sys, const SolveOptions& opts = {});

/// One step of the residual comparison between GPMR and GP-CMRH.
struct SandwichCheck {
  std::size_t k = 0;
  double r_gpmr = 0.0;
  double r_gpcmrh = 0.0;
  double kappa_W = 0.0;  ///< condition number of the interleaved basis W_{k+1}
  bool lower_ok = false;  ///< r_gpmr <= r_gpcmrh (1 + 1e-10)
  bool upper_ok = false;  ///< r_gpcmrh <= kappa_W r_gpmr (1 + 1e-8)

  double ratio() const { return r_gpcmrh / r_gpmr; }
};

struct SandwichReport {
  std::vector<SandwichCheck> checks;
  /// False when a breakdown stopped either method before kmax.
  bool complete = false;
};

/// Runs both methods for kmax iterations with true-residual tracking and
/// evaluates ||r_GPMR|| <= ||r_GPCMRH|| <= kappa(W_{k+1}) ||r_GPMR|| at each k.
/// kappa is computed by a dense SVD; desk-scale use only.
SandwichReport sandwich_verify(const BlockSystem& sys, std::size_t kmax);

/// `k,r_gpmr,r_gpcmrh,kappa_W,ratio`
void write_sandwich_csv(std::ostream& out, const SandwichReport& report);
void write_sandwich_csv(const std::filesystem::path& path, const SandwichReport& report);

}  // namespace blockkrylov
