#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>

#include "blockkrylov/operators.hpp"

namespace blockkrylov {

enum class SolveStatus { converged, maxit, breakdown_d, breakdown_l };

const char* to_string(SolveStatus s) noexcept;

struct SolveOptions {
  double tol = 1e-10;
  std::size_t maxit = 600;
  bool track_true_residual = false;
  /// Stop on rho_k <= tol instead of rho_k <= tol * ||g||.
  bool absolute_tol = false;
};

struct SolveReport {
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::maxit;
  Vector x;
  Vector y;
  /// Per-iteration value used for stopping (the residual bound for the
  /// Hessenberg-based methods, the exact residual norm for the orthogonal
  /// ones).
  Vector rho_history;
  Vector quasi_history;
  std::optional<Vector> true_residual_history;
  double solve_seconds = 0.0;
};

/// ||[b; c] - K [x; y]||_2
double true_residual(const BlockSystem& sys, std::span<const double> x, std::span<const double> y);

/// `k,rho_bound,quasi_residual[,true_residual]`, one row per iteration.
void write_convergence_csv(std::ostream& out, const SolveReport& report);
void write_convergence_csv(const std::filesystem::path& path, const SolveReport& report);

}  // namespace blockkrylov
