#pragma once

// Iteration skeleton shared by GP-CMRH and GPMR. Both build the same block
// Hessenberg matrix S_{k+1,k} from their Hessenberg tables and differ only in
// the basis process and in which residual estimate drives the stopping test.

#include <chrono>
#include <cmath>
#include <string>

#include "blockkrylov/dense.hpp"
#include "blockkrylov/error.hpp"
#include "blockkrylov/givens.hpp"
#include "blockkrylov/hessenberg.hpp"
#include "blockkrylov/solve_report.hpp"

namespace blockkrylov::detail {

inline void validate_options(const SolveOptions& opts) {
  if (!(opts.tol >= 0.0)) throw InvalidInputError("tol must be nonnegative");
  if (opts.maxit < 1) throw InvalidInputError("maxit must be at least 1");
}

// Process concept:
//   double beta() const, gamma() const
//   StepOutcome step()
//   const HessenbergTable& H() const, F() const
//   const DenseColumnStore& D() const, L() const
//   Breakdown breakdown() const
//   ClosureColumn closure() const
template <typename Process>
void recover_solution(const Process& proc, const QrState& qr, Vector& x, Vector& y) {
  const Vector z = qr.solve();
  const std::size_t k = qr.steps();
  x.assign(proc.D().length(), 0.0);
  y.assign(proc.L().length(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    axpy(z[2 * i], proc.D()[i], x);
    axpy(z[2 * i + 1], proc.L()[i], y);
  }
  if (qr.closed()) {
    if (proc.breakdown() == Breakdown::l_side) {
      axpy(z[2 * k], proc.D()[k], x);
    } else {
      axpy(z[2 * k], proc.L()[k], y);
    }
  }
}

template <typename Process>
Vector closure_column(const Process& proc, const ClosureColumn& cl, std::size_t k, double lambda,
                      double mu) {
  Vector col(2 * k + 2, 0.0);
  if (proc.breakdown() == Breakdown::l_side) {
    // Image of [d_{k+1}; 0]: B d_{k+1} expanded in l_1..l_k.
    for (std::size_t i = 0; i < k; ++i) col[2 * i + 1] = cl.coeffs[i];
    col[2 * k] = lambda;
  } else {
    // Image of [0; l_{k+1}]: A l_{k+1} expanded in d_1..d_k.
    for (std::size_t i = 0; i < k; ++i) col[2 * i] = cl.coeffs[i];
    col[2 * k + 1] = mu;
  }
  return col;
}

template <typename Process>
SolveReport run_block_solver(const BlockSystem& sys, const SolveOptions& opts, Process& proc,
                             bool stop_on_bound) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = sys.m();
  const std::size_t n = sys.n();
  const double threshold = opts.absolute_tol ? opts.tol : opts.tol * norm2(sys.rhs());

  QrState qr(proc.beta(), proc.gamma());
  SolveReport rep;
  if (opts.track_true_residual) rep.true_residual_history.emplace();

  auto record = [&](std::size_t k) {
    const double quasi = qr.quasi_residual();
    const double rho =
        stop_on_bound ? residual_bound(qr.tau_tilde1(), qr.tau_tilde2(), m, n, k) : quasi;
    rep.rho_history.push_back(rho);
    rep.quasi_history.push_back(quasi);
    if (opts.track_true_residual) {
      Vector x, y;
      recover_solution(proc, qr, x, y);
      rep.true_residual_history->push_back(true_residual(sys, x, y));
    }
    rep.iterations = k;
    return rho;
  };

  rep.status = SolveStatus::maxit;
  for (std::size_t k = 1; k <= opts.maxit; ++k) {
    const StepOutcome out = proc.step();
    qr.add_step(assemble_s_column(proc.H(), proc.F(), k, sys.lambda, sys.mu));
    if (record(k) <= threshold) {
      rep.status = SolveStatus::converged;
      break;
    }
    if (out.breakdown == Breakdown::none) continue;

    rep.status =
        out.breakdown == Breakdown::l_side ? SolveStatus::breakdown_l : SolveStatus::breakdown_d;
    const bool one_sided = out.breakdown == Breakdown::l_side || out.breakdown == Breakdown::d_side;
    if (one_sided && k < opts.maxit) {
      const ClosureColumn cl = proc.closure();
      if (cl.closed && qr.add_closure_column(closure_column(proc, cl, k, sys.lambda, sys.mu))) {
        if (record(k + 1) <= threshold) rep.status = SolveStatus::converged;
      }
    }
    break;
  }

  recover_solution(proc, qr, rep.x, rep.y);
  rep.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace blockkrylov::detail
