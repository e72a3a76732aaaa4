#include "blockkrylov/baselines.hpp"

#include <chrono>
#include <cmath>

#include "block_solver.hpp"
#include "blockkrylov/dense.hpp"
#include "blockkrylov/error.hpp"
#include "blockkrylov/givens.hpp"
#include "blockkrylov/hessenberg.hpp"

namespace blockkrylov {

namespace {

// Least squares min |beta e1 - H_{k+1,k} y| by one Givens rotation per column.
class HessenbergLeastSquares {
 public:
  explicit HessenbergLeastSquares(double beta) : tau_next_(beta) {}

  void add_column(Vector h) {
    const std::size_t k = rots_.size();
    for (std::size_t j = 0; j < k; ++j) {
      const double a = h[j];
      const double b = h[j + 1];
      h[j] = rots_[j].c * a + rots_[j].s * b;
      h[j + 1] = -rots_[j].s * a + rots_[j].c * b;
    }
    const PlaneRotation g = make_rotation(h[k], h[k + 1]);
    h[k] = g.r;
    h.resize(k + 1);
    r_.append_column(h);
    t_.push_back(g.c * tau_next_);
    tau_next_ = -g.s * tau_next_;
    rots_.push_back(g);
  }

  double residual() const { return std::abs(tau_next_); }
  Vector solve() const { return back_substitute(r_, t_); }

 private:
  std::vector<PlaneRotation> rots_;
  PackedUpperTriangular r_;
  Vector t_;
  double tau_next_;
};

void check_inputs(const LinearOperator& op, std::span<const double> g,
                  const SolveOptions& opts) {
  detail::validate_options(opts);
  if (op.rows() != op.cols()) throw InvalidInputError("operator must be square");
  if (g.size() != op.rows()) throw InvalidInputError("right-hand side length mismatch");
  if (norm_inf(g) == 0.0) throw InvalidInputError("right-hand side must be nonzero");
}

void split_solution(std::size_t m, const Vector& u, SolveReport& rep) {
  rep.x.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(m));
  rep.y.assign(u.begin() + static_cast<std::ptrdiff_t>(m), u.end());
}

double residual_of(const LinearOperator& op, std::span<const double> g, const Vector& u) {
  Vector r = op(u);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = g[i] - r[i];
  return norm2(r);
}

template <typename Basis>
Vector combine(const Basis& basis, const HessenbergLeastSquares& ls) {
  const Vector z = ls.solve();
  Vector u(basis.length(), 0.0);
  basis.combine(z, u);
  return u;
}

}  // namespace

SolveReport gmres_solve(const LinearOperator& op, std::span<const double> g, std::size_t split,
                        const SolveOptions& opts) {
  check_inputs(op, g, opts);
  if (split > op.rows()) throw InvalidInputError("split exceeds the operator size");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t size = op.rows();
  const double gnorm = norm2(g);
  const double threshold = opts.absolute_tol ? opts.tol : opts.tol * gnorm;

  DenseColumnStore V(size);
  {
    Vector v(g.begin(), g.end());
    for (double& e : v) e /= gnorm;
    V.append(std::move(v));
  }
  HessenbergLeastSquares ls(gnorm);
  SolveReport rep;
  if (opts.track_true_residual) rep.true_residual_history.emplace();
  rep.status = SolveStatus::maxit;

  for (std::size_t k = 1; k <= opts.maxit; ++k) {
    Vector w = op(V[k - 1]);
    const double tol = breakdown_tolerance(norm2(w));
    Vector h(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
      h[j] = dot(V[j], w);
      axpy(-h[j], V[j], w);
    }
    h[k] = norm2(w);
    const bool happy = h[k] <= tol || k == size;
    if (happy) {
      h[k] = 0.0;
    } else {
      for (double& e : w) e /= h[k];
      V.append(std::move(w));
    }
    ls.add_column(std::move(h));
    rep.iterations = k;
    rep.rho_history.push_back(ls.residual());
    rep.quasi_history.push_back(ls.residual());
    if (opts.track_true_residual) {
      rep.true_residual_history->push_back(residual_of(op, g, combine(V, ls)));
    }
    if (ls.residual() <= threshold) {
      rep.status = SolveStatus::converged;
      break;
    }
    if (happy) {
      rep.status = SolveStatus::breakdown_d;
      break;
    }
  }
  split_solution(split, combine(V, ls), rep);
  rep.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SolveReport cmrh_solve(const LinearOperator& op, std::span<const double> g, std::size_t split,
                       const SolveOptions& opts) {
  check_inputs(op, g, opts);
  if (split > op.rows()) throw InvalidInputError("split exceeds the operator size");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t size = op.rows();
  const double threshold = opts.absolute_tol ? opts.tol : opts.tol * norm2(g);

  PivotedHessState hess = pivoted_hess_init(g);
  HessenbergLeastSquares ls(hess.beta);
  SolveReport rep;
  if (opts.track_true_residual) rep.true_residual_history.emplace();
  rep.status = SolveStatus::maxit;

  for (std::size_t k = 1; k <= opts.maxit; ++k) {
    const bool broke = pivoted_hess_step(hess, op);
    ls.add_column(hess.H.column(k - 1));
    const double quasi = ls.residual();
    const double kk = static_cast<double>(k);
    const double factor =
        std::sqrt(std::max(2.0 * static_cast<double>(size) - kk, 1.0) * (kk + 1.0) / 2.0);
    rep.iterations = k;
    rep.rho_history.push_back(factor * quasi);
    rep.quasi_history.push_back(quasi);
    if (opts.track_true_residual) {
      rep.true_residual_history->push_back(residual_of(op, g, combine(hess.Z, ls)));
    }
    if (factor * quasi <= threshold) {
      rep.status = SolveStatus::converged;
      break;
    }
    if (broke) {
      rep.status = SolveStatus::breakdown_d;
      break;
    }
  }
  split_solution(split, combine(hess.Z, ls), rep);
  rep.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SolveReport gmres_solve(const MonolithicOperator& op, std::span<const double> g,
                        const SolveOptions& opts) {
  return gmres_solve(static_cast<const LinearOperator&>(op), g, op.system().m(), opts);
}

SolveReport cmrh_solve(const MonolithicOperator& op, std::span<const double> g,
                       const SolveOptions& opts) {
  return cmrh_solve(static_cast<const LinearOperator&>(op), g, op.system().m(), opts);
}

}  // namespace blockkrylov
