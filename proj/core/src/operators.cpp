#include "blockkrylov/operators.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>
#include <vector>

#include "blockkrylov/dense.hpp"
#include "blockkrylov/error.hpp"

namespace blockkrylov {

ComposedOperator::ComposedOperator(OperatorPtr outer, OperatorPtr inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  if (!outer_ || !inner_ || outer_->cols() != inner_->rows()) {
    throw ContractError("composed operator: inner range does not match outer domain");
  }
}

void ComposedOperator::apply(std::span<const double> x, std::span<double> y) const {
  Vector tmp(inner_->rows());
  inner_->apply(x, tmp);
  outer_->apply(tmp, y);
}

struct SparseDirectSolver::Impl {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

SparseDirectSolver::SparseDirectSolver(const SparseMatrix& a)
    : n_(a.nrows()), impl_(std::make_unique<Impl>()) {
  if (a.nrows() != a.ncols()) throw SetupError("direct solver needs a square matrix");
  if (n_ == 0) throw SetupError("direct solver needs a nonempty matrix");

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.nnz());
  for (index_t i = 0; i < a.nrows(); ++i) {
    for (index_t p = a.row_offsets()[i]; p < a.row_offsets()[i + 1]; ++p) {
      trips.emplace_back(static_cast<int>(i), static_cast<int>(a.col_indices()[p]), a.values()[p]);
    }
  }
  Eigen::SparseMatrix<double> mat(static_cast<int>(n_), static_cast<int>(n_));
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.makeCompressed();

  impl_->lu.analyzePattern(mat);
  impl_->lu.factorize(mat);
  if (impl_->lu.info() != Eigen::Success) {
    throw SetupError("sparse LU failed: " + impl_->lu.lastErrorMessage());
  }
  // SparseLU only flags exact zero pivots; reject numerically dead ones too.
  const double logdet = impl_->lu.logAbsDeterminant();
  if (!std::isfinite(logdet)) throw SetupError("sparse LU: matrix is singular");
}

SparseDirectSolver::~SparseDirectSolver() = default;

void SparseDirectSolver::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) throw ContractError("direct solve dimension mismatch");
  const Eigen::Map<const Eigen::VectorXd> rhs(x.data(), static_cast<Eigen::Index>(n_));
  Eigen::Map<Eigen::VectorXd> out(y.data(), static_cast<Eigen::Index>(n_));
  out = impl_->lu.solve(rhs);
}

OperatorPtr make_operator(SparseMatrix a) {
  return std::make_shared<const MatrixOperator>(std::move(a));
}

double operator_frobenius_norm(const LinearOperator& op) {
  if (const auto* m = dynamic_cast<const MatrixOperator*>(&op)) return m->matrix().frobenius_norm();
  Vector e(op.cols(), 0.0);
  Vector col(op.rows());
  double s = 0.0;
  for (index_t j = 0; j < op.cols(); ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    e[j] = 0.0;
    const double nj = norm2(col);
    s += nj * nj;
  }
  return std::sqrt(s);
}

BlockSystem BlockSystem::make(double lambda, double mu, OperatorPtr A, OperatorPtr B, Vector b,
                              Vector c) {
  if (!A || !B) throw ContractError("block system needs both off-diagonal operators");
  const index_t m = b.size();
  const index_t n = c.size();
  if (A->rows() != m || A->cols() != n || B->rows() != n || B->cols() != m) {
    throw ContractError("block system dimensions: A is " + std::to_string(A->rows()) + "x" +
                        std::to_string(A->cols()) + ", B is " + std::to_string(B->rows()) + "x" +
                        std::to_string(B->cols()) + ", b has " + std::to_string(m) +
                        ", c has " + std::to_string(n));
  }
  return BlockSystem{lambda, mu, std::move(A), std::move(B), std::move(b), std::move(c)};
}

BlockSystem BlockSystem::make(double lambda, double mu, SparseMatrix A, SparseMatrix B, Vector b,
                              Vector c) {
  return make(lambda, mu, make_operator(std::move(A)), make_operator(std::move(B)), std::move(b),
              std::move(c));
}

Vector BlockSystem::rhs() const {
  Vector g(b);
  g.insert(g.end(), c.begin(), c.end());
  return g;
}

Vector apply_block(const BlockSystem& sys, std::span<const double> u) {
  const index_t m = sys.m();
  const index_t n = sys.n();
  if (u.size() != m + n) throw ContractError("apply_block: vector length must be m+n");
  Vector out(m + n);
  const auto u1 = u.first(m);
  const auto u2 = u.subspan(m, n);
  std::span<double> top(out.data(), m);
  std::span<double> bottom(out.data() + m, n);
  sys.A->apply(u2, top);
  sys.B->apply(u1, bottom);
  for (index_t i = 0; i < m; ++i) top[i] += sys.lambda * u1[i];
  for (index_t i = 0; i < n; ++i) bottom[i] += sys.mu * u2[i];
  return out;
}

void MonolithicOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (y.size() != sys_.size()) throw ContractError("monolithic apply: output length mismatch");
  const Vector out = apply_block(sys_, x);
  std::copy(out.begin(), out.end(), y.begin());
}

std::pair<Vector, Vector> PreconditionedSystem::back_map(std::span<const double> x_tilde,
                                                         std::span<const double> y_tilde) const {
  return {(*preconditioner.M_solver)(x_tilde), (*preconditioner.N_solver)(y_tilde)};
}

PreconditionedSystem preconditioned_system(const SparseMatrix& M, const SparseMatrix& N,
                                           SparseMatrix A, SparseMatrix B, Vector b, Vector c) {
  if (M.nrows() != M.ncols() || N.nrows() != N.ncols()) {
    throw SetupError("preconditioner blocks must be square");
  }
  if (M.nrows() != b.size() || N.nrows() != c.size()) {
    throw ContractError("preconditioner block sizes do not match the right-hand side");
  }
  auto m_solver = std::make_shared<const SparseDirectSolver>(M);
  auto n_solver = std::make_shared<const SparseDirectSolver>(N);
  auto a_tilde = std::make_shared<const ComposedOperator>(make_operator(std::move(A)), n_solver);
  auto b_tilde = std::make_shared<const ComposedOperator>(make_operator(std::move(B)), m_solver);
  return PreconditionedSystem{
      BlockSystem::make(1.0, 1.0, std::move(a_tilde), std::move(b_tilde), std::move(b),
                        std::move(c)),
      BlockPreconditioner{std::move(m_solver), std::move(n_solver)}};
}

}  // namespace blockkrylov
