#pragma once

#include <memory>
#include <span>
#include <utility>

#include "blockkrylov/sparse_matrix.hpp"

namespace blockkrylov {

/// Abstract real linear map y = Op x. Implementations are immutable and
/// apply() is reentrant.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual index_t rows() const = 0;
  virtual index_t cols() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;

  Vector operator()(std::span<const double> x) const {
    Vector y(rows());
    apply(x, y);
    return y;
  }
};

using OperatorPtr = std::shared_ptr<const LinearOperator>;

class MatrixOperator final : public LinearOperator {
 public:
  explicit MatrixOperator(SparseMatrix a)
      : a_(std::make_shared<const SparseMatrix>(std::move(a))) {}
  explicit MatrixOperator(std::shared_ptr<const SparseMatrix> a) : a_(std::move(a)) {}

  index_t rows() const override { return a_->nrows(); }
  index_t cols() const override { return a_->ncols(); }
  void apply(std::span<const double> x, std::span<double> y) const override { a_->multiply(x, y); }

  const SparseMatrix& matrix() const noexcept { return *a_; }

 private:
  std::shared_ptr<const SparseMatrix> a_;
};

/// x -> outer(inner(x)); neither factor is formed.
class ComposedOperator final : public LinearOperator {
 public:
  ComposedOperator(OperatorPtr outer, OperatorPtr inner);

  index_t rows() const override { return outer_->rows(); }
  index_t cols() const override { return inner_->cols(); }
  void apply(std::span<const double> x, std::span<double> y) const override;

 private:
  OperatorPtr outer_;
  OperatorPtr inner_;
};

/// Applies the inverse of a square sparse matrix through a sparse LU
/// factorization computed once at construction. Throws SetupError when the
/// matrix is not square or the factorization detects singularity.
class SparseDirectSolver final : public LinearOperator {
 public:
  explicit SparseDirectSolver(const SparseMatrix& a);
  ~SparseDirectSolver() override;
  SparseDirectSolver(const SparseDirectSolver&) = delete;
  SparseDirectSolver& operator=(const SparseDirectSolver&) = delete;

  index_t rows() const override { return n_; }
  index_t cols() const override { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const override;

 private:
  struct Impl;
  index_t n_;
  std::unique_ptr<Impl> impl_;
};

OperatorPtr make_operator(SparseMatrix a);

/// Frobenius norm of an operator. Exact for MatrixOperator; otherwise
/// assembled column by column (desk-scale only).
double operator_frobenius_norm(const LinearOperator& op);

/// The block two-by-two system [[lambda I, A], [B, mu I]] [x; y] = [b; c]
/// with A of size m x n and B of size n x m.
struct BlockSystem {
  double lambda = 1.0;
  double mu = 1.0;
  OperatorPtr A;
  OperatorPtr B;
  Vector b;
  Vector c;

  /// Validating factory; throws ContractError on inconsistent dimensions.
  static BlockSystem make(double lambda, double mu, OperatorPtr A, OperatorPtr B, Vector b,
                          Vector c);
  static BlockSystem make(double lambda, double mu, SparseMatrix A, SparseMatrix B, Vector b,
                          Vector c);

  index_t m() const noexcept { return b.size(); }
  index_t n() const noexcept { return c.size(); }
  index_t size() const noexcept { return b.size() + c.size(); }

  /// g = [b; c]
  Vector rhs() const;
};

/// [lambda u1 + A u2; B u1 + mu u2] for u = [u1; u2].
Vector apply_block(const BlockSystem& sys, std::span<const double> u);

/// Block-diagonal right preconditioner blkdiag(M, N), held as inverse solvers.
struct BlockPreconditioner {
  OperatorPtr M_solver;
  OperatorPtr N_solver;
};

/// System with A~ = A N^{-1}, B~ = B M^{-1}, lambda = mu = 1 and the map back
/// to the unknowns of the original system.
struct PreconditionedSystem {
  BlockSystem system;
  BlockPreconditioner preconditioner;

  /// (x, y) = (M^{-1} x~, N^{-1} y~)
  std::pair<Vector, Vector> back_map(std::span<const double> x_tilde,
                                     std::span<const double> y_tilde) const;
};

/// Builds the right-preconditioned system for [[M, A], [B, N]] [x; y] = [b; c].
/// M and N are factorized once; singular blocks raise SetupError.
PreconditionedSystem preconditioned_system(const SparseMatrix& M, const SparseMatrix& N,
                                           SparseMatrix A, SparseMatrix B, Vector b, Vector c);

/// The whole coefficient matrix K of a BlockSystem seen as one operator on
/// R^{m+n}. Holds a copy of the (cheap, shared-pointer) system.
class MonolithicOperator final : public LinearOperator {
 public:
  explicit MonolithicOperator(BlockSystem sys) : sys_(std::move(sys)) {}

  index_t rows() const override { return sys_.size(); }
  index_t cols() const override { return sys_.size(); }
  void apply(std::span<const double> x, std::span<double> y) const override;

  const BlockSystem& system() const noexcept { return sys_; }

 private:
  BlockSystem sys_;
};

}  // namespace blockkrylov
