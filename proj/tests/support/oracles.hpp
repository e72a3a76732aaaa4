#pragma once

// Dense reference computations used only by the tests. Everything here is
// written independently of the production code paths (Eigen dense algebra,
// explicit projector products, textbook pivoted LU).

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "blockkrylov/dense.hpp"
#include "blockkrylov/givens.hpp"
#include "blockkrylov/hessenberg.hpp"
#include "blockkrylov/operators.hpp"
#include "blockkrylov/sparse_matrix.hpp"

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
namespace bk = blockkrylov;

Mat dense(const bk::SparseMatrix& a);
Mat dense(const bk::LinearOperator& op);
Mat dense(const bk::DenseColumnStore& store, std::size_t k);
Mat dense(const bk::HessenbergTable& h, std::size_t rows, std::size_t cols);
Vec vec(std::span<const double> x);

/// [[lambda I, A], [B, mu I]]
Mat block_matrix(const bk::BlockSystem& sys);

/// Direct solve of the full block system; returns [x; y].
Vec direct_solve(const bk::BlockSystem& sys);

/// Random dense matrix with entries uniform in [-1, 1], kept with
/// probability `density`.
Mat random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double density = 1.0);
bk::SparseMatrix to_sparse(const Mat& a);

/// Block system from dense A, B and random b, c.
bk::BlockSystem system_from(const Mat& A, const Mat& B, double lambda, double mu,
                            std::mt19937_64& rng);

/// h_{i,k} computed from the product form
///   e_i^T P Prod_{j<i} (I - d_j e_{p_j}^T) A l_k
/// for i = 1..k+1, given the stored bases. `rows` maps a position to a row
/// (identity when unpivoted).
std::vector<double> projector_column(const Mat& A, const bk::DenseColumnStore& D,
                                     const bk::DenseColumnStore& L, const bk::Permutation& rows,
                                     std::size_t k);

/// Row-pivoted LU of V (rows x k) with the lowest-index tie-break; returns
/// the unit lower trapezoidal factor with rows in original order and the
/// pivot rows.
struct PivotedLu {
  Mat L;
  std::vector<std::size_t> pivots;
};
PivotedLu pivoted_lu(const Mat& V);

/// Largest principal angle (radians) between the column spaces of X and Y.
double max_principal_angle(const Mat& X, const Mat& Y);

/// S_{k+1,k} assembled densely from the Hessenberg tables via the
/// interleaving index map: w_{2i-1} = [d_i; 0], w_{2i} = [0; l_i].
Mat assemble_s(const bk::HessenbergTable& H, const bk::HessenbergTable& F, std::size_t k,
               double lambda, double mu);

/// Q^T as a dense (2k+2) x (2k+2) matrix composed from the rotation blocks.
Mat q_transpose(const std::vector<bk::RotationBlock>& blocks);

/// The 4x4 orthogonal matrix of one rotation block.
Mat block_matrix(const bk::RotationBlock& q);

/// Dense upper triangle from packed storage.
Mat dense(const bk::PackedUpperTriangular& r);

}  // namespace oracle
