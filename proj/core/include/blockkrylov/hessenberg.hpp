#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blockkrylov/dense.hpp"
#include "blockkrylov/operators.hpp"

namespace blockkrylov {

/// Upper Hessenberg matrix stored by columns; column j (0-based) holds rows
/// 0..j+1.
class HessenbergTable {
 public:
  std::size_t cols() const noexcept { return columns_.size(); }
  void append(Vector column);
  const Vector& column(std::size_t j) const { return columns_[j]; }
  /// Entry (i, j); zero below the subdiagonal.
  double operator()(std::size_t i, std::size_t j) const;

 private:
  std::vector<Vector> columns_;
};

/// Which side of a two-sided process stopped producing basis vectors.
enum class Breakdown { none, d_side, l_side, both };

const char* to_string(Breakdown b) noexcept;

/// Default relative breakdown scale, 2^-44.
inline constexpr double kBreakdownScale = 0x1p-44;

/// Pivot threshold separating a lucky breakdown from pivot decay:
/// scale * max(reference, 1), reference being the inf-norm of the freshly
/// applied product. A zero scale reduces the test to an exact-zero check.
double breakdown_tolerance(double reference, double scale = kBreakdownScale) noexcept;

struct StepOutcome {
  std::size_t k = 0;  ///< 1-based index of the step just taken
  Breakdown breakdown = Breakdown::none;
  /// Size of the eliminated vectors before normalisation (inf-norm for the
  /// simultaneous process, 2-norm for the orthogonal one).
  double remainder_d = 0.0;
  double remainder_l = 0.0;
};

// ---------------------------------------------------------------------------
// Orthogonal Hessenberg reduction (modified Gram-Schmidt on both sides).

struct OrthHessState {
  DenseColumnStore V;  ///< m-vectors, orthonormal
  DenseColumnStore U;  ///< n-vectors, orthonormal
  HessenbergTable Htilde;
  HessenbergTable Ftilde;
  double beta = 0.0;
  double gamma = 0.0;
  Breakdown breakdown = Breakdown::none;

  std::size_t steps() const noexcept { return Htilde.cols(); }
};

/// v1 = b/|b|, u1 = c/|c|. Throws InvalidInputError for a zero b or c.
OrthHessState orth_hess_init(std::span<const double> b, std::span<const double> c);

/// One step k: Au_k and Bv_k orthogonalised against all previous columns.
/// On breakdown the vanished side gets no new column and its subdiagonal
/// entry is recorded as zero. Stepping a broken-down state throws
/// ContractError.
StepOutcome orth_hess_step(OrthHessState& state, const LinearOperator& A, const LinearOperator& B);

// ---------------------------------------------------------------------------
// Inner-product-free simultaneous Hessenberg process.

struct SimHessState {
  DenseColumnStore D;  ///< m-vectors
  DenseColumnStore L;  ///< n-vectors
  Permutation p;       ///< row pivots of D (position -> row)
  Permutation q;       ///< row pivots of L
  HessenbergTable H;
  HessenbergTable F;
  double beta = 0.0;
  double gamma = 0.0;
  bool pivoted = true;
  Breakdown breakdown = Breakdown::none;
  /// Scale passed to breakdown_tolerance. Zero runs the process until an
  /// exactly vanishing pivot or an exhausted index range.
  double breakdown_scale = kBreakdownScale;

  std::size_t steps() const noexcept { return H.cols(); }
};

/// Starts the process. With pivoting, beta and gamma are the entries of
/// largest magnitude in b and c (lowest index on ties) and p(1), q(1) are
/// swapped accordingly. Without pivoting beta = b(1), gamma = c(1).
/// Throws InvalidInputError for a zero b or c, or (unpivoted) a zero
/// leading entry.
SimHessState sim_hess_init(std::span<const double> b, std::span<const double> c, bool pivoted);

/// Unpivoted step: coefficients are read at positions 1..k. Requires
/// state.pivoted == false.
StepOutcome sim_hess_step(SimHessState& state, const LinearOperator& A, const LinearOperator& B);

/// Pivoted step: coefficients are read through p and q, the next pivot is
/// the largest remaining entry (lowest position on ties). Requires
/// state.pivoted == true.
StepOutcome sim_hess_pivoted_step(SimHessState& state, const LinearOperator& A,
                                  const LinearOperator& B);

/// After a one-sided breakdown the surviving side has one more basis vector
/// than the other. The image of that vector under the coupling operator
/// (B d_{k+1} after an l-side stop, A l_{k+1} after a d-side stop) is
/// reduced against the exhausted side. `closed` reports whether the
/// remainder vanished, in which case the enlarged basis spans an invariant
/// subspace.
struct ClosureColumn {
  Vector coeffs;  ///< k coefficients against the exhausted side
  double remainder = 0.0;
  bool closed = false;
};

ClosureColumn sim_hess_closure(const SimHessState& state, const LinearOperator& A,
                               const LinearOperator& B);
ClosureColumn orth_hess_closure(const OrthHessState& state, const LinearOperator& A,
                                const LinearOperator& B);

// ---------------------------------------------------------------------------
// Single-operator pivoted Hessenberg process (the basis of CMRH).

struct PivotedHessState {
  DenseColumnStore Z;
  Permutation p;
  HessenbergTable H;
  double beta = 0.0;
  bool broke_down = false;

  std::size_t steps() const noexcept { return H.cols(); }
};

/// z1 = g / g(i0) with i0 the entry of largest magnitude. Throws
/// InvalidInputError for a zero g.
PivotedHessState pivoted_hess_init(std::span<const double> g);

/// One step with a square operator K. Returns true when the step broke down
/// (the subdiagonal entry is then recorded as zero).
bool pivoted_hess_step(PivotedHessState& state, const LinearOperator& K);

// ---------------------------------------------------------------------------
// Conditioning diagnostics (dense SVD; desk scale).

/// kappa of the first k columns of `store`; +infinity when numerically rank
/// deficient. Throws ContractError if k exceeds the column count.
double basis_condition(const DenseColumnStore& store, std::size_t k);

/// kappa of a dense column-major rows x cols matrix.
double condition_number(std::span<const double> col_major, std::size_t rows, std::size_t cols);

/// Column-major (m+n) x 2k matrix [w_1 ... w_k] with w_i = blkdiag(d_i, l_i).
std::vector<double> interleaved_basis(const DenseColumnStore& D, const DenseColumnStore& L,
                                      std::size_t k);

}  // namespace blockkrylov
