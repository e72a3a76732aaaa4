#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace blockkrylov {

using Vector = std::vector<double>;
using index_t = std::size_t;

/// Coordinate entry used to assemble a SparseMatrix.
struct Triplet {
  index_t row;
  index_t col;
  double value;
};

/// Compressed sparse row matrix.
///
/// Rows are sorted by column index and carry no duplicates. Explicit zeros
/// are allowed. Instances are immutable once built.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Validating constructor; throws ContractError if the CSR arrays are
  /// inconsistent, a row is unsorted, or a row holds a duplicate column.
  SparseMatrix(index_t nrows, index_t ncols, std::vector<index_t> row_offsets,
               std::vector<index_t> col_indices, Vector values);

  /// Builds from unordered triplets. Duplicate coordinates are summed.
  static SparseMatrix from_triplets(index_t nrows, index_t ncols, std::vector<Triplet> entries);

  static SparseMatrix identity(index_t n, double scale = 1.0);
  static SparseMatrix zero(index_t nrows, index_t ncols);

  /// Row-major dense input; every entry (zero or not) is stored unless
  /// `drop_zeros` is set.
  static SparseMatrix from_dense(index_t nrows, index_t ncols, std::span<const double> row_major,
                                 bool drop_zeros = true);

  index_t nrows() const noexcept { return nrows_; }
  index_t ncols() const noexcept { return ncols_; }
  index_t nnz() const noexcept { return values_.size(); }

  const std::vector<index_t>& row_offsets() const noexcept { return row_offsets_; }
  const std::vector<index_t>& col_indices() const noexcept { return col_indices_; }
  const Vector& values() const noexcept { return values_; }

  /// Stored value at (i, j), or 0 when the position is not stored.
  double at(index_t i, index_t j) const;

  double frobenius_norm() const;

  /// y = A x. Throws ContractError on dimension mismatch.
  void multiply(std::span<const double> x, std::span<double> y) const;

  SparseMatrix transpose() const;

  /// Entries with rows in [r0, r1) and columns in [c0, c1), re-based at zero.
  SparseMatrix block(index_t r0, index_t r1, index_t c0, index_t c1) const;

  /// B = P A P^T where new index i corresponds to old index order[i].
  SparseMatrix permute_symmetric(std::span<const index_t> order) const;

  std::vector<double> to_dense_row_major() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  index_t nrows_ = 0;
  index_t ncols_ = 0;
  std::vector<index_t> row_offsets_{0};
  std::vector<index_t> col_indices_;
  Vector values_;
};

/// y = A x, allocating the result.
Vector spmv(const SparseMatrix& a, std::span<const double> x);

}  // namespace blockkrylov
