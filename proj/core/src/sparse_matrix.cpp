#include "blockkrylov/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "blockkrylov/error.hpp"

namespace blockkrylov {

SparseMatrix::SparseMatrix(index_t nrows, index_t ncols, std::vector<index_t> row_offsets,
                           std::vector<index_t> col_indices, Vector values)
    : nrows_(nrows),
      ncols_(ncols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != nrows_ + 1) {
    throw ContractError("row_offsets must have nrows+1 entries");
  }
  if (row_offsets_.front() != 0 || row_offsets_.back() != values_.size() ||
      col_indices_.size() != values_.size()) {
    throw ContractError("row_offsets inconsistent with stored entries");
  }
  for (index_t i = 0; i < nrows_; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1]) {
      throw ContractError("row_offsets must be nondecreasing");
    }
    for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      if (col_indices_[p] >= ncols_) {
        throw ContractError("column index out of range in row " + std::to_string(i));
      }
      if (p > row_offsets_[i] && col_indices_[p] <= col_indices_[p - 1]) {
        throw ContractError("columns must be strictly increasing in row " + std::to_string(i));
      }
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(index_t nrows, index_t ncols,
                                         std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row >= nrows || t.col >= ncols) {
      throw ContractError("triplet index out of range");
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<index_t> offsets(nrows + 1, 0);
  std::vector<index_t> cols;
  Vector vals;
  cols.reserve(entries.size());
  vals.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& t = entries[k];
    if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      vals.back() += t.value;
      continue;
    }
    cols.push_back(t.col);
    vals.push_back(t.value);
    ++offsets[t.row + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return SparseMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::identity(index_t n, double scale) {
  std::vector<index_t> offsets(n + 1);
  std::iota(offsets.begin(), offsets.end(), index_t{0});
  std::vector<index_t> cols(n);
  std::iota(cols.begin(), cols.end(), index_t{0});
  return SparseMatrix(n, n, std::move(offsets), std::move(cols), Vector(n, scale));
}

SparseMatrix SparseMatrix::zero(index_t nrows, index_t ncols) {
  return SparseMatrix(nrows, ncols, std::vector<index_t>(nrows + 1, 0), {}, {});
}

SparseMatrix SparseMatrix::from_dense(index_t nrows, index_t ncols,
                                      std::span<const double> row_major, bool drop_zeros) {
  if (row_major.size() != nrows * ncols) {
    throw ContractError("dense input size does not match dimensions");
  }
  std::vector<index_t> offsets(nrows + 1, 0);
  std::vector<index_t> cols;
  Vector vals;
  for (index_t i = 0; i < nrows; ++i) {
    for (index_t j = 0; j < ncols; ++j) {
      const double v = row_major[i * ncols + j];
      if (drop_zeros && v == 0.0) continue;
      cols.push_back(j);
      vals.push_back(v);
    }
    offsets[i + 1] = cols.size();
  }
  return SparseMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

double SparseMatrix::at(index_t i, index_t j) const {
  if (i >= nrows_ || j >= ncols_) throw ContractError("index out of range");
  const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
  const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<index_t>(it - col_indices_.begin())];
}

double SparseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != ncols_ || y.size() != nrows_) {
    throw ContractError("spmv dimension mismatch: matrix is " + std::to_string(nrows_) + "x" +
                        std::to_string(ncols_) + ", x has " + std::to_string(x.size()) +
                        ", y has " + std::to_string(y.size()));
  }
  for (index_t i = 0; i < nrows_; ++i) {
    double acc = 0.0;
    for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      acc += values_[p] * x[col_indices_[p]];
    }
    y[i] = acc;
  }
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<index_t> offsets(ncols_ + 1, 0);
  for (index_t c : col_indices_) ++offsets[c + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<index_t> next(offsets.begin(), offsets.end() - 1);
  std::vector<index_t> cols(nnz());
  Vector vals(nnz());
  for (index_t i = 0; i < nrows_; ++i) {
    for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      const index_t dst = next[col_indices_[p]]++;
      cols[dst] = i;
      vals[dst] = values_[p];
    }
  }
  return SparseMatrix(ncols_, nrows_, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::block(index_t r0, index_t r1, index_t c0, index_t c1) const {
  if (r0 > r1 || r1 > nrows_ || c0 > c1 || c1 > ncols_) {
    throw ContractError("block range out of bounds");
  }
  std::vector<index_t> offsets(r1 - r0 + 1, 0);
  std::vector<index_t> cols;
  Vector vals;
  for (index_t i = r0; i < r1; ++i) {
    for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      const index_t j = col_indices_[p];
      if (j >= c0 && j < c1) {
        cols.push_back(j - c0);
        vals.push_back(values_[p]);
      }
    }
    offsets[i - r0 + 1] = cols.size();
  }
  return SparseMatrix(r1 - r0, c1 - c0, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::permute_symmetric(std::span<const index_t> order) const {
  if (nrows_ != ncols_ || order.size() != nrows_) {
    throw ContractError("symmetric permutation needs a square matrix and a full ordering");
  }
  std::vector<index_t> inverse(nrows_, nrows_);
  for (index_t i = 0; i < order.size(); ++i) {
    if (order[i] >= nrows_ || inverse[order[i]] != nrows_) {
      throw ContractError("ordering is not a permutation");
    }
    inverse[order[i]] = i;
  }
  std::vector<Triplet> entries;
  entries.reserve(nnz());
  for (index_t i = 0; i < nrows_; ++i) {
    for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      entries.push_back({inverse[i], inverse[col_indices_[p]], values_[p]});
    }
  }
  return from_triplets(nrows_, ncols_, std::move(entries));
}

std::vector<double> SparseMatrix::to_dense_row_major() const {
  std::vector<double> dense(nrows_ * ncols_, 0.0);
  for (index_t i = 0; i < nrows_; ++i) {
    for (index_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      dense[i * ncols_ + col_indices_[p]] = values_[p];
    }
  }
  return dense;
}

Vector spmv(const SparseMatrix& a, std::span<const double> x) {
  Vector y(a.nrows());
  a.multiply(x, y);
  return y;
}

}  // namespace blockkrylov
