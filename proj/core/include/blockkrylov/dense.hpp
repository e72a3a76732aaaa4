#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blockkrylov/sparse_matrix.hpp"

namespace blockkrylov {

double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// Append-only set of equal-length dense columns (Krylov basis storage).
class DenseColumnStore {
 public:
  DenseColumnStore() = default;
  explicit DenseColumnStore(std::size_t length) : length_(length) {}

  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return columns_.size(); }
  bool empty() const noexcept { return columns_.empty(); }

  /// Throws ContractError if the column length differs from length().
  void append(Vector column);

  std::span<const double> operator[](std::size_t j) const { return columns_[j]; }

  /// out = sum_j coeffs[j] * column(j) over the first coeffs.size() columns.
  void combine(std::span<const double> coeffs, std::span<double> out) const;

 private:
  std::size_t length_ = 0;
  std::vector<Vector> columns_;
};

/// Permutation stored as a position -> index map.
class Permutation {
 public:
  Permutation() = default;
  /// Identity on {0, ..., n-1}.
  explicit Permutation(std::size_t n);
  /// Throws ContractError unless `map` is a bijection on its index range.
  static Permutation from_map(std::vector<std::size_t> map);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t operator[](std::size_t pos) const { return map_[pos]; }
  void swap_positions(std::size_t a, std::size_t b);
  const std::vector<std::size_t>& map() const noexcept { return map_; }

 private:
  std::vector<std::size_t> map_;
};

/// Upper triangle stored column by column; column j holds rows 0..j.
/// The order grows by appending columns.
class PackedUpperTriangular {
 public:
  PackedUpperTriangular() = default;
  explicit PackedUpperTriangular(std::size_t order);

  std::size_t order() const noexcept { return order_; }

  /// Entry (i, j) with i <= j. Throws ContractError for i > j.
  double operator()(std::size_t i, std::size_t j) const;
  double& operator()(std::size_t i, std::size_t j);

  /// Appends column `order()` whose entries are rows 0..order().
  void append_column(std::span<const double> column);

  /// Frobenius norm of the stored triangle.
  double frobenius_norm() const;

  /// Copy truncated to the leading `order` columns.
  PackedUpperTriangular leading(std::size_t order) const;

 private:
  static std::size_t offset(std::size_t j) { return j * (j + 1) / 2; }

  std::size_t order_ = 0;
  std::vector<double> entries_;
};

/// Solves R z = t by backward substitution.
/// Throws SingularTriangularError naming the first zero diagonal found.
Vector back_substitute(const PackedUpperTriangular& r, std::span<const double> t);

}  // namespace blockkrylov
