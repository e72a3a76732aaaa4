#include "blockkrylov/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blockkrylov/error.hpp"

namespace blockkrylov {

double norm2(std::span<const double> x) {
  // Scaled accumulation keeps tiny and huge vectors finite.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double a = std::abs(v);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw ContractError("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void DenseColumnStore::append(Vector column) {
  if (column.size() != length_) {
    throw ContractError("column length " + std::to_string(column.size()) +
                        " does not match store length " + std::to_string(length_));
  }
  columns_.push_back(std::move(column));
}

void DenseColumnStore::combine(std::span<const double> coeffs, std::span<double> out) const {
  if (coeffs.size() > columns_.size() || out.size() != length_) {
    throw ContractError("combine: dimension mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) axpy(coeffs[j], columns_[j], out);
}

Permutation::Permutation(std::size_t n) : map_(n) {
  std::iota(map_.begin(), map_.end(), std::size_t{0});
}

Permutation Permutation::from_map(std::vector<std::size_t> map) {
  std::vector<bool> seen(map.size(), false);
  for (std::size_t v : map) {
    if (v >= map.size() || seen[v]) throw ContractError("map is not a permutation");
    seen[v] = true;
  }
  Permutation p;
  p.map_ = std::move(map);
  return p;
}

void Permutation::swap_positions(std::size_t a, std::size_t b) {
  if (a >= map_.size() || b >= map_.size()) throw ContractError("permutation position out of range");
  std::swap(map_[a], map_[b]);
}

PackedUpperTriangular::PackedUpperTriangular(std::size_t order)
    : order_(order), entries_(offset(order), 0.0) {}

double PackedUpperTriangular::operator()(std::size_t i, std::size_t j) const {
  if (i > j || j >= order_) throw ContractError("packed triangle access outside upper triangle");
  return entries_[offset(j) + i];
}

double& PackedUpperTriangular::operator()(std::size_t i, std::size_t j) {
  if (i > j || j >= order_) throw ContractError("packed triangle access outside upper triangle");
  return entries_[offset(j) + i];
}

void PackedUpperTriangular::append_column(std::span<const double> column) {
  if (column.size() != order_ + 1) {
    throw ContractError("appended column must have order()+1 entries");
  }
  entries_.insert(entries_.end(), column.begin(), column.end());
  ++order_;
}

double PackedUpperTriangular::frobenius_norm() const { return norm2(entries_); }

PackedUpperTriangular PackedUpperTriangular::leading(std::size_t order) const {
  if (order > order_) throw ContractError("leading block larger than the triangle");
  PackedUpperTriangular out;
  out.order_ = order;
  out.entries_.assign(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(offset(order)));
  return out;
}

Vector back_substitute(const PackedUpperTriangular& r, std::span<const double> t) {
  const std::size_t n = r.order();
  if (t.size() != n) throw ContractError("back_substitute: right-hand side length mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (r(i, i) == 0.0) throw SingularTriangularError(i);
  }
  Vector z(t.begin(), t.end());
  for (std::size_t jj = n; jj-- > 0;) {
    z[jj] /= r(jj, jj);
    const double zj = z[jj];
    for (std::size_t i = 0; i < jj; ++i) z[i] -= r(i, jj) * zj;
  }
  return z;
}

}  // namespace blockkrylov
