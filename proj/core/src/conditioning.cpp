#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "blockkrylov/error.hpp"
#include "blockkrylov/hessenberg.hpp"

namespace blockkrylov {

double condition_number(std::span<const double> col_major, std::size_t rows, std::size_t cols) {
  if (col_major.size() != rows * cols) throw ContractError("condition_number: size mismatch");
  if (rows == 0 || cols == 0) return 1.0;
  for (double v : col_major) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
  }
  const Eigen::Map<const Eigen::MatrixXd> a(col_major.data(), static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(cols));
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smax == 0.0) return std::numeric_limits<double>::infinity();
  // Rank deficient when fewer columns than singular values would fill, or
  // when the smallest one is at roundoff level.
  const double floor = std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max(rows, cols)) * smax;
  if (cols > rows || smin <= floor) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

double basis_condition(const DenseColumnStore& store, std::size_t k) {
  if (k > store.size()) throw ContractError("basis_condition: k exceeds the column count");
  std::vector<double> a;
  a.reserve(store.length() * k);
  for (std::size_t j = 0; j < k; ++j) a.insert(a.end(), store[j].begin(), store[j].end());
  return condition_number(a, store.length(), k);
}

std::vector<double> interleaved_basis(const DenseColumnStore& D, const DenseColumnStore& L,
                                      std::size_t k) {
  if (k > D.size() || k > L.size()) throw ContractError("interleaved_basis: k exceeds basis size");
  const std::size_t m = D.length();
  const std::size_t n = L.length();
  std::vector<double> w(2 * k * (m + n), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double* dcol = w.data() + (2 * i) * (m + n);
    double* lcol = w.data() + (2 * i + 1) * (m + n) + m;
    std::copy(D[i].begin(), D[i].end(), dcol);
    std::copy(L[i].begin(), L[i].end(), lcol);
  }
  return w;
}

}  // namespace blockkrylov
