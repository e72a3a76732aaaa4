#include "blockkrylov/synthetic.hpp"

#include <cmath>

#include "blockkrylov/error.hpp"

namespace blockkrylov {

SparseMatrix random_sparse(index_t rows, index_t cols, double density, double scale,
                           std::mt19937_64& rng) {
  if (!(density >= 0.0 && density <= 1.0)) throw InvalidInputError("density must lie in [0, 1]");
  std::uniform_real_distribution<double> value(-scale, scale);
  std::vector<Triplet> entries;
  const index_t total = rows * cols;
  if (density == 0.0 || total == 0) return SparseMatrix::zero(rows, cols);
  // Row-major positions; gaps between kept entries are geometric, so the cost
  // is proportional to the number of nonzeros.
  std::geometric_distribution<index_t> gap(density);
  entries.reserve(static_cast<std::size_t>(density * static_cast<double>(total)) + 1);
  for (index_t pos = density < 1.0 ? gap(rng) : 0; pos < total;
       pos += 1 + (density < 1.0 ? gap(rng) : 0)) {
    entries.push_back({pos / cols, pos % cols, value(rng)});
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

BlockSystem random_block_system(index_t m, index_t n, std::uint64_t seed,
                                const RandomSystemOptions& opts) {
  if (m == 0 || n == 0) throw InvalidInputError("random block system needs m, n >= 1");
  std::mt19937_64 rng(seed);
  // Uniform [-s, s] entries have variance s^2/3; the spectral norm of a
  // dense r x c draw is close to s (sqrt(r) + sqrt(c)) / sqrt(3).
  const double dens = std::max(opts.density, 1e-3);
  const double spread = (std::sqrt(static_cast<double>(m)) + std::sqrt(static_cast<double>(n))) *
                        std::sqrt(dens / 3.0);
  const double scale = opts.coupling / spread;
  SparseMatrix A = random_sparse(m, n, opts.density, scale, rng);
  SparseMatrix B = random_sparse(n, m, opts.density, scale, rng);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  Vector b(m), c(n);
  for (double& v : b) v = value(rng);
  for (double& v : c) v = value(rng);
  return BlockSystem::make(opts.lambda, opts.mu, std::move(A), std::move(B), std::move(b),
                           std::move(c));
}

SparseMatrix random_partitioned_matrix(index_t m, index_t n, double density, std::uint64_t seed) {
  if (m == 0 || n == 0) throw InvalidInputError("random partitioned matrix needs m, n >= 1");
  std::mt19937_64 rng(seed);
  const index_t size = m + n;
  SparseMatrix off = random_sparse(size, size, density, 1.0, rng);
  std::vector<Triplet> entries;
  Vector row_sum(size, 0.0);
  for (index_t i = 0; i < size; ++i) {
    for (index_t p = off.row_offsets()[i]; p < off.row_offsets()[i + 1]; ++p) {
      const index_t j = off.col_indices()[p];
      if (j == i) continue;
      entries.push_back({i, j, off.values()[p]});
      row_sum[i] += std::abs(off.values()[p]);
    }
  }
  for (index_t i = 0; i < size; ++i) entries.push_back({i, i, 1.0 + row_sum[i]});
  return SparseMatrix::from_triplets(size, size, std::move(entries));
}

SparseMatrix lotkin_matrix(index_t n) {
  if (n == 0) throw InvalidInputError("Lotkin matrix needs n >= 1");
  std::vector<Triplet> entries;
  entries.reserve(n * n);
  for (index_t i = 0; i < n; ++i) {
    for (index_t j = 0; j < n; ++j) {
      const double v = i == 0 ? 1.0 : 1.0 / static_cast<double>(i + j + 1);
      entries.push_back({i, j, v});
    }
  }
  return SparseMatrix::from_triplets(n, n, std::move(entries));
}

}  // namespace blockkrylov
