#pragma once

#include <cstdint>
#include <random>

#include "blockkrylov/operators.hpp"

namespace blockkrylov {

/// rows x cols matrix whose entries are kept with probability `density` and
/// drawn uniformly from [-scale, scale].
SparseMatrix random_sparse(index_t rows, index_t cols, double density, double scale,
                           std::mt19937_64& rng);

struct RandomSystemOptions {
  double lambda = 1.0;
  double mu = 1.0;
  double density = 1.0;
  /// Off-diagonal blocks are scaled so that ||A||_2, ||B||_2 stay near this.
  double coupling = 0.5;
};

/// Block system with random A (m x n), B (n x m), b and c. Deterministic for
/// a given seed.
BlockSystem random_block_system(index_t m, index_t n, std::uint64_t seed,
                                const RandomSystemOptions& opts = {});

/// Square (m+n) matrix with diagonally dominant leading m x m and trailing
/// n x n blocks and random coupling blocks, for harness runs without input
/// files.
SparseMatrix random_partitioned_matrix(index_t m, index_t n, double density, std::uint64_t seed);

/// Hilbert matrix with its first row replaced by ones.
SparseMatrix lotkin_matrix(index_t n);

}  // namespace blockkrylov
