#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blockkrylov/operators.hpp"

namespace blockkrylov {

enum class Preconditioning { none, block_direct };
enum class PartitionFormat {
  indices,  ///< whitespace-separated 0-based indices of the first block
  metis     ///< one part id (0 or 1) per line; part 0 forms the first block
};

/// Either a contiguous split (first block = indices 0..split-1) or an explicit
/// list of first-block indices.
struct PartitionSpec {
  std::optional<index_t> split;
  std::vector<index_t> first_block;
};

struct PartitionedSystem {
  SparseMatrix M, A, B, N;
  Vector b, c;
  /// new index i corresponds to original index order[i]
  std::vector<index_t> order;
};

/// Reads a partition file for a matrix of the given size.
/// Throws ParseError on malformed content or out-of-range indices.
std::vector<index_t> read_partition_file(const std::filesystem::path& path, index_t size,
                                         PartitionFormat format);

/// Symmetric permutation placing the first-block indices (in listed order)
/// before the remaining ones (ascending); the identity for a contiguous split.
std::vector<index_t> partition_order(index_t size, const PartitionSpec& spec);

/// Slices K (after the partition's symmetric permutation) into
/// M = K11, A = K12, B = K21, N = K22 and the right-hand side into b, c.
/// Throws InvalidInputError for a non-square K, a length mismatch, an empty
/// block or duplicate/out-of-range indices.
PartitionedSystem partition_system(const SparseMatrix& K, const PartitionSpec& spec,
                                   std::span<const double> rhs);

struct ExperimentConfig {
  std::filesystem::path matrix_path;  ///< empty when synthetic
  PartitionSpec partition;
  /// When set, overrides `partition` with the first block read from file.
  std::filesystem::path partition_file;
  PartitionFormat partition_format = PartitionFormat::indices;
  double lambda = 1.0;  ///< expected diagonal of M when precond == none
  double mu = 1.0;      ///< expected diagonal of N when precond == none
  double tol = 1e-10;
  std::size_t maxit = 600;
  std::vector<std::string> solvers{"gpcmrh", "gpmr", "gmres", "cmrh"};
  Preconditioning precond = Preconditioning::block_direct;
  std::uint64_t seed = 0;
  bool track_true_residual = false;
  bool absolute_tol = false;
  /// Synthetic instance (random_partitioned_matrix) used when matrix_path is
  /// empty.
  index_t synthetic_m = 0;
  index_t synthetic_n = 0;
  double synthetic_density = 0.1;
  std::filesystem::path out_dir;  ///< empty: no files written

  /// Throws InvalidInputError describing the first invalid field.
  void validate() const;
};

struct SummaryRow {
  std::string name;
  index_t size = 0;
  index_t nnz = 0;
  std::string solver;
  std::size_t iterations = 0;
  double runtime_seconds = 0.0;
  double final_relative_residual = 0.0;  ///< recomputed against the original system
  std::string status;                    ///< solver status or "error: ..."
};

struct ExperimentResult {
  std::vector<SummaryRow> rows;
  double load_seconds = 0.0;
  double setup_seconds = 0.0;  ///< preconditioner factorization
};

/// Builds rhs = K 1, partitions, optionally preconditions and runs every
/// selected solver. A solver that throws is recorded in its row and the
/// remaining solvers still run. With an out_dir, writes
/// convergence_<solver>.csv, summary.csv, summary.txt and run_info.txt.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows);

struct LotkinRow {
  std::size_t k = 0;
  double cond_pivoted = 0.0;
  double cond_unpivoted = 0.0;
};

/// kappa(D_k), k = 1..kmax, for the pivoted and unpivoted simultaneous
/// Hessenberg processes on the Lotkin matrix (B = A^T, b = c = ones). Entries
/// past a breakdown of either process are +infinity.
std::vector<LotkinRow> lotkin_conditioning(index_t n, std::size_t kmax);

/// `k,cond_pivoted,cond_unpivoted`
void write_lotkin_csv(std::ostream& out, const std::vector<LotkinRow>& rows);

}  // namespace blockkrylov
