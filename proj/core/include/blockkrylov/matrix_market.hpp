#pragma once

#include <filesystem>
#include <iosfwd>

#include "blockkrylov/sparse_matrix.hpp"

namespace blockkrylov {

/// Reads a `%%MatrixMarket matrix coordinate real general|symmetric` stream.
///
/// Indices are 1-based. Duplicate coordinates are summed and symmetric
/// storage is expanded to general. Malformed input throws ParseError with
/// the offending line number.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes `a` as a general real coordinate file, one entry per stored value.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a);

}  // namespace blockkrylov
