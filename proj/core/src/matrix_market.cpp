#include "blockkrylov/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "blockkrylov/error.hpp"

namespace blockkrylov {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool symmetric = false;

  if (!std::getline(in, line)) throw ParseError("empty stream, expected %%MatrixMarket header", 1);
  ++lineno;
  {
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", lineno);
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") throw ParseError("unsupported object '" + object + "'", lineno);
    if (format != "coordinate") throw ParseError("unsupported format '" + format + "'", lineno);
    if (field != "real" && field != "integer") {
      throw ParseError("unsupported field '" + field + "' (real required)", lineno);
    }
    if (symmetry != "general" && symmetry != "symmetric") {
      throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
    }
    symmetric = symmetry == "symmetric";
  }

  // size line
  index_t nrows = 0, ncols = 0, declared = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing size line", lineno + 1);
    ++lineno;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream ss(line);
    long long r = -1, c = -1, nz = -1;
    if (!(ss >> r >> c >> nz) || r < 0 || c < 0 || nz < 0) {
      throw ParseError("malformed size line '" + line + "'", lineno);
    }
    nrows = static_cast<index_t>(r);
    ncols = static_cast<index_t>(c);
    declared = static_cast<index_t>(nz);
    break;
  }
  if (symmetric && nrows != ncols) throw ParseError("symmetric matrix must be square", lineno);

  std::vector<Triplet> entries;
  entries.reserve(symmetric ? 2 * declared : declared);
  index_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream es(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(es >> i >> j >> v)) throw ParseError("malformed entry '" + line + "'", lineno);
    if (i < 1 || j < 1 || static_cast<index_t>(i) > nrows || static_cast<index_t>(j) > ncols) {
      throw ParseError("entry index out of range '" + line + "'", lineno);
    }
    if (++seen > declared) throw ParseError("more entries than declared", lineno);
    const auto r = static_cast<index_t>(i - 1);
    const auto c = static_cast<index_t>(j - 1);
    entries.push_back({r, c, v});
    if (symmetric && r != c) entries.push_back({c, r, v});
  }
  if (seen != declared) {
    throw ParseError("expected " + std::to_string(declared) + " entries, found " +
                         std::to_string(seen),
                     lineno);
  }
  return SparseMatrix::from_triplets(nrows, ncols, std::move(entries));
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SetupError("cannot open matrix file " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.nrows() << ' ' << a.ncols() << ' ' << a.nnz() << '\n';
  char buf[64];
  for (index_t i = 0; i < a.nrows(); ++i) {
    for (index_t p = a.row_offsets()[i]; p < a.row_offsets()[i + 1]; ++p) {
      std::snprintf(buf, sizeof buf, "%.17g", a.values()[p]);
      out << (i + 1) << ' ' << (a.col_indices()[p] + 1) << ' ' << buf << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw SetupError("cannot write matrix file " + path.string());
  write_matrix_market(out, a);
}

}  // namespace blockkrylov
