#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <utility>
#include <cstdio>

#include "blockkrylov/dense.hpp"
#include "blockkrylov/error.hpp"
#include "blockkrylov/matrix_market.hpp"
#include "blockkrylov/sparse_matrix.hpp"
#include "oracles.hpp"

namespace bk = blockkrylov;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bk::SparseMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return bk::read_matrix_market(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const bk::ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "expected ParseError";
  return 0;
}

}  // namespace

TEST(Spmv, IdentityReturnsInput) {
  const auto y = bk::spmv(bk::SparseMatrix::identity(3), std::vector<double>{1, 2, 3});
  EXPECT_EQ(y, (std::vector<double>{1, 2, 3}));
}

TEST(Spmv, SmallDenseMatchesHandProduct) {
  const auto a = bk::SparseMatrix::from_dense(2, 2, std::vector<double>{1, 2, 3, 4});
  EXPECT_EQ(bk::spmv(a, std::vector<double>{1, 1}), (std::vector<double>{3, 7}));
}

TEST(Spmv, ZeroOperator) {
  EXPECT_EQ(bk::spmv(bk::SparseMatrix::zero(2, 3), std::vector<double>{5, 6, 7}),
            (std::vector<double>{0, 0}));
}

TEST(Spmv, DimensionMismatchIsContractError) {
  EXPECT_THROW(bk::spmv(bk::SparseMatrix::identity(3), std::vector<double>{1, 2}),
               bk::ContractError);
}

TEST(Spmv, AgreesWithDenseReferenceOnRandomInstances) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const oracle::Mat a = oracle::random_matrix(50, 40, rng, 0.3);
    const oracle::Vec x = oracle::random_matrix(40, 1, rng);
    const auto sa = oracle::to_sparse(a);
    const auto y = bk::spmv(sa, std::span<const double>(x.data(), 40));
    const oracle::Vec ref = a * x;
    for (int i = 0; i < 50; ++i) {
      const double nnz_row = static_cast<double>(sa.row_offsets()[i + 1] - sa.row_offsets()[i]);
      const double tol = 8 * kEps * std::max(nnz_row, 1.0) * a.row(i).norm() * x.norm();
      EXPECT_NEAR(y[static_cast<std::size_t>(i)], ref(i), tol);
    }
  }
}

TEST(SparseMatrix, ConstructorRejectsUnsortedAndDuplicateColumns) {
  EXPECT_THROW(bk::SparseMatrix(1, 3, {0, 2}, {2, 1}, {1.0, 1.0}), bk::ContractError);
  EXPECT_THROW(bk::SparseMatrix(1, 3, {0, 2}, {1, 1}, {1.0, 1.0}), bk::ContractError);
  EXPECT_THROW(bk::SparseMatrix(1, 3, {0, 1}, {3}, {1.0}), bk::ContractError);
  EXPECT_THROW(bk::SparseMatrix(2, 2, {0, 1}, {0}, {1.0}), bk::ContractError);
}

TEST(SparseMatrix, TripletsSumDuplicates) {
  const auto a = bk::SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 2.0}, {0, 0, 0.5}});
  EXPECT_EQ(a.nnz(), 2u);
  EXPECT_DOUBLE_EQ(a.at(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(a.at(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(a.at(0, 1), 0.0);
}

TEST(SparseMatrix, TransposeBlockAndPermutationMatchDense) {
  std::mt19937_64 rng(5);
  const oracle::Mat a = oracle::random_matrix(7, 7, rng, 0.5);
  const auto sa = oracle::to_sparse(a);
  EXPECT_TRUE(oracle::dense(sa.transpose()).isApprox(a.transpose(), 0.0));
  EXPECT_EQ(oracle::dense(sa.block(1, 4, 2, 7)), a.block(1, 2, 3, 5));

  const std::vector<std::size_t> order{3, 0, 6, 1, 5, 2, 4};
  const oracle::Mat p = oracle::dense(sa.permute_symmetric(order));
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      EXPECT_EQ(p(i, j), a(static_cast<int>(order[static_cast<std::size_t>(i)]),
                           static_cast<int>(order[static_cast<std::size_t>(j)])));
    }
  }
}

TEST(MatrixMarket, DiagonalFile) {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real general\n"
      "2 2 2\n1 1 1.0\n2 2 2.0\n");
  EXPECT_EQ(a.nnz(), 2u);
  EXPECT_EQ(a.row_offsets(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(a.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(a.at(1, 1), 2.0);
}

TEST(MatrixMarket, SymmetricStorageIsExpanded) {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% a comment\n"
      "2 2 1\n2 1 3.0\n");
  EXPECT_DOUBLE_EQ(a.at(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(a.at(1, 0), 3.0);
  EXPECT_EQ(a.nnz(), 2u);
}

TEST(MatrixMarket, DuplicatesSumLikeAnAccumulator) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> idx(1, 5);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::ostringstream text;
  std::map<std::pair<int, int>, double> acc;
  text << "%%MatrixMarket matrix coordinate real general\n5 5 40\n";
  for (int e = 0; e < 40; ++e) {
    const int i = idx(rng), j = idx(rng);
    const double v = val(rng);
    acc[{i, j}] += v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, j, v);
    text << buf;
  }
  const auto a = parse(text.str());
  EXPECT_EQ(a.nnz(), acc.size());
  for (const auto& [ij, v] : acc) {
    EXPECT_NEAR(a.at(static_cast<std::size_t>(ij.first - 1), static_cast<std::size_t>(ij.second - 1)),
                v, 1e-14);
  }
  const auto b = parse(
      "%%MatrixMarket matrix coordinate real general\n1 1 2\n1 1 1.0\n1 1 0.5\n");
  EXPECT_DOUBLE_EQ(b.at(0, 0), 1.5);
  EXPECT_EQ(b.nnz(), 1u);
}

TEST(MatrixMarket, ErrorsNameTheOffendingLine) {
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix array real general\n2 2\n"), 1u);
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n"),
            1u);
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n"),
            1u);
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n3 1 1\n"),
            4u);
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1\n"), 3u);
  EXPECT_EQ(parse_error_line("not a banner\n"), 1u);
}

TEST(MatrixMarket, WriteReadRoundTripIsIdempotent) {
  std::mt19937_64 rng(9);
  const auto a = oracle::to_sparse(oracle::random_matrix(9, 6, rng, 0.4));
  std::stringstream s1;
  bk::write_matrix_market(s1, a);
  const auto b = bk::read_matrix_market(s1);
  EXPECT_EQ(a, b);
  std::stringstream s2;
  bk::write_matrix_market(s2, b);
  EXPECT_EQ(bk::read_matrix_market(s2), b);
}

TEST(BackSubstitute, IdentityReturnsRhs) {
  bk::PackedUpperTriangular r;
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<double> col(j + 1, 0.0);
    col[j] = 1.0;
    r.append_column(col);
  }
  EXPECT_EQ(bk::back_substitute(r, std::vector<double>{1, 2, 3, 4}),
            (std::vector<double>{1, 2, 3, 4}));
}

TEST(BackSubstitute, TwoByTwo) {
  bk::PackedUpperTriangular r;
  r.append_column(std::vector<double>{2});
  r.append_column(std::vector<double>{1, 4});
  const auto z = bk::back_substitute(r, std::vector<double>{4, 8});
  EXPECT_DOUBLE_EQ(z[0], 1.0);
  EXPECT_DOUBLE_EQ(z[1], 2.0);
  EXPECT_DOUBLE_EQ(2 * z[0] + 1 * z[1], 4.0);
  EXPECT_DOUBLE_EQ(4 * z[1], 8.0);
}

TEST(BackSubstitute, ZeroDiagonalReportsIndex) {
  bk::PackedUpperTriangular r;
  r.append_column(std::vector<double>{1});
  r.append_column(std::vector<double>{1, 0});
  r.append_column(std::vector<double>{1, 1, 1});
  try {
    bk::back_substitute(r, std::vector<double>{1, 1, 1});
    FAIL() << "expected SingularTriangularError";
  } catch (const bk::SingularTriangularError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(BackSubstitute, ResidualBoundOnRandomTriangles) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t order = 5 + static_cast<std::size_t>(trial);
    bk::PackedUpperTriangular r;
    for (std::size_t j = 0; j < order; ++j) {
      std::vector<double> col(j + 1);
      for (double& v : col) v = u(rng) / static_cast<double>(order);
      col[j] = 1.0 + std::abs(u(rng));
      r.append_column(col);
    }
    std::vector<double> t(order);
    for (double& v : t) v = u(rng);
    const auto z = bk::back_substitute(r, t);
    const oracle::Mat R = oracle::dense(r);
    const double res = (R * oracle::vec(z) - oracle::vec(t)).norm();
    EXPECT_LE(res, 32 * kEps * static_cast<double>(order) * R.norm() * oracle::vec(z).norm());
  }
}

TEST(PackedUpperTriangular, BelowDiagonalAccessIsContractError) {
  bk::PackedUpperTriangular r;
  r.append_column(std::vector<double>{1});
  r.append_column(std::vector<double>{1, 2});
  EXPECT_THROW(static_cast<void>(std::as_const(r)(1, 0)), bk::ContractError);
  EXPECT_THROW(r.append_column(std::vector<double>{1, 2}), bk::ContractError);
}

TEST(Permutation, FromMapRejectsNonBijection) {
  EXPECT_THROW(bk::Permutation::from_map({0, 0, 1}), bk::ContractError);
  EXPECT_THROW(bk::Permutation::from_map({0, 3, 1}), bk::ContractError);
  auto p = bk::Permutation::from_map({2, 0, 1});
  p.swap_positions(0, 2);
  EXPECT_EQ(p.map(), (std::vector<std::size_t>{1, 0, 2}));
}

TEST(DenseColumnStore, AppendChecksLength) {
  bk::DenseColumnStore s(3);
  s.append({1, 2, 3});
  EXPECT_THROW(s.append({1, 2}), bk::ContractError);
  std::vector<double> out(3);
  s.append({0, 1, 0});
  s.combine(std::vector<double>{2, 1}, out);
  EXPECT_EQ(out, (std::vector<double>{2, 5, 6}));
}

TEST(VectorKernels, Norms) {
  EXPECT_DOUBLE_EQ(bk::norm2(std::vector<double>{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(bk::norm_inf(std::vector<double>{3, -7, 4}), 7.0);
  EXPECT_DOUBLE_EQ(bk::norm2(std::vector<double>{1e200, 1e200}), std::sqrt(2.0) * 1e200);
}
