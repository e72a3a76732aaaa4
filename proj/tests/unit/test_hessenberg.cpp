#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "blockkrylov/error.hpp"
#include "blockkrylov/harness.hpp"
#include "blockkrylov/hessenberg.hpp"
#include "blockkrylov/synthetic.hpp"
#include "oracles.hpp"

namespace bk = blockkrylov;
using oracle::Mat;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Ops {
  bk::OperatorPtr A, B;
  Mat Ad, Bd;
};

Ops random_ops(std::size_t m, std::size_t n, std::mt19937_64& rng, double density = 1.0) {
  Ops o;
  o.Ad = oracle::random_matrix(m, n, rng, density);
  o.Bd = oracle::random_matrix(n, m, rng, density);
  o.A = bk::make_operator(oracle::to_sparse(o.Ad));
  o.B = bk::make_operator(oracle::to_sparse(o.Bd));
  return o;
}

std::vector<double> random_vec(std::size_t len, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(len);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<double> unit(std::size_t len, std::size_t i) {
  std::vector<double> v(len, 0.0);
  v[i] = 1.0;
  return v;
}

bk::SimHessState run_sim(const Ops& o, std::span<const double> b, std::span<const double> c,
                         bool pivoted, std::size_t steps) {
  auto s = bk::sim_hess_init(b, c, pivoted);
  for (std::size_t k = 0; k < steps && s.breakdown == bk::Breakdown::none; ++k) {
    if (pivoted) bk::sim_hess_pivoted_step(s, *o.A, *o.B);
    else bk::sim_hess_step(s, *o.A, *o.B);
  }
  return s;
}

}  // namespace

TEST(OrthHessenberg, IdentityOperatorBreaksDownImmediately) {
  const auto I = bk::make_operator(bk::SparseMatrix::identity(3));
  auto s = bk::orth_hess_init(unit(3, 0), unit(3, 0));
  EXPECT_EQ(s.V[0][0], 1.0);
  EXPECT_EQ(s.U[0][0], 1.0);
  const auto out = bk::orth_hess_step(s, *I, *I);
  EXPECT_EQ(out.breakdown, bk::Breakdown::both);
  EXPECT_DOUBLE_EQ(s.Htilde(0, 0), 1.0);
  EXPECT_EQ(s.Htilde(1, 0), 0.0);
  EXPECT_THROW(bk::orth_hess_step(s, *I, *I), bk::ContractError);
}

TEST(OrthHessenberg, ZeroRightHandSideIsInvalid) {
  EXPECT_THROW(bk::orth_hess_init(std::vector<double>{0, 0}, std::vector<double>{1}),
               bk::InvalidInputError);
  EXPECT_THROW(bk::orth_hess_init(std::vector<double>{1, 0}, std::vector<double>{0}),
               bk::InvalidInputError);
}

TEST(OrthHessenberg, OrthonormalityAndRecurrences) {
  std::mt19937_64 rng(101);
  const auto o = random_ops(8, 6, rng);
  auto s = bk::orth_hess_init(random_vec(8, rng), random_vec(6, rng));
  EXPECT_NEAR(bk::norm2(s.V[0]), 1.0, 1e-15);
  for (int k = 0; k < 5; ++k) {
    ASSERT_EQ(bk::orth_hess_step(s, *o.A, *o.B).breakdown, bk::Breakdown::none);
  }
  const Mat V6 = oracle::dense(s.V, 6);
  const Mat U6 = oracle::dense(s.U, 6);
  const Mat V5 = V6.leftCols(5), U5 = U6.leftCols(5);
  EXPECT_LE((V5.transpose() * V5 - Mat::Identity(5, 5)).norm(), 1e-12);
  EXPECT_LE((U5.transpose() * U5 - Mat::Identity(5, 5)).norm(), 1e-12);
  EXPECT_LE((o.Ad * U5 - V6 * oracle::dense(s.Htilde, 6, 5)).norm(), 1e-12 * o.Ad.norm());
  EXPECT_LE((o.Bd * V5 - U6 * oracle::dense(s.Ftilde, 6, 5)).norm(), 1e-12 * o.Bd.norm());
}

TEST(OrthHessenberg, OrthogonalityPropertyOnRandomData) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 10 + static_cast<std::size_t>(trial) * 3, n = 8 + static_cast<std::size_t>(trial) * 2;
    const auto o = random_ops(m, n, rng);
    auto s = bk::orth_hess_init(random_vec(m, rng), random_vec(n, rng));
    std::size_t k = 0;
    while (k < 7 && s.breakdown == bk::Breakdown::none) {
      bk::orth_hess_step(s, *o.A, *o.B);
      ++k;
    }
    const Mat V = oracle::dense(s.V, s.V.size());
    EXPECT_LE((V.transpose() * V - Mat::Identity(V.cols(), V.cols())).norm(),
              1e-10 * static_cast<double>(k));
  }
}

TEST(SimHessenberg, UnpivotedIdentityCase) {
  const auto I = bk::make_operator(bk::SparseMatrix::identity(3));
  auto s = bk::sim_hess_init(unit(3, 0), unit(3, 0), false);
  const auto out = bk::sim_hess_step(s, *I, *I);
  EXPECT_DOUBLE_EQ(s.H(0, 0), 1.0);
  EXPECT_EQ(s.H(1, 0), 0.0);
  EXPECT_EQ(out.breakdown, bk::Breakdown::both);
  EXPECT_EQ(out.remainder_d, 0.0);
  EXPECT_EQ(out.remainder_l, 0.0);
}

TEST(SimHessenberg, ModeMismatchAndBadInputs) {
  const auto I = bk::make_operator(bk::SparseMatrix::identity(2));
  auto piv = bk::sim_hess_init(std::vector<double>{1, 2}, std::vector<double>{1, 2}, true);
  EXPECT_THROW(bk::sim_hess_step(piv, *I, *I), bk::ContractError);
  auto unp = bk::sim_hess_init(std::vector<double>{1, 2}, std::vector<double>{1, 2}, false);
  EXPECT_THROW(bk::sim_hess_pivoted_step(unp, *I, *I), bk::ContractError);
  EXPECT_THROW(bk::sim_hess_init(std::vector<double>{0, 2}, std::vector<double>{1, 2}, false),
               bk::InvalidInputError);
  EXPECT_THROW(bk::sim_hess_init(std::vector<double>{0, 0}, std::vector<double>{1, 2}, true),
               bk::InvalidInputError);
  const auto A32 = bk::make_operator(bk::SparseMatrix::zero(3, 2));
  EXPECT_THROW(bk::sim_hess_pivoted_step(piv, *A32, *I), bk::ContractError);
}

TEST(SimHessenberg, UnpivotedLotkinMatchesProjectorProducts) {
  const Mat A = oracle::dense(bk::lotkin_matrix(5));
  const Ops o{bk::make_operator(bk::lotkin_matrix(5)),
              bk::make_operator(bk::lotkin_matrix(5).transpose()), A, A.transpose()};
  const std::vector<double> ones(5, 1.0);
  auto s = bk::sim_hess_init(ones, ones, false);
  const bk::Permutation ident(5);
  for (std::size_t k = 1; k <= 3; ++k) {
    ASSERT_EQ(bk::sim_hess_step(s, *o.A, *o.B).breakdown, bk::Breakdown::none);
    const auto h_ref = oracle::projector_column(o.Ad, s.D, s.L, ident, k);
    const auto f_ref = oracle::projector_column(o.Bd, s.L, s.D, ident, k);
    for (std::size_t i = 0; i <= k; ++i) {
      EXPECT_NEAR(s.H(i, k - 1), h_ref[i], 1e-12 * std::max(1.0, std::abs(h_ref[i])));
      EXPECT_NEAR(s.F(i, k - 1), f_ref[i], 1e-12 * std::max(1.0, std::abs(f_ref[i])));
    }
  }
}

TEST(SimHessenberg, UnpivotedFactorizationIdentity) {
  std::mt19937_64 rng(103);
  const auto o = random_ops(10, 8, rng);
  const auto s = run_sim(o, random_vec(10, rng), random_vec(8, rng), false, 5);
  ASSERT_EQ(s.breakdown, bk::Breakdown::none);
  const Mat L5 = oracle::dense(s.L, 5), D5 = oracle::dense(s.D, 5);
  EXPECT_LE((o.Ad * L5 - oracle::dense(s.D, 6) * oracle::dense(s.H, 6, 5)).norm(),
            1e-10 * o.Ad.norm() * L5.norm());
  EXPECT_LE((o.Bd * D5 - oracle::dense(s.L, 6) * oracle::dense(s.F, 6, 5)).norm(),
            1e-10 * o.Bd.norm() * D5.norm());
  // Unit lower trapezoidal without any permutation.
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_EQ(s.D[j][j], 1.0);
    for (std::size_t i = 0; i < j; ++i) EXPECT_EQ(s.D[j][i], 0.0);
  }
}

TEST(SimHessenberg, PivotedInitPicksLargestEntry) {
  auto s = bk::sim_hess_init(std::vector<double>{0.1, 3, 0.5}, std::vector<double>{1}, true);
  EXPECT_EQ(s.beta, 3.0);
  EXPECT_EQ(s.p.map(), (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_DOUBLE_EQ(s.D[0][0], 0.1 / 3);
  EXPECT_EQ(s.D[0][1], 1.0);
  EXPECT_DOUBLE_EQ(s.D[0][2], 0.5 / 3);
  // Ties go to the lowest index.
  auto t = bk::sim_hess_init(std::vector<double>{2, -2, 1}, std::vector<double>{-4, 4}, true);
  EXPECT_EQ(t.p[0], 0u);
  EXPECT_EQ(t.q[0], 0u);
  EXPECT_EQ(t.gamma, -4.0);
}

TEST(SimHessenberg, PivotedStructureOnRandomData) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 10; ++trial) {
    const auto o = random_ops(10, 8, rng, trial % 2 ? 0.3 : 1.0);
    const auto s = run_sim(o, random_vec(10, rng), random_vec(8, rng), true, 6);
    if (s.breakdown != bk::Breakdown::none) continue;
    ASSERT_EQ(s.D.size(), 7u);
    for (std::size_t j = 0; j < s.D.size(); ++j) {
      for (double v : s.D[j]) EXPECT_LE(std::abs(v), 1.0 + 4 * kEps);
      EXPECT_EQ(s.D[j][s.p[j]], 1.0);
      for (std::size_t i = 0; i < j; ++i) EXPECT_EQ(s.D[j][s.p[i]], 0.0);
    }
    for (std::size_t j = 0; j < s.L.size(); ++j) {
      for (double v : s.L[j]) EXPECT_LE(std::abs(v), 1.0 + 4 * kEps);
      EXPECT_EQ(s.L[j][s.q[j]], 1.0);
      for (std::size_t i = 0; i < j; ++i) EXPECT_EQ(s.L[j][s.q[i]], 0.0);
    }
  }
}

TEST(SimHessenberg, PivotedCoefficientsMatchProjectorProducts) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 5; ++trial) {
    const auto o = random_ops(10, 8, rng);
    auto s = bk::sim_hess_init(random_vec(10, rng), random_vec(8, rng), true);
    for (std::size_t k = 1; k <= 6; ++k) {
      ASSERT_EQ(bk::sim_hess_pivoted_step(s, *o.A, *o.B).breakdown, bk::Breakdown::none);
      const auto h_ref = oracle::projector_column(o.Ad, s.D, s.L, s.p, k);
      const auto f_ref = oracle::projector_column(o.Bd, s.L, s.D, s.q, k);
      double hn = 0, fn = 0;
      for (std::size_t i = 0; i <= k; ++i) {
        hn = std::max(hn, std::abs(h_ref[i]));
        fn = std::max(fn, std::abs(f_ref[i]));
      }
      for (std::size_t i = 0; i <= k; ++i) {
        EXPECT_NEAR(s.H(i, k - 1), h_ref[i], 1e-12 * hn);
        EXPECT_NEAR(s.F(i, k - 1), f_ref[i], 1e-12 * fn);
      }
    }
  }
}

TEST(SimHessenberg, FactorizationIdentitiesWithinRoundoff) {
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 12 + static_cast<std::size_t>(trial), n = 9 + static_cast<std::size_t>(trial);
    const auto o = random_ops(m, n, rng, 0.5);
    const std::size_t k = n - 2;
    const auto s = run_sim(o, random_vec(m, rng), random_vec(n, rng), true, k);
    ASSERT_EQ(s.breakdown, bk::Breakdown::none);
    const Mat Lk = oracle::dense(s.L, k), Dk = oracle::dense(s.D, k);
    const double slack = 64 * kEps * static_cast<double>(k);
    EXPECT_LE((o.Ad * Lk - oracle::dense(s.D, k + 1) * oracle::dense(s.H, k + 1, k)).norm(),
              slack * o.Ad.norm() * Lk.norm());
    EXPECT_LE((o.Bd * Dk - oracle::dense(s.L, k + 1) * oracle::dense(s.F, k + 1, k)).norm(),
              slack * o.Bd.norm() * Dk.norm());
  }
}

TEST(SimHessenberg, PivotedAndUnpivotedSpansAgree) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 5; ++trial) {
    const auto o = random_ops(12, 10, rng);
    const auto b = random_vec(12, rng);
    const auto c = random_vec(10, rng);
    const auto piv = run_sim(o, b, c, true, 4);
    const auto unp = run_sim(o, b, c, false, 4);
    ASSERT_EQ(piv.breakdown, bk::Breakdown::none);
    ASSERT_EQ(unp.breakdown, bk::Breakdown::none);
    for (std::size_t k = 1; k <= 5; ++k) {
      EXPECT_LE(oracle::max_principal_angle(oracle::dense(piv.D, k), oracle::dense(unp.D, k)), 1e-8);
      EXPECT_LE(oracle::max_principal_angle(oracle::dense(piv.L, k), oracle::dense(unp.L, k)), 1e-8);
    }
  }
}

TEST(SimHessenberg, PivotedBasisIsPivotedLuOfOrthonormalBasis) {
  std::mt19937_64 rng(108);
  for (int trial = 0; trial < 5; ++trial) {
    const auto o = random_ops(9, 7, rng);
    const auto b = random_vec(9, rng);
    const auto c = random_vec(7, rng);
    const auto s = run_sim(o, b, c, true, 4);
    auto orth = bk::orth_hess_init(b, c);
    for (int k = 0; k < 4; ++k) bk::orth_hess_step(orth, *o.A, *o.B);
    const auto luV = oracle::pivoted_lu(oracle::dense(orth.V, 5));
    const auto luU = oracle::pivoted_lu(oracle::dense(orth.U, 5));
    EXPECT_LE((luV.L - oracle::dense(s.D, 5)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((luU.L - oracle::dense(s.L, 5)).cwiseAbs().maxCoeff(), 1e-10);
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_EQ(luV.pivots[j], s.p[j]);
      EXPECT_EQ(luU.pivots[j], s.q[j]);
    }
  }
}

TEST(SimHessenberg, ExhaustionIsAOneSidedBreakdownThatCloses) {
  std::mt19937_64 rng(109);
  const auto o = random_ops(9, 4, rng);
  auto s = bk::sim_hess_init(random_vec(9, rng), random_vec(4, rng), true);
  bk::StepOutcome out;
  do {
    out = bk::sim_hess_pivoted_step(s, *o.A, *o.B);
  } while (out.breakdown == bk::Breakdown::none);
  EXPECT_EQ(out.k, 4u);
  EXPECT_EQ(out.breakdown, bk::Breakdown::l_side);
  EXPECT_EQ(s.F(4, 3), 0.0);
  EXPECT_EQ(s.D.size(), 5u);
  const auto cl = bk::sim_hess_closure(s, *o.A, *o.B);
  EXPECT_TRUE(cl.closed);
  ASSERT_EQ(cl.coeffs.size(), 4u);
  // B d_5 = L_4 coeffs
  const Mat L4 = oracle::dense(s.L, 4);
  const oracle::Vec lhs = o.Bd * oracle::vec(s.D[4]);
  EXPECT_LE((lhs - L4 * oracle::vec(cl.coeffs)).norm(), 1e-12 * lhs.norm());

  auto orth = bk::orth_hess_init(random_vec(9, rng), random_vec(4, rng));
  do {
    out = bk::orth_hess_step(orth, *o.A, *o.B);
  } while (out.breakdown == bk::Breakdown::none);
  EXPECT_EQ(out.breakdown, bk::Breakdown::l_side);
  EXPECT_TRUE(bk::orth_hess_closure(orth, *o.A, *o.B).closed);
  EXPECT_THROW(bk::sim_hess_closure(bk::sim_hess_init(random_vec(9, rng), random_vec(4, rng), true),
                                    *o.A, *o.B),
               bk::ContractError);
}

TEST(PivotedHessenberg, SingleOperatorProcess) {
  const auto I = bk::make_operator(bk::SparseMatrix::identity(3));
  auto s = bk::pivoted_hess_init(std::vector<double>{1, -4, 2});
  EXPECT_EQ(s.beta, -4.0);
  EXPECT_TRUE(bk::pivoted_hess_step(s, *I));
  EXPECT_DOUBLE_EQ(s.H(0, 0), 1.0);
  EXPECT_THROW(bk::pivoted_hess_step(s, *I), bk::ContractError);

  std::mt19937_64 rng(110);
  const Mat K = oracle::random_matrix(15, 15, rng);
  const auto op = bk::make_operator(oracle::to_sparse(K));
  auto t = bk::pivoted_hess_init(random_vec(15, rng));
  for (int k = 0; k < 8; ++k) ASSERT_FALSE(bk::pivoted_hess_step(t, *op));
  EXPECT_LE((K * oracle::dense(t.Z, 8) - oracle::dense(t.Z, 9) * oracle::dense(t.H, 9, 8)).norm(),
            1e-12 * K.norm() * oracle::dense(t.Z, 8).norm());
}

TEST(BasisCondition, Examples) {
  bk::DenseColumnStore q(3);
  q.append(unit(3, 0));
  q.append(unit(3, 2));
  EXPECT_NEAR(bk::basis_condition(q, 2), 1.0, 1e-14);

  bk::DenseColumnStore d(2);
  d.append({1, 0});
  d.append({1, 1});
  const double golden = (1 + std::sqrt(5.0)) / 2;
  EXPECT_NEAR(bk::basis_condition(d, 2), golden * golden, 1e-12);
  EXPECT_NEAR(bk::basis_condition(d, 1), 1.0, 1e-15);

  bk::DenseColumnStore r(3);
  r.append({1, 2, 3});
  r.append({2, 4, 6});
  EXPECT_TRUE(std::isinf(bk::basis_condition(r, 2)));
  EXPECT_THROW(bk::basis_condition(r, 3), bk::ContractError);
}

TEST(BasisCondition, InterleavedBasisLayout) {
  bk::DenseColumnStore D(2), L(1);
  D.append({1, 2});
  L.append({3});
  const auto w = bk::interleaved_basis(D, L, 1);
  EXPECT_EQ(w, (std::vector<double>{1, 2, 0, 0, 0, 3}));
}

TEST(Lotkin, MatrixDefinition) {
  const Mat A = oracle::dense(bk::lotkin_matrix(4));
  EXPECT_EQ(A.row(0), Eigen::RowVector4d(1, 1, 1, 1));
  EXPECT_DOUBLE_EQ(A(1, 0), 1.0 / 2);
  EXPECT_DOUBLE_EQ(A(3, 2), 1.0 / 6);
}

TEST(Lotkin, SingleColumnIsPerfectlyConditioned) {
  const auto rows = bk::lotkin_conditioning(10, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[0].cond_pivoted, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].cond_unpivoted, 1.0);
  EXPECT_GT(rows[1].cond_pivoted, 1.0);
  EXPECT_THROW(bk::lotkin_conditioning(3, 5), bk::InvalidInputError);
}
