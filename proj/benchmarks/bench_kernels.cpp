#include <benchmark/benchmark.h>

#include <random>

#include "blockkrylov/givens.hpp"
#include "blockkrylov/hessenberg.hpp"
#include "blockkrylov/synthetic.hpp"

namespace bk = blockkrylov;

static void BM_Spmv(benchmark::State& state) {
  const auto n = static_cast<bk::index_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto a = bk::random_sparse(n, n, 10.0 / static_cast<double>(n), 1.0, rng);
  const bk::Vector x(n, 1.0);
  bk::Vector y(n);
  for (auto _ : state) {
    a.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.nnz()));
}
BENCHMARK(BM_Spmv)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_Givens4(benchmark::State& state) {
  const auto r = bk::qr_block(1.0, 0.5, -0.3, 2.0, 0.7, 0.2);
  bk::Quad x{1.0, 2.0, 3.0, 4.0};
  for (auto _ : state) {
    x = bk::givens4(r.block, x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Givens4);

static void BM_QrBlock(benchmark::State& state) {
  double a = 1.0;
  for (auto _ : state) {
    auto r = bk::qr_block(a, 0.5, -0.3, 2.0, 0.7, 0.2);
    benchmark::DoNotOptimize(r);
    a += 1e-9;
  }
}
BENCHMARK(BM_QrBlock);

static void BM_PivotedHessenberg(benchmark::State& state) {
  const auto m = static_cast<bk::index_t>(state.range(0));
  const auto sys = bk::random_block_system(m, m / 2, 3, {1.0, 1.0, 0.01, 0.5});
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    auto s = bk::sim_hess_init(sys.b, sys.c, true);
    for (std::size_t j = 0; j < k && s.breakdown == bk::Breakdown::none; ++j) {
      bk::sim_hess_pivoted_step(s, *sys.A, *sys.B);
    }
    benchmark::DoNotOptimize(s.H.cols());
  }
}
BENCHMARK(BM_PivotedHessenberg)->Args({2000, 50})->Args({20000, 50});

static void BM_OrthogonalHessenberg(benchmark::State& state) {
  const auto m = static_cast<bk::index_t>(state.range(0));
  const auto sys = bk::random_block_system(m, m / 2, 3, {1.0, 1.0, 0.01, 0.5});
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    auto s = bk::orth_hess_init(sys.b, sys.c);
    for (std::size_t j = 0; j < k && s.breakdown == bk::Breakdown::none; ++j) {
      bk::orth_hess_step(s, *sys.A, *sys.B);
    }
    benchmark::DoNotOptimize(s.V.size());
  }
}
BENCHMARK(BM_OrthogonalHessenberg)->Args({2000, 50})->Args({20000, 50});
