#include <benchmark/benchmark.h>

#include "blockkrylov/baselines.hpp"
#include "blockkrylov/gpcmrh.hpp"
#include "blockkrylov/gpmr.hpp"
#include "blockkrylov/synthetic.hpp"

namespace bk = blockkrylov;

namespace {

bk::BlockSystem bench_system(std::int64_t m) {
  bk::RandomSystemOptions opts;
  opts.density = 20.0 / static_cast<double>(m);
  opts.coupling = 0.9;
  return bk::random_block_system(static_cast<bk::index_t>(m), static_cast<bk::index_t>(m * 3 / 4),
                                 7, opts);
}

template <typename Solve>
void run(benchmark::State& state, Solve solve) {
  const auto sys = bench_system(state.range(0));
  bk::SolveOptions opts;
  opts.tol = 1e-10;
  std::size_t iters = 0;
  for (auto _ : state) {
    const auto rep = solve(sys, opts);
    iters = rep.iterations;
    benchmark::DoNotOptimize(rep.x.data());
  }
  state.counters["iterations"] = static_cast<double>(iters);
}

}  // namespace

static void BM_Gpcmrh(benchmark::State& state) {
  run(state, [](const bk::BlockSystem& s, const bk::SolveOptions& o) { return bk::gpcmrh_solve(s, o); });
}
static void BM_Gpmr(benchmark::State& state) {
  run(state, [](const bk::BlockSystem& s, const bk::SolveOptions& o) { return bk::gpmr_solve(s, o); });
}
static void BM_Gmres(benchmark::State& state) {
  run(state, [](const bk::BlockSystem& s, const bk::SolveOptions& o) {
    return bk::gmres_solve(bk::MonolithicOperator(s), s.rhs(), o);
  });
}
static void BM_Cmrh(benchmark::State& state) {
  run(state, [](const bk::BlockSystem& s, const bk::SolveOptions& o) {
    return bk::cmrh_solve(bk::MonolithicOperator(s), s.rhs(), o);
  });
}

BENCHMARK(BM_Gpcmrh)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gpmr)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gmres)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cmrh)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
