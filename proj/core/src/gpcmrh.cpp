#include "blockkrylov/gpcmrh.hpp"

#include "block_solver.hpp"

namespace blockkrylov {

namespace {

class SimProcess {
 public:
  SimProcess(const BlockSystem& sys)
      : sys_(sys), state_(sim_hess_init(sys.b, sys.c, /*pivoted=*/true)) {}

  double beta() const { return state_.beta; }
  double gamma() const { return state_.gamma; }
  StepOutcome step() { return sim_hess_pivoted_step(state_, *sys_.A, *sys_.B); }
  const HessenbergTable& H() const { return state_.H; }
  const HessenbergTable& F() const { return state_.F; }
  const DenseColumnStore& D() const { return state_.D; }
  const DenseColumnStore& L() const { return state_.L; }
  Breakdown breakdown() const { return state_.breakdown; }
  ClosureColumn closure() const { return sim_hess_closure(state_, *sys_.A, *sys_.B); }

 private:
  const BlockSystem& sys_;
  SimHessState state_;
};

}  // namespace

SolveReport gpcmrh_solve(const BlockSystem& sys, const SolveOptions& opts) {
  detail::validate_options(opts);
  SimProcess proc(sys);
  return detail::run_block_solver(sys, opts, proc, /*stop_on_bound=*/true);
}

}  // namespace blockkrylov
