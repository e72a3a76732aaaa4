#include "blockkrylov/gpmr.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "block_solver.hpp"
#include "blockkrylov/gpcmrh.hpp"

namespace blockkrylov {

namespace {

class OrthProcess {
 public:
  OrthProcess(const BlockSystem& sys) : sys_(sys), state_(orth_hess_init(sys.b, sys.c)) {}

  double beta() const { return state_.beta; }
  double gamma() const { return state_.gamma; }
  StepOutcome step() { return orth_hess_step(state_, *sys_.A, *sys_.B); }
  const HessenbergTable& H() const { return state_.Htilde; }
  const HessenbergTable& F() const { return state_.Ftilde; }
  const DenseColumnStore& D() const { return state_.V; }
  const DenseColumnStore& L() const { return state_.U; }
  Breakdown breakdown() const { return state_.breakdown; }
  ClosureColumn closure() const { return orth_hess_closure(state_, *sys_.A, *sys_.B); }

 private:
  const BlockSystem& sys_;
  OrthHessState state_;
};

}  // namespace

SolveReport gpmr_solve(const BlockSystem& sys, const SolveOptions& opts) {
  detail::validate_options(opts);
  OrthProcess proc(sys);
  return detail::run_block_solver(sys, opts, proc, /*stop_on_bound=*/false);
}

SandwichReport sandwich_verify(const BlockSystem& sys, std::size_t kmax) {
  if (kmax < 1) throw InvalidInputError("kmax must be at least 1");
  SolveOptions opts;
  opts.tol = 0.0;
  opts.absolute_tol = true;
  opts.maxit = kmax;
  opts.track_true_residual = true;
  const SolveReport gpmr = gpmr_solve(sys, opts);
  const SolveReport gpcmrh = gpcmrh_solve(sys, opts);

  // The GP-CMRH basis, regenerated step by step until W_{k+1} is unavailable.
  SimHessState hess = sim_hess_init(sys.b, sys.c, true);
  std::size_t usable = 0;
  while (usable < kmax && hess.breakdown == Breakdown::none) {
    sim_hess_pivoted_step(hess, *sys.A, *sys.B);
    if (hess.breakdown == Breakdown::none) ++usable;
  }

  SandwichReport out;
  const std::size_t count = std::min({usable, gpmr.rho_history.size(), gpcmrh.rho_history.size()});
  for (std::size_t k = 1; k <= count; ++k) {
    SandwichCheck c;
    c.k = k;
    c.r_gpmr = (*gpmr.true_residual_history)[k - 1];
    c.r_gpcmrh = (*gpcmrh.true_residual_history)[k - 1];
    const Vector w = interleaved_basis(hess.D, hess.L, k + 1);
    c.kappa_W = condition_number(w, sys.size(), 2 * (k + 1));
    c.lower_ok = c.r_gpmr <= c.r_gpcmrh * (1.0 + 1e-10);
    c.upper_ok = c.r_gpcmrh <= c.kappa_W * c.r_gpmr * (1.0 + 1e-8);
    out.checks.push_back(c);
  }
  out.complete = count == kmax;
  return out;
}

void write_sandwich_csv(std::ostream& out, const SandwichReport& report) {
  out << "k,r_gpmr,r_gpcmrh,kappa_W,ratio\n";
  char buf[160];
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", c.k, c.r_gpmr, c.r_gpcmrh,
                  c.kappa_W, c.ratio());
    out << buf;
  }
}

void write_sandwich_csv(const std::filesystem::path& path, const SandwichReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_sandwich_csv(out, report);
}

}  // namespace blockkrylov
