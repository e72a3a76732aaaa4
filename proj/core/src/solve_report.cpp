#include "blockkrylov/solve_report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "blockkrylov/dense.hpp"
#include "blockkrylov/error.hpp"

namespace blockkrylov {

const char* to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::maxit: return "maxit";
    case SolveStatus::breakdown_d: return "breakdown_d";
    case SolveStatus::breakdown_l: return "breakdown_l";
  }
  return "unknown";
}

double true_residual(const BlockSystem& sys, std::span<const double> x,
                     std::span<const double> y) {
  if (x.size() != sys.m() || y.size() != sys.n()) {
    throw ContractError("true_residual: iterate dimensions do not match the system");
  }
  Vector u(x.begin(), x.end());
  u.insert(u.end(), y.begin(), y.end());
  Vector r = apply_block(sys, u);
  for (std::size_t i = 0; i < sys.m(); ++i) r[i] = sys.b[i] - r[i];
  for (std::size_t i = 0; i < sys.n(); ++i) r[sys.m() + i] = sys.c[i] - r[sys.m() + i];
  return norm2(r);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_convergence_csv(std::ostream& out, const SolveReport& report) {
  const bool with_true = report.true_residual_history.has_value();
  out << "k,rho_bound,quasi_residual" << (with_true ? ",true_residual" : "") << '\n';
  for (std::size_t k = 0; k < report.rho_history.size(); ++k) {
    out << (k + 1) << ',' << fmt(report.rho_history[k]) << ',' << fmt(report.quasi_history[k]);
    if (with_true) out << ',' << fmt((*report.true_residual_history)[k]);
    out << '\n';
  }
}

void write_convergence_csv(const std::filesystem::path& path, const SolveReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_convergence_csv(out, report);
}

}  // namespace blockkrylov
