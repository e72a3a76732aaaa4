#include "blockkrylov/hessenberg.hpp"

#include <cmath>
#include <string>

#include "blockkrylov/error.hpp"

namespace blockkrylov {

void HessenbergTable::append(Vector column) {
  if (column.size() != columns_.size() + 2) {
    throw ContractError("Hessenberg column " + std::to_string(columns_.size()) + " needs " +
                        std::to_string(columns_.size() + 2) + " entries");
  }
  columns_.push_back(std::move(column));
}

double HessenbergTable::operator()(std::size_t i, std::size_t j) const {
  if (j >= columns_.size()) throw ContractError("Hessenberg column out of range");
  return i < columns_[j].size() ? columns_[j][i] : 0.0;
}

const char* to_string(Breakdown b) noexcept {
  switch (b) {
    case Breakdown::none: return "none";
    case Breakdown::d_side: return "d_side";
    case Breakdown::l_side: return "l_side";
    case Breakdown::both: return "both";
  }
  return "unknown";
}

double breakdown_tolerance(double reference, double scale) noexcept {
  return scale * std::max(reference, 1.0);
}

namespace {

Breakdown combine(bool d_broke, bool l_broke) {
  if (d_broke && l_broke) return Breakdown::both;
  if (d_broke) return Breakdown::d_side;
  if (l_broke) return Breakdown::l_side;
  return Breakdown::none;
}

void require_live(Breakdown b) {
  if (b != Breakdown::none) {
    throw ContractError(std::string("process already broke down (") + to_string(b) + ")");
  }
}

void check_operators(std::size_t m, std::size_t n, const LinearOperator& A,
                     const LinearOperator& B) {
  if (A.rows() != m || A.cols() != n || B.rows() != n || B.cols() != m) {
    throw ContractError("operator dimensions do not match the process state");
  }
}

Vector scaled(std::span<const double> x, double s) {
  Vector out(x.begin(), x.end());
  for (double& v : out) v /= s;
  return out;
}

// Modified Gram-Schmidt of w against the columns of `basis`; returns the
// coefficients followed by the norm of the remainder.
Vector mgs(const DenseColumnStore& basis, Vector& w) {
  Vector coeffs(basis.size() + 1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    coeffs[i] = dot(basis[i], w);
    axpy(-coeffs[i], basis[i], w);
  }
  coeffs.back() = norm2(w);
  return coeffs;
}

// Elimination against unit-pivot columns: coefficient i is the entry of w at
// row rows(i), after which column i is subtracted. That entry becomes an
// exact zero.
template <typename RowOf>
Vector eliminate(const DenseColumnStore& basis, Vector& w, RowOf rows) {
  Vector coeffs(basis.size() + 1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::size_t r = rows(i);
    coeffs[i] = w[r];
    if (coeffs[i] != 0.0) axpy(-coeffs[i], basis[i], w);
    w[r] = 0.0;
  }
  return coeffs;
}

// Largest |w(perm[pos])| over pos in [from, perm.size()), lowest position on
// ties. Returns perm.size() when the range is empty.
std::size_t pivot_position(const Vector& w, const Permutation& perm, std::size_t from) {
  std::size_t best = perm.size();
  double best_abs = -1.0;
  for (std::size_t pos = from; pos < perm.size(); ++pos) {
    const double a = std::abs(w[perm[pos]]);
    if (a > best_abs) {
      best_abs = a;
      best = pos;
    }
  }
  return best;
}

std::size_t argmax_abs(std::span<const double> x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs(x[i]) > std::abs(x[best])) best = i;
  }
  return best;
}

// Shared body of one side of a simultaneous Hessenberg step: eliminate,
// select pivot, normalise and append. Returns the new subdiagonal entry
// (zero on breakdown) and whether the side broke down.
struct SideResult {
  Vector column;
  double remainder = 0.0;
  bool broke = false;
};

SideResult advance_side(DenseColumnStore& basis, Permutation& perm, Vector w, bool pivoted,
                        double scale = kBreakdownScale) {
  const std::size_t k = basis.size();
  const double tol = breakdown_tolerance(norm_inf(w), scale);
  SideResult out;
  if (pivoted) {
    out.column = eliminate(basis, w, [&](std::size_t i) { return perm[i]; });
  } else {
    out.column = eliminate(basis, w, [](std::size_t i) { return i; });
  }
  out.remainder = norm_inf(w);

  std::size_t pos = perm.size();
  if (k < w.size()) pos = pivoted ? pivot_position(w, perm, k) : k;
  const double pivot = pos < perm.size() ? w[perm[pos]] : 0.0;

  if (pos >= perm.size() || std::abs(pivot) <= tol) {
    out.column.back() = 0.0;
    out.broke = true;
    return out;
  }
  out.column.back() = pivot;
  const std::size_t row = perm[pos];
  for (double& v : w) v /= pivot;
  w[row] = 1.0;
  if (pivoted) perm.swap_positions(k, pos);
  basis.append(std::move(w));
  return out;
}

StepOutcome sim_step(SimHessState& s, const LinearOperator& A, const LinearOperator& B) {
  require_live(s.breakdown);
  check_operators(s.D.length(), s.L.length(), A, B);
  const std::size_t k = s.steps();
  if (s.D.size() != k + 1 || s.L.size() != k + 1) {
    throw ContractError("simultaneous Hessenberg state is inconsistent");
  }
  Vector d = A(s.L[k]);
  Vector l = B(s.D[k]);

  auto dside = advance_side(s.D, s.p, std::move(d), s.pivoted, s.breakdown_scale);
  auto lside = advance_side(s.L, s.q, std::move(l), s.pivoted, s.breakdown_scale);

  s.H.append(std::move(dside.column));
  s.F.append(std::move(lside.column));
  s.breakdown = combine(dside.broke, lside.broke);
  return StepOutcome{k + 1, s.breakdown, dside.remainder, lside.remainder};
}

}  // namespace

OrthHessState orth_hess_init(std::span<const double> b, std::span<const double> c) {
  OrthHessState s;
  s.beta = norm2(b);
  s.gamma = norm2(c);
  if (s.beta == 0.0 || s.gamma == 0.0) {
    throw InvalidInputError("orthogonal Hessenberg reduction needs nonzero b and c");
  }
  s.V = DenseColumnStore(b.size());
  s.U = DenseColumnStore(c.size());
  s.V.append(scaled(b, s.beta));
  s.U.append(scaled(c, s.gamma));
  return s;
}

StepOutcome orth_hess_step(OrthHessState& s, const LinearOperator& A, const LinearOperator& B) {
  require_live(s.breakdown);
  check_operators(s.V.length(), s.U.length(), A, B);
  const std::size_t k = s.steps();
  if (s.V.size() != k + 1 || s.U.size() != k + 1) {
    throw ContractError("orthogonal Hessenberg state is inconsistent");
  }
  Vector v = A(s.U[k]);
  Vector u = B(s.V[k]);
  const double tol_v = breakdown_tolerance(norm2(v));
  const double tol_u = breakdown_tolerance(norm2(u));

  Vector hcol = mgs(s.V, v);
  Vector fcol = mgs(s.U, u);
  const double hnext = hcol.back();
  const double fnext = fcol.back();
  // No room for another orthonormal vector once the side spans its space.
  const bool v_broke = s.V.size() >= s.V.length() || hnext <= tol_v;
  const bool u_broke = s.U.size() >= s.U.length() || fnext <= tol_u;

  if (v_broke) {
    hcol.back() = 0.0;
  } else {
    s.V.append(scaled(v, hnext));
  }
  if (u_broke) {
    fcol.back() = 0.0;
  } else {
    s.U.append(scaled(u, fnext));
  }
  s.Htilde.append(std::move(hcol));
  s.Ftilde.append(std::move(fcol));
  s.breakdown = combine(v_broke, u_broke);
  return StepOutcome{k + 1, s.breakdown, hnext, fnext};
}

SimHessState sim_hess_init(std::span<const double> b, std::span<const double> c, bool pivoted) {
  if (norm_inf(b) == 0.0 || norm_inf(c) == 0.0) {
    throw InvalidInputError("simultaneous Hessenberg process needs nonzero b and c");
  }
  SimHessState s;
  s.pivoted = pivoted;
  s.p = Permutation(b.size());
  s.q = Permutation(c.size());
  s.D = DenseColumnStore(b.size());
  s.L = DenseColumnStore(c.size());

  const std::size_t i0 = pivoted ? argmax_abs(b) : 0;
  const std::size_t j0 = pivoted ? argmax_abs(c) : 0;
  s.beta = b[i0];
  s.gamma = c[j0];
  if (s.beta == 0.0 || s.gamma == 0.0) {
    throw InvalidInputError("unpivoted simultaneous Hessenberg process needs b(1) and c(1) nonzero");
  }
  Vector d1 = scaled(b, s.beta);
  Vector l1 = scaled(c, s.gamma);
  d1[i0] = 1.0;
  l1[j0] = 1.0;
  s.D.append(std::move(d1));
  s.L.append(std::move(l1));
  s.p.swap_positions(0, i0);
  s.q.swap_positions(0, j0);
  return s;
}

StepOutcome sim_hess_step(SimHessState& state, const LinearOperator& A, const LinearOperator& B) {
  if (state.pivoted) throw ContractError("sim_hess_step called on a pivoted state");
  return sim_step(state, A, B);
}

StepOutcome sim_hess_pivoted_step(SimHessState& state, const LinearOperator& A,
                                  const LinearOperator& B) {
  if (!state.pivoted) throw ContractError("sim_hess_pivoted_step called on an unpivoted state");
  return sim_step(state, A, B);
}

ClosureColumn sim_hess_closure(const SimHessState& s, const LinearOperator& A,
                               const LinearOperator& B) {
  ClosureColumn out;
  const bool l_stopped = s.breakdown == Breakdown::l_side;
  const bool d_stopped = s.breakdown == Breakdown::d_side;
  if (!l_stopped && !d_stopped) throw ContractError("closure needs a one-sided breakdown");

  const DenseColumnStore& live = l_stopped ? s.D : s.L;
  const DenseColumnStore& dead = l_stopped ? s.L : s.D;
  const Permutation& perm = l_stopped ? s.q : s.p;
  Vector w = l_stopped ? B(live[live.size() - 1]) : A(live[live.size() - 1]);
  const double tol = breakdown_tolerance(norm_inf(w));
  Vector coeffs;
  if (s.pivoted) {
    coeffs = eliminate(dead, w, [&](std::size_t i) { return perm[i]; });
  } else {
    coeffs = eliminate(dead, w, [](std::size_t i) { return i; });
  }
  coeffs.pop_back();
  out.coeffs = std::move(coeffs);
  out.remainder = norm_inf(w);
  out.closed = out.remainder <= tol;
  return out;
}

ClosureColumn orth_hess_closure(const OrthHessState& s, const LinearOperator& A,
                                const LinearOperator& B) {
  ClosureColumn out;
  const bool u_stopped = s.breakdown == Breakdown::l_side;
  const bool v_stopped = s.breakdown == Breakdown::d_side;
  if (!u_stopped && !v_stopped) throw ContractError("closure needs a one-sided breakdown");

  const DenseColumnStore& live = u_stopped ? s.V : s.U;
  const DenseColumnStore& dead = u_stopped ? s.U : s.V;
  Vector w = u_stopped ? B(live[live.size() - 1]) : A(live[live.size() - 1]);
  const double tol = breakdown_tolerance(norm2(w));
  Vector coeffs = mgs(dead, w);
  out.remainder = coeffs.back();
  coeffs.pop_back();
  out.coeffs = std::move(coeffs);
  out.closed = out.remainder <= tol;
  return out;
}

PivotedHessState pivoted_hess_init(std::span<const double> g) {
  if (norm_inf(g) == 0.0) throw InvalidInputError("pivoted Hessenberg process needs a nonzero g");
  PivotedHessState s;
  s.p = Permutation(g.size());
  s.Z = DenseColumnStore(g.size());
  const std::size_t i0 = argmax_abs(g);
  s.beta = g[i0];
  Vector z1 = scaled(g, s.beta);
  z1[i0] = 1.0;
  s.Z.append(std::move(z1));
  s.p.swap_positions(0, i0);
  return s;
}

bool pivoted_hess_step(PivotedHessState& s, const LinearOperator& K) {
  if (s.broke_down) throw ContractError("process already broke down");
  if (K.rows() != s.Z.length() || K.cols() != s.Z.length()) {
    throw ContractError("operator dimensions do not match the process state");
  }
  const std::size_t k = s.steps();
  auto side = advance_side(s.Z, s.p, K(s.Z[k]), true);
  s.H.append(std::move(side.column));
  s.broke_down = side.broke;
  return side.broke;
}

}  // namespace blockkrylov
