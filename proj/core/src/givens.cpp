#include "blockkrylov/givens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blockkrylov/error.hpp"

namespace blockkrylov {

namespace {

inline void rotate(double c, double s, double& a, double& b) {
  const double t = c * a + s * b;
  b = -s * a + c * b;
  a = t;
}

}  // namespace

Quad givens4(const RotationBlock& q, double x1, double x2, double x3, double x4) {
  rotate(q.c1, q.s1, x1, x4);
  rotate(q.c2, q.s2, x1, x2);
  rotate(q.c3, q.s3, x2, x4);
  rotate(q.c4, q.s4, x2, x3);
  return {x1, x2, x3, x4};
}

PlaneRotation make_rotation(double a, double b) {
  const double r = std::hypot(a, b);
  if (r == 0.0) return {};
  return {a / r, b / r, r};
}

QrBlockResult qr_block(double rt11, double rt12, double rt21, double rt22, double h, double f) {
  QrBlockResult out;
  RotationBlock& q = out.block;

  const auto g1 = make_rotation(rt11, f);
  q.c1 = g1.c;
  q.s1 = g1.s;
  const double rhat12 = g1.c * rt12;
  const double fill = -g1.s * rt12;

  const auto g2 = make_rotation(g1.r, rt21);
  q.c2 = g2.c;
  q.s2 = g2.s;
  out.r11 = g2.r;
  out.r12 = g2.c * rhat12 + g2.s * rt22;
  const double rhat22 = -g2.s * rhat12 + g2.c * rt22;

  const auto g3 = make_rotation(rhat22, fill);
  q.c3 = g3.c;
  q.s3 = g3.s;

  const auto g4 = make_rotation(g3.r, h);
  q.c4 = g4.c;
  q.s4 = g4.s;
  out.r22 = g4.r;
  return out;
}

SColumns assemble_s_column(const HessenbergTable& H, const HessenbergTable& F, std::size_t k,
                           double lambda, double mu) {
  if (k == 0 || k > H.cols() || k > F.cols()) {
    throw ContractError("assemble_s_column: column k is not available");
  }
  const Vector& h = H.column(k - 1);
  const Vector& f = F.column(k - 1);
  SColumns out{Vector(2 * k + 2, 0.0), Vector(2 * k + 2, 0.0)};
  // Row 2i (1-based) of the odd column carries f_{i,k}; row 2i-1 of the even
  // column carries h_{i,k}.
  for (std::size_t i = 0; i <= k; ++i) {
    out.odd[2 * i + 1] = f[i];
    out.even[2 * i] = h[i];
  }
  out.odd[2 * k - 2] += lambda;
  out.even[2 * k - 1] += mu;
  return out;
}

void QrState::add_step(const SColumns& cols) {
  if (closed_) throw ContractError("QR state is closed");
  const std::size_t k = blocks_.size() + 1;
  if (cols.odd.size() != 2 * k + 2 || cols.even.size() != 2 * k + 2) {
    throw ContractError("S columns for step " + std::to_string(k) + " need " +
                        std::to_string(2 * k + 2) + " entries");
  }
  Vector a = cols.odd;
  Vector b = cols.even;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    const std::size_t r = 2 * j;
    const Quad ya = givens4(blocks_[j], a[r], a[r + 1], a[r + 2], a[r + 3]);
    const Quad yb = givens4(blocks_[j], b[r], b[r + 1], b[r + 2], b[r + 3]);
    std::copy(ya.begin(), ya.end(), a.begin() + static_cast<std::ptrdiff_t>(r));
    std::copy(yb.begin(), yb.end(), b.begin() + static_cast<std::ptrdiff_t>(r));
  }
  const std::size_t r = 2 * k - 2;
  const QrBlockResult qr = qr_block(a[r], b[r], a[r + 1], b[r + 1], b[r + 2], a[r + 3]);

  a[r] = qr.r11;
  a.resize(r + 1);
  b[r] = qr.r12;
  b[r + 1] = qr.r22;
  b.resize(r + 2);
  r_.append_column(a);
  r_.append_column(b);

  const Quad tt = givens4(qr.block, tt1_, tt2_, 0.0, 0.0);
  t_.push_back(tt[0]);
  t_.push_back(tt[1]);
  tt1_ = tt[2];
  tt2_ = tt[3];
  blocks_.push_back(qr.block);
}

bool QrState::add_closure_column(Vector col) {
  if (closed_) throw ContractError("QR state is already closed");
  const std::size_t k = blocks_.size();
  if (k == 0 || col.size() != 2 * k + 2) {
    throw ContractError("closure column must have 2k+2 entries after k >= 1 steps");
  }
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t r = 2 * j;
    const Quad y = givens4(blocks_[j], col[r], col[r + 1], col[r + 2], col[r + 3]);
    std::copy(y.begin(), y.end(), col.begin() + static_cast<std::ptrdiff_t>(r));
  }
  const PlaneRotation g = make_rotation(col[2 * k], col[2 * k + 1]);
  if (g.r == 0.0) return false;
  col[2 * k] = g.r;
  col.resize(2 * k + 1);
  r_.append_column(col);
  t_.push_back(g.c * tt1_ + g.s * tt2_);
  tt2_ = -g.s * tt1_ + g.c * tt2_;
  tt1_ = 0.0;
  closing_ = g;
  closed_ = true;
  return true;
}

double QrState::quasi_residual() const { return std::hypot(tt1_, tt2_); }

Vector QrState::solve() const { return back_substitute(r_, t_); }

double residual_bound(double tau1, double tau2, std::size_t m, std::size_t n, std::size_t k) {
  if (k == 0) throw ContractError("residual_bound needs k >= 1");
  const double big = 2.0 * static_cast<double>(std::max(m, n));
  const double kk = static_cast<double>(k);
  const double factor = std::sqrt(std::max(big - kk, 1.0) * (kk + 1.0) / 2.0);
  return factor * std::hypot(tau1, tau2);
}

}  // namespace blockkrylov
