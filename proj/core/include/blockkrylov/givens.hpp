#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "blockkrylov/hessenberg.hpp"

namespace blockkrylov {

/// Four plane rotations acting on a window of four consecutive rows
/// (2k-1, 2k, 2k+1, 2k+2). Defaults to the identity.
struct RotationBlock {
  double c1 = 1.0, c2 = 1.0, c3 = 1.0, c4 = 1.0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
};

using Quad = std::array<double, 4>;

/// Applies, in order, rotation 1 to rows (1,4), rotation 2 to rows (1,2),
/// rotation 3 to rows (2,4) and rotation 4 to rows (2,3). Each rotation maps
/// (a, b) to (c a + s b, -s a + c b).
Quad givens4(const RotationBlock& block, double x1, double x2, double x3, double x4);
inline Quad givens4(const RotationBlock& block, const Quad& x) {
  return givens4(block, x[0], x[1], x[2], x[3]);
}

/// c, s and r >= 0 with (c a + s b, -s a + c b) = (r, 0). A zero pair gives
/// the identity rotation.
struct PlaneRotation {
  double c = 1.0;
  double s = 0.0;
  double r = 0.0;
};
PlaneRotation make_rotation(double a, double b);

struct QrBlockResult {
  RotationBlock block;
  double r11 = 0.0;  ///< r_{2k-1,2k-1}
  double r12 = 0.0;  ///< r_{2k-1,2k}
  double r22 = 0.0;  ///< r_{2k,2k}
};

/// Triangularizes the 4x2 window
///   [[rt11, rt12], [rt21, rt22], [0, h], [f, 0]]
/// with h = h_{k+1,k} and f = f_{k+1,k}. Rotation 1 removes f, rotation 2
/// removes rt21, rotation 3 removes the fill created by rotation 1 in row 4
/// of the second column, rotation 4 removes h.
QrBlockResult qr_block(double rt11, double rt12, double rt21, double rt22, double h, double f);

/// The two columns 2k-1 and 2k of S_{k+1,k} (each of length 2k+2) built from
/// column k of the Hessenberg tables H (d side) and F (l side).
struct SColumns {
  Vector odd;   ///< image of [d_k; 0]
  Vector even;  ///< image of [0; l_k]
};
SColumns assemble_s_column(const HessenbergTable& H, const HessenbergTable& F, std::size_t k,
                           double lambda, double mu);
inline SColumns assemble_s_column(const SimHessState& hess, std::size_t k, double lambda,
                                  double mu) {
  return assemble_s_column(hess.H, hess.F, k, lambda, mu);
}

/// Incremental QR factorization of the block Hessenberg matrix S_{k+1,k}
/// together with the rotated right-hand side beta e1 + gamma e2.
class QrState {
 public:
  QrState(double beta, double gamma) : tt1_(beta), tt2_(gamma) {}

  /// Number of block columns added so far.
  std::size_t steps() const noexcept { return blocks_.size(); }
  bool closed() const noexcept { return closed_; }

  /// Adds columns 2k-1, 2k for k = steps()+1: previous rotation blocks are
  /// applied, then a new block triangularizes the trailing window and the
  /// right-hand side is rotated.
  void add_step(const SColumns& cols);

  /// After a one-sided breakdown at step k: adds a final column of length
  /// 2k+2 whose row 2k+1 or 2k+2 is structurally zero (as are all other
  /// columns and the right-hand side in that row). One extra rotation on
  /// rows (2k+1, 2k+2) finishes the triangle. Returns false, leaving the
  /// state untouched, when the new diagonal entry vanishes.
  bool add_closure_column(Vector col);

  /// Last two entries of the rotated right-hand side. After closure, the
  /// first is zero and the second holds the remaining residual.
  double tau_tilde1() const noexcept { return tt1_; }
  double tau_tilde2() const noexcept { return tt2_; }
  double quasi_residual() const;

  const PackedUpperTriangular& R() const noexcept { return r_; }
  const Vector& t() const noexcept { return t_; }
  const std::vector<RotationBlock>& rotations() const noexcept { return blocks_; }
  /// Rotation on rows (2k+1, 2k+2) applied by add_closure_column.
  const PlaneRotation& closing_rotation() const noexcept { return closing_; }

  /// z = R^{-1} t
  Vector solve() const;

 private:
  std::vector<RotationBlock> blocks_;
  PackedUpperTriangular r_;
  Vector t_;
  double tt1_;
  double tt2_;
  bool closed_ = false;
  PlaneRotation closing_;
};

/// sqrt((2 max(m,n) - k)(k+1)/2) * sqrt(t1^2 + t2^2). Requires k >= 1.
double residual_bound(double tau1, double tau2, std::size_t m, std::size_t n, std::size_t k);

}  // namespace blockkrylov
