// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include <utility>
#include <vector>

#include "stapslp/array_config.hpp"
#include "stapslp/common.hpp"

namespace stapslp {

// Canonical waveform layout used by every module: x = vec(X) with
// X = [X_1, ..., X_M], each X_m an n_tx-by-N pulse matrix vectorized
// column-major. The time slot (m, n) therefore occupies the contiguous
// complex coordinates [(m*N + n)*n_tx, (m*N + n + 1)*n_tx).
//
// Received-space vectors (filter length M*N*n_rx) are ordered pulse-major,
// then receive antenna, then fast-time sample.

/// Shift matrix J_l: entry (i, j) = 1 iff i - j + l = 0. For |l| >= N the
/// matrix is zero (a range cell fully outside the processing window
/// contributes nothing).
inline MatR shift_matrix(int n, int l) {
  MatR j = MatR::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int col = i + l;
    if (col >= 0 && col < n) j(i, col) = 1.0;
  }
  return j;
}

/// Permutation T with vec(X^T) = T vec(X) for any n_tx-by-n matrix X.
inline MatR permutation_T(int n_tx, int n) {
  const int dim = n_tx * n;
  MatR t = MatR::Zero(dim, dim);
  for (int i = 0; i < n_tx; ++i)
    for (int j = 0; j < n; ++j) t(j + i * n, i + j * n_tx) = 1.0;
  return t;
}

/// Linear map x -> Jbar_l Xbar(x) u for a fixed spatial-temporal vector u,
/// where Xbar(x) = blkdiag{ I_{n_rx} (x) X_m^T } and
/// Jbar_l = I_{n_rx * M} (x) J_l^T.
///
/// The target operator A_0 is the l = 0 case with u = u_0; clutter factor
/// operators A_{l,r} use the range-cell shift l and an inner-CCM rank factor
/// u_{l,r}. Application is implicit (reshape + small matrix products); the
/// dense form exists for verification and small problems only.
class StOperator {
 public:
  StOperator() = default;

  /// cfg plus the defining vector u of length M * n_rx * n_tx.
  StOperator(const ArrayConfig& cfg, int shift, const VecC& u)
      : n_tx_(cfg.n_tx),
        n_rx_(cfg.n_rx),
        n_pulses_(cfg.n_pulses),
        n_samples_(cfg.n_samples),
        shift_(shift) {
    require(u.size() == cfg.steering_dim(),
            "StOperator: u must have length M * n_rx * n_tx");
    u_mats_.reserve(n_pulses_);
    for (int m = 0; m < n_pulses_; ++m) {
      // vec(U_m) = u_m: reshape the m-th subvector column-major.
      Eigen::Map<const MatC> um(u.data() + m * n_rx_ * n_tx_, n_tx_, n_rx_);
      u_mats_.push_back(um);
    }
  }

  int rows() const { return n_pulses_ * n_samples_ * n_rx_; }
  int cols() const { return n_pulses_ * n_samples_ * n_tx_; }
  int shift() const { return shift_; }

  /// y = A x. x has the canonical waveform layout.
  VecC apply(const VecC& x) const {
    require(x.size() == cols(), "StOperator::apply: dimension mismatch");
    const int n = n_samples_;
    VecC y = VecC::Zero(rows());
    for (int m = 0; m < n_pulses_; ++m) {
      Eigen::Map<const MatC> xm(x.data() + m * n * n_tx_, n_tx_, n);
      const MatC prod = xm.transpose() * u_mats_[m];  // N x n_rx
      for (int p = 0; p < n_rx_; ++p) {
        VecC out = VecC::Zero(n);
        for (int i = 0; i < n; ++i) {
          const int src = i - shift_;
          if (src >= 0 && src < n) out(i) = prod(src, p);
        }
        y.segment((m * n_rx_ + p) * n, n) = out;
      }
    }
    return y;
  }

  /// x = A^H y.
  VecC adjoint_apply(const VecC& y) const {
    require(y.size() == rows(), "StOperator::adjoint_apply: dimension mismatch");
    const int n = n_samples_;
    VecC x = VecC::Zero(cols());
    MatC v(n, n_rx_);
    for (int m = 0; m < n_pulses_; ++m) {
      for (int p = 0; p < n_rx_; ++p) {
        // Jbar_l^H applies J_l per block: (J_l w)_i = w_{i + l}.
        for (int i = 0; i < n; ++i) {
          const int src = i + shift_;
          v(i, p) = (src >= 0 && src < n) ? y((m * n_rx_ + p) * n + src)
                                          : cxd(0.0, 0.0);
        }
      }
      const MatC z = u_mats_[m].conjugate() * v.transpose();  // n_tx x N
      Eigen::Map<MatC>(x.data() + m * n * n_tx_, n_tx_, n) = z;
    }
    return x;
  }

  /// Dense matrix form, rows() x cols(). Verification path only.
  MatC dense() const {
    MatC a(rows(), cols());
    VecC e = VecC::Zero(cols());
    for (int j = 0; j < cols(); ++j) {
      e(j) = 1.0;
      a.col(j) = apply(e);
      e(j) = 0.0;
    }
    return a;
  }

 private:
  int n_tx_ = 0, n_rx_ = 0, n_pulses_ = 0, n_samples_ = 0, shift_ = 0;
  std::vector<MatC> u_mats_;  // per-pulse n_tx x n_rx reshapes of u
};

inline StOperator build_target_operator(const ArrayConfig& cfg, const VecC& u0) {
  return StOperator(cfg, 0, u0);
}

inline StOperator build_clutter_operator(const ArrayConfig& cfg, int l,
                                         const VecC& u_lr) {
  return StOperator(cfg, l, u_lr);
}

/// The full set of linear maps defining one radar scene: the target operator
/// A_0, the clutter factor operators A_{l,r}, and the receiver noise power.
/// Immutable after construction and safe to share across threads.
struct OperatorSet {
  StOperator a0;
  std::vector<StOperator> clutter_factors;
  double noise_power = 1.0;  // sigma_r^2

  int waveform_dim() const { return a0.cols(); }
  int filter_dim() const { return a0.rows(); }

  /// Columns A_{l,r} x for all factors, filter_dim x n_factors. The clutter
  /// covariance at x is C C^H.
  MatC clutter_columns(const VecC& x) const {
    MatC c(filter_dim(), static_cast<Eigen::Index>(clutter_factors.size()));
    for (std::size_t r = 0; r < clutter_factors.size(); ++r)
      c.col(static_cast<Eigen::Index>(r)) = clutter_factors[r].apply(x);
    return c;
  }
};

}  // namespace stapslp
