// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include "stapslp/common.hpp"
#include "stapslp/operators.hpp"
#include "stapslp/radar_metrics.hpp"

namespace stapslp {

/// Convex quadratic majorizer of the concentrated radar objective
/// f(x) = -x^H A_0^H W(x)^{-1} A_0 x at the expansion point x_t:
///
///   f(x) <= x^H D_t x - Re{b_t^H x} + c2,  with equality at x = x_t.
///
/// f is jointly concave in (A_0 x, W), so its first-order expansion through
/// the affine maps x -> A_0 x and x x^H -> W gives, with q_t = W_t^{-1} A_0 x_t,
///
///   b_t = 2 A_0^H q_t,
///   D_t = sum_{l,r} g_{l,r} g_{l,r}^H,  g_{l,r} = A_{l,r}^H q_t,
///   c2  = sigma_r^2 ||q_t||^2.
///
/// D_t is assembled from the per-factor vectors g_{l,r} (the generic
/// G^H X_t G form collapses to g g^H because X_t = x_t x_t^H is rank one),
/// using a single Cholesky factorization of W_t.
struct SurrogateCoeffs {
  MatC d_matrix;      // D_t, Hermitian PSD
  VecC b_vector;      // b_t
  double const_offset = 0.0;  // c2
  VecC iterate;       // x_t
};

inline SurrogateCoeffs build_surrogate(const OperatorSet& ops, const VecC& x_t) {
  require(x_t.size() == ops.waveform_dim(),
          "build_surrogate: dimension mismatch");
  const InterferenceFactor w(ops, x_t);
  const VecC s = ops.a0.apply(x_t);
  const VecC q = w.solve(s);

  SurrogateCoeffs c;
  c.iterate = x_t;
  c.b_vector = 2.0 * ops.a0.adjoint_apply(q);
  c.const_offset = ops.noise_power * q.squaredNorm();
  const int n = ops.waveform_dim();
  if (ops.clutter_factors.empty()) {
    c.d_matrix = MatC::Zero(n, n);
  } else {
    MatC g(n, static_cast<Eigen::Index>(ops.clutter_factors.size()));
    for (std::size_t r = 0; r < ops.clutter_factors.size(); ++r)
      g.col(static_cast<Eigen::Index>(r)) =
          ops.clutter_factors[r].adjoint_apply(q);
    c.d_matrix = g * g.adjoint();
    c.d_matrix = 0.5 * (c.d_matrix + c.d_matrix.adjoint()).eval();
  }
  return c;
}

/// x^H D_t x - Re{b_t^H x} + c2.
inline double surrogate_value(const SurrogateCoeffs& c, const VecC& x) {
  require(x.size() == c.b_vector.size(), "surrogate_value: dimension mismatch");
  const double quad = (x.adjoint() * (c.d_matrix * x)).real()(0);
  const double lin = (c.b_vector.adjoint() * x).real()(0);
  return quad - lin + c.const_offset;
}

}  // namespace stapslp
