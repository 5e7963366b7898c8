// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include <optional>
#include <vector>

#include "stapslp/common.hpp"
#include "stapslp/operators.hpp"
#include "stapslp/steering.hpp"

namespace stapslp {

/// W(x) = sum_{l,r} (A_{l,r} x)(A_{l,r} x)^H + sigma_r^2 I, factorized once
/// and reused for every solve against it.
class InterferenceFactor {
 public:
  InterferenceFactor(const OperatorSet& ops, const VecC& x) {
    require(ops.noise_power > 0.0,
            "InterferenceFactor: noise power must be positive, otherwise W "
            "may be singular");
    MatC w = MatC::Identity(ops.filter_dim(), ops.filter_dim());
    w *= ops.noise_power;
    if (!ops.clutter_factors.empty()) {
      const MatC c = ops.clutter_columns(x);
      w.noalias() += c * c.adjoint();
    }
    llt_.compute(w);
    require(llt_.info() == Eigen::Success,
            "InterferenceFactor: Cholesky factorization failed");
  }

  VecC solve(const VecC& rhs) const { return llt_.solve(rhs); }
  MatC solve(const MatC& rhs) const { return llt_.solve(rhs); }

 private:
  Eigen::LLT<MatC> llt_;
};

/// MVDR receive filter w* = W^{-1} A_0 x / (x^H A_0^H W^{-1} A_0 x).
/// Satisfies the distortionless constraint w*^H A_0 x = 1.
inline VecC mvdr_filter(const OperatorSet& ops, const VecC& x) {
  const InterferenceFactor w(ops, x);
  const VecC s = ops.a0.apply(x);
  const VecC q = w.solve(s);
  const double denom = (s.adjoint() * q).real()(0);
  require(denom > 0.0, "mvdr_filter: A_0 x is zero, filter undefined");
  return q / denom;
}

/// Radar output SINR (linear):
/// sigma_0^2 |w^H A_0 x|^2 / (w^H [R_c(x) + sigma_r^2 I] w).
inline double output_sinr(const OperatorSet& ops, double target_power,
                          const VecC& x, const VecC& w) {
  require(w.size() == ops.filter_dim() && x.size() == ops.waveform_dim(),
          "output_sinr: dimension mismatch");
  require(w.norm() > 0.0, "output_sinr: filter must be nonzero");
  const cxd num = (w.adjoint() * ops.a0.apply(x))(0);
  double denom = ops.noise_power * w.squaredNorm();
  for (const auto& a : ops.clutter_factors)
    denom += std::norm((w.adjoint() * a.apply(x))(0));
  require(denom > 0.0, "output_sinr: zero interference-plus-noise power");
  return target_power * std::norm(num) / denom;
}

/// Concentrated radar objective g(x) = x^H A_0^H W(x)^{-1} A_0 x, evaluated
/// through a Hermitian solve. SINR at the MVDR filter is sigma_0^2 * g(x).
inline double concentrated_objective(const OperatorSet& ops, const VecC& x) {
  const InterferenceFactor w(ops, x);
  const VecC s = ops.a0.apply(x);
  return (s.adjoint() * w.solve(s)).real()(0);
}

/// Space-time cross-ambiguity map |w^H Xbar(x) u(f_d, f_s)|^2 over a grid of
/// normalized Doppler and spatial frequencies. Values are nonnegative; with
/// the MVDR filter the design point evaluates to exactly 1.
struct AmbiguityPoint {
  double normalized_doppler = 0.0;
  double normalized_spatial_freq = 0.0;
  double value = 0.0;  // linear power
};

inline double cross_ambiguity_at(const ArrayConfig& cfg, const VecC& x,
                                 const VecC& w, double normalized_doppler,
                                 double normalized_spatial_freq) {
  const VecC u = st_steering_from_fs(cfg, normalized_doppler,
                                     normalized_spatial_freq);
  const StOperator au(cfg, 0, u);
  return std::norm((w.adjoint() * au.apply(x))(0));
}

inline std::vector<AmbiguityPoint> cross_ambiguity(
    const ArrayConfig& cfg, const VecC& x, const VecC& w,
    const std::vector<double>& doppler_grid,
    const std::vector<double>& spatial_grid) {
  require(!doppler_grid.empty() && !spatial_grid.empty(),
          "cross_ambiguity: grid must be nonempty");
  std::vector<AmbiguityPoint> map;
  map.reserve(doppler_grid.size() * spatial_grid.size());
  for (double fd : doppler_grid)
    for (double fs : spatial_grid)
      map.push_back({fd, fs, cross_ambiguity_at(cfg, x, w, fd, fs)});
  return map;
}

/// Feasibility audit of a finished design.
struct FeasibilityReport {
  double min_ci_margin = 0.0;          // meaningful when comm constraints exist
  bool has_ci_margin = false;
  double max_modulus_deviation = 0.0;  // vs sqrt(P / (M N n_tx))
  double papr = 1.0;
  double max_similarity_deviation = 0.0;
  bool snap_applied = true;  // false when the snap would break a CI margin
};

/// Outcome of one design run.
struct DesignResult {
  VecC waveform;  // x*
  VecC filter;    // w*
  double sinr_db = 0.0;
  std::vector<std::pair<int, double>> sinr_trace;  // (outer iteration, SINR dB)
  FeasibilityReport feasibility;
  double wall_time_s = 0.0;
  int outer_iterations = 0;
  int total_inner_iterations = 0;
  bool converged = false;
};

}  // namespace stapslp
