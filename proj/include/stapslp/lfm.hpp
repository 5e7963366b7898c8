// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include "stapslp/array_config.hpp"
#include "stapslp/common.hpp"

namespace stapslp {

/// Orthogonal LFM reference waveform set. Element (i, j) of the n_tx-by-(M N)
/// sample matrix is
///   sqrt(P / (M N n_tx)) * exp(j 2 pi i (j-1) / n_tx) * exp(j pi (j-1)^2 / n_tx)
/// with 1-based i and j; the returned vector is its column-major
/// vectorization (the canonical waveform layout).
inline VecC build_reference_lfm(const ArrayConfig& cfg, double total_power) {
  require(total_power > 0.0, "build_reference_lfm: power must be positive");
  const int n_cols = cfg.n_pulses * cfg.n_samples;
  const double amp = std::sqrt(total_power / cfg.waveform_dim());
  VecC x(cfg.waveform_dim());
  for (int col = 1; col <= n_cols; ++col) {
    for (int row = 1; row <= cfg.n_tx; ++row) {
      const double phase =
          2.0 * kPi * row * (col - 1) / cfg.n_tx +
          kPi * static_cast<double>(col - 1) * (col - 1) / cfg.n_tx;
      x((col - 1) * cfg.n_tx + (row - 1)) = amp * std::exp(kJ * phase);
    }
  }
  return x;
}

}  // namespace stapslp
