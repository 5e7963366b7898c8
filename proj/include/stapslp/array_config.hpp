// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include "stapslp/common.hpp"

namespace stapslp {

/// Uniform-linear-array geometry and pulse/sample timing for one coherent
/// processing interval.
///
/// Derived dimensions used throughout:
///   waveform length  M * N * n_tx
///   filter length    M * N * n_rx
///   steering length  M * n_rx * n_tx
struct ArrayConfig {
  int n_tx = 1;                   // transmit antennas
  int n_rx = 1;                   // receive antennas
  double d_tx_over_lambda = 2.0;  // transmit element spacing in wavelengths
  double d_rx_over_lambda = 0.5;  // receive element spacing in wavelengths
  int n_pulses = 1;               // pulses per CPI (M)
  int n_samples = 1;              // fast-time samples per pulse (N)
  double prf_hz = 1000.0;
  double carrier_hz = 2.4e9;

  int waveform_dim() const { return n_pulses * n_samples * n_tx; }
  int filter_dim() const { return n_pulses * n_samples * n_rx; }
  int steering_dim() const { return n_pulses * n_rx * n_tx; }

  void validate() const {
    require(n_tx >= 1 && n_rx >= 1, "ArrayConfig: antenna counts must be >= 1");
    require(n_pulses >= 1 && n_samples >= 1,
            "ArrayConfig: pulse/sample counts must be >= 1");
    require(d_tx_over_lambda > 0.0 && d_rx_over_lambda > 0.0,
            "ArrayConfig: element spacings must be positive");
    require(prf_hz > 0.0 && carrier_hz > 0.0,
            "ArrayConfig: prf_hz and carrier_hz must be positive");
  }
};

/// Moving point target: azimuth, Doppler normalized by the PRF, and the
/// second moment of its complex amplitude (linear scale).
struct TargetModel {
  double azimuth_rad = 0.0;
  double normalized_doppler = 0.0;  // f_d * T_r, in [-0.5, 0.5]
  double power = 1.0;               // sigma_0^2

  void validate() const {
    require(std::abs(normalized_doppler) <= 0.5,
            "TargetModel: normalized_doppler must lie in [-0.5, 0.5]");
    require(power >= 0.0, "TargetModel: power must be nonnegative");
  }
};

}  // namespace stapslp
