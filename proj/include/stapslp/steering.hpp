// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include "stapslp/array_config.hpp"
#include "stapslp/common.hpp"

namespace stapslp {

/// Normalized spatial frequency of a plane wave at azimuth theta, in units of
/// the receive element spacing: f_s = (d_r / lambda) * sin(theta).
inline double spatial_frequency(const ArrayConfig& cfg, double theta) {
  return cfg.d_rx_over_lambda * std::sin(theta);
}

// All steering phases progress as exp(-j 2 pi k f_s); a global conjugation of
// this convention leaves every quadratic metric (SINR, ambiguity) unchanged.

/// Transmit steering vector, length n_tx. Element k carries the extra path
/// phase across the transmit aperture, scaled by the spacing ratio d_t/d_r.
inline VecC steering_tx_from_fs(const ArrayConfig& cfg, double fs) {
  VecC a(cfg.n_tx);
  const double ratio = cfg.d_tx_over_lambda / cfg.d_rx_over_lambda;
  for (int k = 0; k < cfg.n_tx; ++k)
    a(k) = std::exp(-kJ * (2.0 * kPi * k * fs * ratio));
  return a;
}

/// Receive steering vector, length n_rx.
inline VecC steering_rx_from_fs(const ArrayConfig& cfg, double fs) {
  VecC b(cfg.n_rx);
  for (int k = 0; k < cfg.n_rx; ++k)
    b(k) = std::exp(-kJ * (2.0 * kPi * k * fs));
  return b;
}

inline VecC steering_tx(const ArrayConfig& cfg, double theta) {
  require(std::abs(theta) <= kPi / 2.0 + 1e-12,
          "steering_tx: |theta| must be <= pi/2");
  return steering_tx_from_fs(cfg, spatial_frequency(cfg, theta));
}

inline VecC steering_rx(const ArrayConfig& cfg, double theta) {
  require(std::abs(theta) <= kPi / 2.0 + 1e-12,
          "steering_rx: |theta| must be <= pi/2");
  return steering_rx_from_fs(cfg, spatial_frequency(cfg, theta));
}

/// Slow-time Doppler response vector, length n_pulses.
inline VecC doppler_vec(const ArrayConfig& cfg, double normalized_doppler) {
  VecC d(cfg.n_pulses);
  for (int m = 0; m < cfg.n_pulses; ++m)
    d(m) = std::exp(kJ * (2.0 * kPi * m * normalized_doppler));
  return d;
}

/// Spatial-temporal steering vector d(f_d) (x) b (x) a parameterized directly
/// by the normalized spatial frequency (used by ambiguity-map grids),
/// length n_pulses * n_rx * n_tx. Entry at multi-index (m, p, q) is
/// d_m * b_p * a_q with m outermost.
inline VecC st_steering_from_fs(const ArrayConfig& cfg,
                                double normalized_doppler, double fs) {
  const VecC d = doppler_vec(cfg, normalized_doppler);
  const VecC b = steering_rx_from_fs(cfg, fs);
  const VecC a = steering_tx_from_fs(cfg, fs);
  VecC u(cfg.steering_dim());
  int idx = 0;
  for (int m = 0; m < cfg.n_pulses; ++m)
    for (int p = 0; p < cfg.n_rx; ++p)
      for (int q = 0; q < cfg.n_tx; ++q) u(idx++) = d(m) * b(p) * a(q);
  return u;
}

inline VecC st_steering(const ArrayConfig& cfg, double normalized_doppler,
                        double theta) {
  return st_steering_from_fs(cfg, normalized_doppler,
                             spatial_frequency(cfg, theta));
}

}  // namespace stapslp
