// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include <cstdint>
#include <vector>

#include "stapslp/array_config.hpp"
#include "stapslp/common.hpp"
#include "stapslp/rng.hpp"

namespace stapslp {

/// Multi-user downlink setup: Rayleigh channels, PSK symbol block, per-user
/// QoS targets (linear SNR scale) and receiver noise power.
struct CommSetup {
  int n_users = 1;                       // K_u
  int psk_order = 4;                     // Omega, power of 2, >= 2
  std::vector<VecC> channels;            // K_u vectors of length n_tx
  double noise_power = 0.01;             // sigma^2, linear
  std::vector<double> qos;               // Gamma_k, linear
  std::vector<MatC> symbols;             // per user: M x N matrix of symbols
  std::uint64_t channel_seed = 0;
  std::uint64_t symbol_seed = 0;

  double half_angle() const { return kPi / psk_order; }  // Phi

  void validate(const ArrayConfig& cfg) const {
    require(n_users >= 1, "CommSetup: n_users must be >= 1");
    require(psk_order >= 2 && (psk_order & (psk_order - 1)) == 0,
            "CommSetup: psk_order must be a power of 2 and >= 2");
    require(noise_power > 0.0, "CommSetup: noise_power must be positive");
    require(static_cast<int>(channels.size()) == n_users &&
                static_cast<int>(qos.size()) == n_users &&
                static_cast<int>(symbols.size()) == n_users,
            "CommSetup: per-user containers must have n_users entries");
    for (const auto& h : channels) {
      require(h.size() == cfg.n_tx, "CommSetup: channel length must be n_tx");
      require(h.norm() > 0.0, "CommSetup: channel vectors must be nonzero");
    }
    for (double g : qos) require(g >= 0.0, "CommSetup: QoS must be >= 0");
    for (const auto& s : symbols)
      require(s.rows() == cfg.n_pulses && s.cols() == cfg.n_samples,
              "CommSetup: symbol blocks must be M x N");
  }
};

/// K_u i.i.d. Rayleigh channels, entries CN(0, 1).
inline std::vector<VecC> generate_channels(int n_tx, int n_users,
                                           std::uint64_t seed) {
  require(n_tx >= 1 && n_users >= 1, "generate_channels: bad dimensions");
  Rng rng(seed);
  std::vector<VecC> channels(static_cast<std::size_t>(n_users));
  for (auto& h : channels) {
    h.resize(n_tx);
    for (int i = 0; i < n_tx; ++i) h(i) = rng.cnormal();
  }
  return channels;
}

/// PSK symbol blocks, one M x N matrix per user. The constellation is offset
/// by pi/Omega so that QPSK includes (1 + j)/sqrt(2) and its decision
/// boundaries align with the axes.
inline std::vector<MatC> generate_symbols(int n_users, int n_pulses,
                                          int n_samples, int psk_order,
                                          std::uint64_t seed) {
  require(psk_order >= 2, "generate_symbols: psk_order must be >= 2");
  Rng rng(seed);
  std::vector<MatC> blocks(static_cast<std::size_t>(n_users));
  for (auto& s : blocks) {
    s.resize(n_pulses, n_samples);
    for (int m = 0; m < n_pulses; ++m)
      for (int n = 0; n < n_samples; ++n) {
        const auto q = rng.uniform_index(static_cast<std::uint64_t>(psk_order));
        const double phase = 2.0 * kPi * static_cast<double>(q) / psk_order +
                             kPi / psk_order;
        s(m, n) = std::exp(kJ * phase);
      }
  }
  return blocks;
}

/// Constructive-interference constraint set: 2 * K_u * M * N rows
/// Re{h_i^H x} >= gamma_i over the full waveform vector. Rows are stored
/// interleaved as (+, -) pairs per (user, slot): rows 2i and 2i+1 differ only
/// in the sign of the cos(Phi) term and share the threshold
/// sigma * sqrt(Gamma_k) * sin(Phi).
struct CIConstraintSet {
  std::vector<VecC> rows;        // length waveform_dim each
  std::vector<double> thresholds;

  int size() const { return static_cast<int>(rows.size()); }
};

inline CIConstraintSet build_ci_constraints(const CommSetup& setup,
                                            const ArrayConfig& cfg) {
  setup.validate(cfg);
  const int dim = cfg.waveform_dim();
  const int mn = cfg.n_pulses * cfg.n_samples;
  const double phi = setup.half_angle();
  const double sin_phi = std::sin(phi), cos_phi = std::cos(phi);
  const double sigma = std::sqrt(setup.noise_power);

  CIConstraintSet cset;
  cset.rows.reserve(static_cast<std::size_t>(2 * setup.n_users * mn));
  cset.thresholds.reserve(cset.rows.capacity());
  for (int k = 0; k < setup.n_users; ++k) {
    const VecC& h = setup.channels[static_cast<std::size_t>(k)];
    const double gamma =
        sigma * std::sqrt(setup.qos[static_cast<std::size_t>(k)]) * sin_phi;
    for (int m = 0; m < cfg.n_pulses; ++m)
      for (int n = 0; n < cfg.n_samples; ++n) {
        const cxd s = setup.symbols[static_cast<std::size_t>(k)](m, n);
        const cxd rot = std::exp(-kJ * std::arg(s));
        const int slot = m * cfg.n_samples + n;
        // Row r with Re{r^H x} = Re{h^H x_slot e^{-j angle(s)} (sin Phi -+ j cos Phi)}
        // means r = h * conj(e^{-j angle(s)} (sin Phi -+ j cos Phi)).
        for (int sign : {+1, -1}) {
          const cxd coeff = rot * (sin_phi - kJ * (static_cast<double>(sign) * cos_phi));
          VecC row = VecC::Zero(dim);
          row.segment(slot * cfg.n_tx, cfg.n_tx) = h * std::conj(coeff);
          cset.rows.push_back(std::move(row));
          cset.thresholds.push_back(gamma);
        }
      }
  }
  return cset;
}

/// Per-constraint slack Re{h_i^H x} - gamma_i; x is CI-feasible iff the
/// minimum margin is >= -tol.
inline VecR ci_margins(const CIConstraintSet& cset, const VecC& x) {
  VecR margins(cset.size());
  for (int i = 0; i < cset.size(); ++i) {
    require(cset.rows[static_cast<std::size_t>(i)].size() == x.size(),
            "ci_margins: dimension mismatch");
    margins(i) = (cset.rows[static_cast<std::size_t>(i)].adjoint() * x).real()(0) -
                 cset.thresholds[static_cast<std::size_t>(i)];
  }
  return margins;
}

/// Zero-forcing equality set: one complex equality c_i^H x = rhs_i per
/// (user, slot), reproducing each symbol exactly at amplitude
/// sigma * sqrt(Gamma_k). Used by the non-CI baseline.
struct ZFConstraintSet {
  std::vector<VecC> rows;  // c_i, length waveform_dim
  std::vector<cxd> rhs;

  int size() const { return static_cast<int>(rows.size()); }
};

inline ZFConstraintSet build_zf_constraints(const CommSetup& setup,
                                            const ArrayConfig& cfg) {
  setup.validate(cfg);
  require(setup.n_users <= cfg.n_tx,
          "build_zf_constraints: zero forcing requires K_u <= n_tx");
  const int dim = cfg.waveform_dim();
  const double sigma = std::sqrt(setup.noise_power);
  ZFConstraintSet zset;
  for (int k = 0; k < setup.n_users; ++k) {
    const VecC& h = setup.channels[static_cast<std::size_t>(k)];
    const double amp = sigma * std::sqrt(setup.qos[static_cast<std::size_t>(k)]);
    for (int m = 0; m < cfg.n_pulses; ++m)
      for (int n = 0; n < cfg.n_samples; ++n) {
        const int slot = m * cfg.n_samples + n;
        VecC row = VecC::Zero(dim);
        row.segment(slot * cfg.n_tx, cfg.n_tx) = h;
        zset.rows.push_back(std::move(row));
        zset.rhs.push_back(amp * setup.symbols[static_cast<std::size_t>(k)](m, n));
      }
  }
  return zset;
}

/// Per-user symbol error rate estimate.
struct SerReport {
  int user = 0;
  std::int64_t trials = 0;  // symbol decisions made
  std::int64_t errors = 0;
  double rate = 0.0;
  double ci95 = 0.0;  // binomial confidence half-width
};

/// Monte Carlo SER of waveform x under AWGN with the setup's noise power and
/// nearest-PSK-sector decisions. n_trials noise draws per (user, slot).
inline std::vector<SerReport> estimate_ser(const CommSetup& setup,
                                           const ArrayConfig& cfg,
                                           const VecC& x, int n_trials,
                                           std::uint64_t noise_seed = 12345) {
  setup.validate(cfg);
  require(n_trials >= 1, "estimate_ser: n_trials must be >= 1");
  require(x.size() == cfg.waveform_dim(), "estimate_ser: dimension mismatch");
  const double sigma = std::sqrt(setup.noise_power);
  const int omega = setup.psk_order;
  std::vector<SerReport> reports;
  Rng rng(noise_seed);
  for (int k = 0; k < setup.n_users; ++k) {
    const VecC& h = setup.channels[static_cast<std::size_t>(k)];
    SerReport rep;
    rep.user = k;
    for (int m = 0; m < cfg.n_pulses; ++m)
      for (int n = 0; n < cfg.n_samples; ++n) {
        const int slot = m * cfg.n_samples + n;
        const cxd noise_free =
            (h.adjoint() * x.segment(slot * cfg.n_tx, cfg.n_tx))(0);
        const cxd s = setup.symbols[static_cast<std::size_t>(k)](m, n);
        // The constellation is offset by Phi, so sector q covers phases
        // [2 pi q / Omega, 2 pi (q+1) / Omega).
        const int q_true = static_cast<int>(std::llround(
            (std::arg(s) < 0 ? std::arg(s) + 2.0 * kPi : std::arg(s)) * omega /
                (2.0 * kPi) -
            0.5));
        for (int t = 0; t < n_trials; ++t) {
          const cxd received = noise_free + sigma * rng.cnormal();
          double ang = std::arg(received);
          if (ang < 0) ang += 2.0 * kPi;
          int q_hat = static_cast<int>(ang * omega / (2.0 * kPi));
          if (q_hat >= omega) q_hat = omega - 1;
          rep.trials++;
          if (q_hat != q_true) rep.errors++;
        }
      }
    rep.rate = static_cast<double>(rep.errors) / static_cast<double>(rep.trials);
    rep.ci95 = 1.96 * std::sqrt(rep.rate * (1.0 - rep.rate) /
                                static_cast<double>(rep.trials));
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace stapslp
