// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace stapslp {

using cxd = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cxd kJ{0.0, 1.0};

/// Power-style dB conversion, 10^(dB/10).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Thrown when a caller violates a documented precondition (dimension
/// mismatches, invalid parameter ranges, singular systems).
class invalid_argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The scenario admits no waveform satisfying the communication constraints
/// together with the variant's power structure.
class infeasible_scenario_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An inner solve failed in a way the design loop cannot recover from.
class solver_failure_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw invalid_argument_error(msg);
}

}  // namespace stapslp
