// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stapslp/common.hpp"
#include "stapslp/operators.hpp"
#include "stapslp/rng.hpp"
#include "stapslp/steering.hpp"

namespace stapslp {

enum class ClutterDopplerModel {
  kZero,    // stationary clutter
  kRidge,   // angle-Doppler coupled: f_c = slope * f_s(theta)
  kUniform  // uniform random in [-0.5, 0.5]
};

enum class ClutterAzimuthMode {
  kGrid,   // evenly spaced over [-pi/2, pi/2)
  kRandom  // uniform random over [-pi/2, pi/2)
};

struct ClutterPatch {
  double azimuth_rad = 0.0;
  double normalized_doppler = 0.0;
};

/// One realization of the clutter environment: 2L+1 range cells indexed
/// l in {-L, ..., L}, each holding patches_per_cell patches.
struct ClutterScene {
  int half_width_cells = 0;  // L
  int patches_per_cell = 1;  // N_c
  double patch_power = 1.0;  // sigma_c^2, linear
  std::vector<std::vector<ClutterPatch>> cells;  // index 0 <-> l = -L
  std::uint64_t rng_seed = 0;
  ClutterDopplerModel doppler_model = ClutterDopplerModel::kRidge;
  ClutterAzimuthMode azimuth_mode = ClutterAzimuthMode::kGrid;
  double ridge_slope = 1.0;

  const std::vector<ClutterPatch>& cell(int l) const {
    require(l >= -half_width_cells && l <= half_width_cells,
            "ClutterScene: cell index out of range");
    return cells[static_cast<std::size_t>(l + half_width_cells)];
  }
};

/// Draws a clutter scene. Deterministic given the seed; in grid mode the
/// azimuths are the even grid -pi/2 + k*pi/N_c and only the Doppler draw
/// (uniform model) consumes randomness.
inline ClutterScene generate_scene(const ArrayConfig& cfg, int half_width_cells,
                                   int patches_per_cell, double patch_power,
                                   ClutterDopplerModel doppler_model,
                                   std::uint64_t seed,
                                   ClutterAzimuthMode azimuth_mode =
                                       ClutterAzimuthMode::kGrid,
                                   double ridge_slope = 1.0) {
  require(half_width_cells >= 0, "generate_scene: L must be >= 0");
  require(patches_per_cell >= 1, "generate_scene: N_c must be >= 1");
  require(patch_power >= 0.0, "generate_scene: patch power must be >= 0");
  ClutterScene scene;
  scene.half_width_cells = half_width_cells;
  scene.patches_per_cell = patches_per_cell;
  scene.patch_power = patch_power;
  scene.rng_seed = seed;
  scene.doppler_model = doppler_model;
  scene.azimuth_mode = azimuth_mode;
  scene.ridge_slope = ridge_slope;
  Rng rng(seed);
  for (int l = -half_width_cells; l <= half_width_cells; ++l) {
    std::vector<ClutterPatch> patches(patches_per_cell);
    for (int k = 0; k < patches_per_cell; ++k) {
      ClutterPatch& p = patches[static_cast<std::size_t>(k)];
      p.azimuth_rad = (azimuth_mode == ClutterAzimuthMode::kGrid)
                          ? -kPi / 2.0 + k * kPi / patches_per_cell
                          : rng.uniform(-kPi / 2.0, kPi / 2.0);
      switch (doppler_model) {
        case ClutterDopplerModel::kZero:
          p.normalized_doppler = 0.0;
          break;
        case ClutterDopplerModel::kRidge:
          p.normalized_doppler =
              ridge_slope * spatial_frequency(cfg, p.azimuth_rad);
          break;
        case ClutterDopplerModel::kUniform:
          p.normalized_doppler = rng.uniform(-0.5, 0.5);
          break;
      }
    }
    scene.cells.push_back(std::move(patches));
  }
  return scene;
}

/// Inner clutter covariance of one range cell plus its retained rank factors.
struct InnerCCM {
  int cell_index = 0;  // l
  MatC matrix;         // Hermitian PSD, steering_dim x steering_dim
  std::vector<VecC> rank_factors;  // u_{l,r} = sqrt(lambda_r) * v_r
};

/// M_l = sigma_c^2 * sum_k u(f_k, theta_k) u(f_k, theta_k)^H with the patch
/// amplitudes integrated out analytically (knowledge-aided assumption).
inline InnerCCM inner_ccm(const ArrayConfig& cfg, const ClutterScene& scene,
                          int l) {
  const auto& patches = scene.cell(l);
  const int dim = cfg.steering_dim();
  InnerCCM ccm;
  ccm.cell_index = l;
  MatC u_cols(dim, static_cast<Eigen::Index>(patches.size()));
  for (std::size_t k = 0; k < patches.size(); ++k)
    u_cols.col(static_cast<Eigen::Index>(k)) =
        st_steering(cfg, patches[k].normalized_doppler, patches[k].azimuth_rad);
  ccm.matrix = scene.patch_power * (u_cols * u_cols.adjoint());
  // Round off the Hermitian part exactly; the product above is Hermitian up
  // to floating error.
  ccm.matrix = 0.5 * (ccm.matrix + ccm.matrix.adjoint()).eval();
  return ccm;
}

/// Eigendecomposes the inner CCM and keeps factors u_r = sqrt(lambda_r) v_r
/// for eigenvalues lambda_r >= rel_threshold * lambda_max, so that
/// sum_r u_r u_r^H reconstructs the matrix within the truncation tolerance.
inline InnerCCM rank_factorize(InnerCCM ccm, double rel_threshold = 1e-10) {
  const double herm_err =
      (ccm.matrix - ccm.matrix.adjoint()).norm() / std::max(1.0, ccm.matrix.norm());
  require(herm_err <= 1e-10, "rank_factorize: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatC> es(ccm.matrix);
  require(es.info() == Eigen::Success, "rank_factorize: eigensolver failed");
  const VecR evals = es.eigenvalues();
  const double lambda_max = evals.maxCoeff();
  ccm.rank_factors.clear();
  if (lambda_max <= 0.0) return ccm;  // zero matrix: no factors
  for (Eigen::Index i = evals.size() - 1; i >= 0; --i) {
    if (evals(i) >= rel_threshold * lambda_max && evals(i) > 0.0)
      ccm.rank_factors.push_back(std::sqrt(evals(i)) * es.eigenvectors().col(i));
  }
  return ccm;
}

/// Assembles the operator set for a scene: A_0 from the target steering and
/// one clutter operator per retained rank factor of each cell.
inline OperatorSet build_operator_set(const ArrayConfig& cfg,
                                      const TargetModel& target,
                                      const ClutterScene& scene,
                                      double noise_power,
                                      double rank_rel_threshold = 1e-10) {
  OperatorSet ops;
  ops.a0 = build_target_operator(
      cfg, st_steering(cfg, target.normalized_doppler, target.azimuth_rad));
  ops.noise_power = noise_power;
  for (int l = -scene.half_width_cells; l <= scene.half_width_cells; ++l) {
    const InnerCCM ccm = rank_factorize(inner_ccm(cfg, scene, l),
                                        rank_rel_threshold);
    for (const VecC& u : ccm.rank_factors)
      ops.clutter_factors.push_back(build_clutter_operator(cfg, l, u));
  }
  return ops;
}

/// Clutter covariance matrix at waveform x: R_c = sum (A_{l,r} x)(A_{l,r} x)^H.
inline MatC full_ccm(const OperatorSet& ops, const VecC& x) {
  if (ops.clutter_factors.empty())
    return MatC::Zero(ops.filter_dim(), ops.filter_dim());
  const MatC c = ops.clutter_columns(x);
  MatC r = c * c.adjoint();
  return 0.5 * (r + r.adjoint()).eval();
}

// --- scene serialization ---

inline nlohmann::json scene_to_json(const ClutterScene& scene) {
  nlohmann::json j;
  j["schema"] = "stapslp-scene-v1";
  j["half_width_cells"] = scene.half_width_cells;
  j["patches_per_cell"] = scene.patches_per_cell;
  j["patch_power"] = scene.patch_power;
  j["rng_seed"] = scene.rng_seed;
  j["doppler_model"] = scene.doppler_model == ClutterDopplerModel::kZero
                           ? "zero"
                           : (scene.doppler_model == ClutterDopplerModel::kRidge
                                  ? "ridge"
                                  : "uniform");
  j["azimuth_mode"] =
      scene.azimuth_mode == ClutterAzimuthMode::kGrid ? "grid" : "random";
  j["ridge_slope"] = scene.ridge_slope;
  nlohmann::json cells = nlohmann::json::array();
  for (int l = -scene.half_width_cells; l <= scene.half_width_cells; ++l) {
    nlohmann::json cell;
    cell["l"] = l;
    nlohmann::json patches = nlohmann::json::array();
    for (const auto& p : scene.cell(l))
      patches.push_back({{"azimuth_rad", p.azimuth_rad},
                         {"normalized_doppler", p.normalized_doppler}});
    cell["patches"] = patches;
    cells.push_back(cell);
  }
  j["cells"] = cells;
  return j;
}

}  // namespace stapslp
