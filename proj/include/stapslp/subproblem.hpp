// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stapslp/common.hpp"
#include "stapslp/qcqp.hpp"

namespace stapslp {

/// The x-update subproblem of the design loop:
///
///   minimize   x^H D x - Re{b^H x} + (rho/2) ||x - v||^2
///   subject to Re{h_i^H x} >= gamma_i           (halfspaces)
///              |x_j| <= disk_radius             (optional, all coordinates)
///              ||x|| <= ball_radius             (optional)
///              |x_j - similarity_center_j| <= similarity_radius  (optional)
///              c_i^H x = rhs_i                  (optional equalities)
///
/// Strongly convex whenever rho > 0.
struct ConvexSubproblem {
  MatC quad;        // D, Hermitian PSD
  VecC linear;      // b
  double prox_weight = 1.0;  // rho
  VecC prox_center;          // v
  std::vector<std::pair<VecC, double>> halfspaces;  // (h_i, gamma_i)
  std::optional<double> disk_radius;
  std::optional<double> ball_radius;
  std::optional<std::pair<VecC, double>> similarity;  // (center, xi)
  std::vector<std::pair<VecC, cxd>> equalities;

  int dim() const { return static_cast<int>(prox_center.size()); }

  double objective(const VecC& x) const {
    const double quad_term = (x.adjoint() * (quad * x)).real()(0);
    const double lin_term = (linear.adjoint() * x).real()(0);
    return quad_term - lin_term +
           0.5 * prox_weight * (x - prox_center).squaredNorm();
  }

  RealQcqp to_real() const {
    const int n = dim();
    RealQcqp p;
    p.h = 2.0 * embed_hermitian(quad);
    p.h.diagonal().array() += prox_weight;
    p.c = -(embed_complex(linear) + prox_weight * embed_complex(prox_center));
    for (const auto& [h, gamma] : halfspaces)
      p.lin.push_back({embed_complex(h), gamma});
    if (disk_radius) {
      for (int j = 0; j < n; ++j) {
        QuadConstraint qc;
        qc.sq_idx = {2 * j, 2 * j + 1};
        qc.s = (*disk_radius) * (*disk_radius);
        p.quad.push_back(std::move(qc));
      }
    }
    if (ball_radius) {
      QuadConstraint qc;
      qc.sq_idx.resize(2 * n);
      for (int j = 0; j < 2 * n; ++j) qc.sq_idx[static_cast<std::size_t>(j)] = j;
      qc.s = (*ball_radius) * (*ball_radius);
      p.quad.push_back(std::move(qc));
    }
    if (similarity) {
      const VecC& c0 = similarity->first;
      const double xi = similarity->second;
      for (int j = 0; j < n; ++j) {
        QuadConstraint qc;
        qc.sq_idx = {2 * j, 2 * j + 1};
        qc.lin = {{2 * j, -2.0 * c0(j).real()}, {2 * j + 1, -2.0 * c0(j).imag()}};
        qc.s = xi * xi - std::norm(c0(j));
        p.quad.push_back(std::move(qc));
      }
    }
    if (!equalities.empty()) {
      p.eq_e = MatR(2 * equalities.size(), 2 * n);
      p.eq_d = VecR(2 * equalities.size());
      for (std::size_t i = 0; i < equalities.size(); ++i) {
        const auto& [row, rhs] = equalities[i];
        p.eq_e.row(2 * static_cast<Eigen::Index>(i)) = embed_complex(row);
        p.eq_e.row(2 * static_cast<Eigen::Index>(i) + 1) =
            embed_complex(VecC(kJ * row));
        p.eq_d(2 * static_cast<Eigen::Index>(i)) = rhs.real();
        p.eq_d(2 * static_cast<Eigen::Index>(i) + 1) = rhs.imag();
      }
    }
    return p;
  }
};

struct SolveReport {
  VecC solution;
  double primal_infeasibility = 0.0;
  double objective_value = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::kMaxIter;
  // Duals in constraint order: halfspaces, then disks, ball, similarity.
  VecR halfspace_duals;
  VecR quad_duals;
  VecR eq_duals;
};

/// Solves the subproblem. Deterministic given inputs and warm start; two
/// solves from different warm starts agree to solver precision because the
/// objective is strongly convex and the result is active-set polished.
inline SolveReport solve(const ConvexSubproblem& prob, const IpmOptions& opt,
                         const std::optional<VecC>& warm_start = std::nullopt,
                         const std::optional<VecC>& interior_anchor =
                             std::nullopt) {
  require(prob.prox_weight > 0.0, "solve: prox weight must be positive");
  const RealQcqp p = prob.to_real();
  std::optional<VecR> warm, anchor;
  if (warm_start) warm = embed_complex(*warm_start);
  if (interior_anchor) anchor = embed_complex(*interior_anchor);
  const RealSolveReport r = solve_real_qcqp(p, opt, warm, anchor);

  SolveReport rep;
  rep.solution = unembed_complex(r.z);
  rep.primal_infeasibility = r.primal_infeasibility;
  rep.objective_value = prob.objective(rep.solution);
  rep.iterations = r.newton_iterations;
  rep.status = r.status;
  rep.halfspace_duals = r.lin_duals;
  rep.quad_duals = r.quad_duals;
  rep.eq_duals = r.eq_duals;
  return rep;
}

/// Stationarity plus complementary-slackness residual at (x, duals).
/// Duals must be nonnegative and ordered as in SolveReport.
inline double kkt_residual(const ConvexSubproblem& prob, const VecC& x,
                           const SolveReport& duals) {
  const RealQcqp p = prob.to_real();
  const VecR z = embed_complex(x);
  VecR r_stat = p.h * z + p.c;
  for (std::size_t i = 0; i < p.lin.size(); ++i)
    r_stat.noalias() -= duals.halfspace_duals(static_cast<Eigen::Index>(i)) *
                        p.lin[i].a;
  for (std::size_t k = 0; k < p.quad.size(); ++k)
    r_stat.noalias() +=
        duals.quad_duals(static_cast<Eigen::Index>(k)) * p.quad_grad(k, z);
  if (p.eq_e.rows() > 0 && duals.eq_duals.size() == p.eq_e.rows())
    r_stat.noalias() += p.eq_e.transpose() * duals.eq_duals;

  double comp = 0.0;
  for (std::size_t i = 0; i < p.lin.size(); ++i)
    comp += std::abs(duals.halfspace_duals(static_cast<Eigen::Index>(i)) *
                     p.lin_slack(i, z));
  for (std::size_t k = 0; k < p.quad.size(); ++k)
    comp += std::abs(duals.quad_duals(static_cast<Eigen::Index>(k)) *
                     p.quad_slack(k, z));
  return r_stat.norm() + comp;
}

// --- offline dump format for oracle comparison ---

inline nlohmann::json subproblem_to_json(const ConvexSubproblem& prob) {
  nlohmann::json j;
  j["schema"] = "stapslp-subproblem-v1";
  auto vec_to_json = [](const VecC& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
      a.push_back({v(i).real(), v(i).imag()});
    return a;
  };
  nlohmann::json d = nlohmann::json::array();
  for (Eigen::Index i = 0; i < prob.quad.rows(); ++i)
    d.push_back(vec_to_json(prob.quad.row(i).transpose()));
  j["quad"] = d;
  j["linear"] = vec_to_json(prob.linear);
  j["prox_weight"] = prob.prox_weight;
  j["prox_center"] = vec_to_json(prob.prox_center);
  nlohmann::json hs = nlohmann::json::array();
  for (const auto& [h, gamma] : prob.halfspaces)
    hs.push_back({{"row", vec_to_json(h)}, {"threshold", gamma}});
  j["halfspaces"] = hs;
  if (prob.disk_radius) j["disk_radius"] = *prob.disk_radius;
  if (prob.ball_radius) j["ball_radius"] = *prob.ball_radius;
  if (prob.similarity) {
    j["similarity"] = {{"center", vec_to_json(prob.similarity->first)},
                       {"radius", prob.similarity->second}};
  }
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& [row, rhs] : prob.equalities)
    eqs.push_back({{"row", vec_to_json(row)}, {"rhs", {rhs.real(), rhs.imag()}}});
  j["equalities"] = eqs;
  return j;
}

}  // namespace stapslp
