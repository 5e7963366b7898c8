// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "stapslp/comm.hpp"
#include "stapslp/common.hpp"
#include "stapslp/operators.hpp"
#include "stapslp/radar_metrics.hpp"
#include "stapslp/subproblem.hpp"
#include "stapslp/surrogate.hpp"

namespace stapslp {

enum class VariantKind { kCM, kPAPR, kCMS };

/// Waveform constraint family. CM fixes every entry's modulus to
/// sqrt(P/(M N n_tx)); PAPR bounds entries by sqrt((1+eps) P / (M N n_tx))
/// with total power P; CMS is CM plus per-entry similarity disks of radius xi
/// around a constant-modulus reference.
struct ConstraintVariant {
  VariantKind kind = VariantKind::kCM;
  double total_power = 1.0;  // P
  double papr_eps = 0.0;     // epsilon >= 0 (PAPR)
  double similarity_xi = 0.0;  // xi >= 0 (CMS, absolute units)
  VecC reference;              // CMS reference x0

  double entry_radius(int n) const { return std::sqrt(total_power / n); }

  static ConstraintVariant cm(double p) {
    ConstraintVariant v;
    v.kind = VariantKind::kCM;
    v.total_power = p;
    return v;
  }
  static ConstraintVariant papr(double p, double eps) {
    ConstraintVariant v;
    v.kind = VariantKind::kPAPR;
    v.total_power = p;
    v.papr_eps = eps;
    return v;
  }
  static ConstraintVariant cms(double p, double xi, VecC ref) {
    ConstraintVariant v;
    v.kind = VariantKind::kCMS;
    v.total_power = p;
    v.similarity_xi = xi;
    v.reference = std::move(ref);
    return v;
  }

  void validate(int n) const {
    require(total_power > 0.0, "ConstraintVariant: total power must be > 0");
    if (kind == VariantKind::kPAPR)
      require(papr_eps >= 0.0, "ConstraintVariant: papr_eps must be >= 0");
    if (kind == VariantKind::kCMS) {
      require(similarity_xi >= 0.0,
              "ConstraintVariant: similarity_xi must be >= 0");
      require(reference.size() == n,
              "ConstraintVariant: reference length mismatch");
      const double r = entry_radius(n);
      for (Eigen::Index j = 0; j < reference.size(); ++j)
        require(std::abs(std::abs(reference(j)) - r) <= 1e-9 * r,
                "ConstraintVariant: CMS reference must be constant-modulus");
    }
  }
};

struct SolverConfig {
  double rho = 1.0;              // neADMM penalty
  double mm_tol = 1e-3;          // relative SINR increase threshold
  int mm_max_iter = 100;
  double admm_primal_tol = 1e-4;
  double admm_dual_tol = 1e-4;
  int admm_max_iter = 300;
  IpmOptions inner;              // x-update solver tolerances
  std::uint64_t seed = 0;

  void validate() const {
    require(rho > 0.0 && mm_tol > 0.0 && admm_primal_tol > 0.0 &&
                admm_dual_tol > 0.0,
            "SolverConfig: tolerances must be positive");
    require(mm_max_iter >= 1 && admm_max_iter >= 1,
            "SolverConfig: iteration limits must be >= 1");
  }
};

// --- closed-form neADMM block updates ---

/// Elementwise y-update for the constant-modulus split: phase follows a,
/// amplitude 0.5(|a_i| + b_i) clamped at zero (the unconstrained closed form
/// can be negative, which is not a valid modulus).
inline VecC y_update_cm(const VecC& a, const VecR& b) {
  require(a.size() == b.size(), "y_update_cm: dimension mismatch");
  VecC y(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double amp = std::max(0.0, 0.5 * (std::abs(a(i)) + b(i)));
    const cxd phase =
        (a(i) == cxd(0.0, 0.0)) ? cxd(1.0, 0.0) : a(i) / std::abs(a(i));
    y(i) = amp * phase;
  }
  return y;
}

/// Radial projection of x + lambda/rho onto the total-power sphere.
inline VecC y_update_papr(const VecC& x, const VecC& lambda, double rho,
                          double total_power) {
  VecC v = x + lambda / rho;
  const double n = v.norm();
  if (n == 0.0) {
    // Deterministic tie-break: all mass on the first coordinate.
    VecC y = VecC::Zero(x.size());
    y(0) = std::sqrt(total_power);
    return y;
  }
  return std::sqrt(total_power) * v / n;
}

/// lambda += rho (x - y); mu += rho (|y| - radius). mu stays real and is only
/// used by the elementwise-modulus variants.
inline std::pair<VecC, VecR> dual_update(const VecC& lambda, const VecR& mu,
                                         double rho, const VecC& x,
                                         const VecC& y, double radius) {
  require(lambda.size() == x.size() && x.size() == y.size() &&
              mu.size() == y.size(),
          "dual_update: dimension mismatch");
  VecC lam = lambda + rho * (x - y);
  VecR mu_new = mu + rho * (y.cwiseAbs() - VecR::Constant(y.size(), radius));
  return {std::move(lam), std::move(mu_new)};
}

// --- initialization ---

/// Max-min margin initialization: maximize t subject to Re{h_i^H x} >= t over
/// the variant's convex power structure (entry disks, plus the power ball for
/// PAPR), via the epigraph form. Returns the maximin point.
inline VecC initialize_waveform(const std::vector<VecC>& rows,
                                const ConstraintVariant& variant, int n,
                                const IpmOptions& opt = IpmOptions{}) {
  require(!rows.empty(), "initialize_waveform: needs at least one row");
  const double r = variant.entry_radius(n);
  const double disk_r =
      (variant.kind == VariantKind::kPAPR) ? r * std::sqrt(1.0 + variant.papr_eps)
                                           : r;
  RealQcqp p;
  const int d = 2 * n + 1;  // x embedding plus the epigraph variable t
  p.h = MatR::Zero(d, d);
  p.h(d - 1, d - 1) = 1e-9;  // numerical regularization only
  p.c = VecR::Zero(d);
  p.c(d - 1) = -1.0;  // maximize t
  for (const VecC& row : rows) {
    require(row.size() == n, "initialize_waveform: row length mismatch");
    LinConstraint lc;
    lc.a = VecR::Zero(d);
    lc.a.head(2 * n) = embed_complex(row);
    lc.a(d - 1) = -1.0;
    lc.b = 0.0;
    p.lin.push_back(std::move(lc));
  }
  for (int j = 0; j < n; ++j) {
    QuadConstraint qc;
    qc.sq_idx = {2 * j, 2 * j + 1};
    qc.s = disk_r * disk_r;
    p.quad.push_back(std::move(qc));
  }
  if (variant.kind == VariantKind::kPAPR) {
    QuadConstraint qc;
    qc.sq_idx.resize(2 * n);
    for (int j = 0; j < 2 * n; ++j) qc.sq_idx[static_cast<std::size_t>(j)] = j;
    qc.s = variant.total_power;
    p.quad.push_back(std::move(qc));
  }

  // x = 0, t = -1 is strictly feasible for every instance of this problem.
  VecR z0 = VecR::Zero(d);
  z0(d - 1) = -1.0;
  RealSolveReport rep = solve_from_interior(p, z0, opt);
  if (opt.polish) polish_active_set(p, rep);
  return unembed_complex(VecR(rep.z.head(2 * n)));
}

// --- the design loop ---

enum class CommMode { kCI, kZF, kNone };

/// One fully specified design task.
struct DesignProblem {
  const OperatorSet* ops = nullptr;
  double target_power = 1.0;  // sigma_0^2
  ConstraintVariant variant;
  CommMode comm_mode = CommMode::kNone;
  CIConstraintSet ci;        // enforced when comm_mode == kCI
  ZFConstraintSet zf;        // enforced when comm_mode == kZF
  CIConstraintSet audit_ci;  // margin audit rows (may duplicate ci)
  std::optional<VecC> initial;  // overrides the built-in initialization
};

namespace detail {

/// Constraint skeleton of the x-update; the quadratic data changes per
/// iteration, the sets never do.
inline ConvexSubproblem make_skeleton(const DesignProblem& prob, int n) {
  ConvexSubproblem sub;
  sub.quad = MatC::Zero(n, n);
  sub.linear = VecC::Zero(n);
  sub.prox_center = VecC::Zero(n);
  sub.prox_weight = 1.0;
  const double r = prob.variant.entry_radius(n);
  switch (prob.variant.kind) {
    case VariantKind::kCM:
      sub.disk_radius = r;
      break;
    case VariantKind::kPAPR:
      sub.disk_radius = r * std::sqrt(1.0 + prob.variant.papr_eps);
      sub.ball_radius = std::sqrt(prob.variant.total_power);
      break;
    case VariantKind::kCMS:
      sub.disk_radius = r;
      sub.similarity =
          std::make_pair(prob.variant.reference, prob.variant.similarity_xi);
      break;
  }
  if (prob.comm_mode == CommMode::kCI) {
    for (int i = 0; i < prob.ci.size(); ++i)
      sub.halfspaces.push_back({prob.ci.rows[static_cast<std::size_t>(i)],
                                prob.ci.thresholds[static_cast<std::size_t>(i)]});
  } else if (prob.comm_mode == CommMode::kZF) {
    for (int i = 0; i < prob.zf.size(); ++i)
      sub.equalities.push_back({prob.zf.rows[static_cast<std::size_t>(i)],
                                prob.zf.rhs[static_cast<std::size_t>(i)]});
  }
  return sub;
}

/// Nearest point of the skeleton's convex set to x0 (phase-I backed).
inline VecC project_to_convex_set(const ConvexSubproblem& skeleton,
                                  const VecC& x0, const IpmOptions& opt) {
  ConvexSubproblem sub = skeleton;
  sub.prox_center = x0;
  sub.prox_weight = 1.0;
  const SolveReport rep = solve(sub, opt, x0);
  if (rep.status == SolveStatus::kInfeasible)
    throw infeasible_scenario_error(
        "design: the convex constraint set is empty");
  return rep.solution;
}

/// A strictly interior point of the constraint set, used to blend boundary
/// warm starts back inside. Found by one loose barrier pass with the prox
/// objective and polishing disabled.
inline VecC make_interior_anchor(const ConvexSubproblem& skeleton,
                                 const VecC& hint, const IpmOptions& opt) {
  ConvexSubproblem sub = skeleton;
  sub.prox_center = hint;
  IpmOptions loose = opt;
  loose.polish = false;
  loose.gap_tol = 1e-2;  // stay well inside the barrier's central path
  const RealQcqp p = sub.to_real();
  std::optional<VecR> start;
  if (strictly_feasible(p, embed_complex(hint), 1e-10))
    start = embed_complex(hint);
  else {
    start = phase_one(p, loose);
    if (!start)
      throw infeasible_scenario_error(
          "design: the convex constraint set is empty");
  }
  const RealSolveReport rep = solve_from_interior(p, *start, loose);
  return unembed_complex(rep.z);
}

inline double papr_of(const VecC& x) {
  const double avg = x.squaredNorm() / static_cast<double>(x.size());
  double peak = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j)
    peak = std::max(peak, std::norm(x(j)));
  return peak / avg;
}

/// Projects x onto the affine set of ZF equalities (no-op when empty).
inline VecC project_equalities(const ConvexSubproblem& skeleton, const VecC& x) {
  if (skeleton.equalities.empty()) return x;
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(skeleton.equalities.size());
  MatC e(m, n);
  VecC d(m);
  for (int i = 0; i < m; ++i) {
    e.row(i) = skeleton.equalities[static_cast<std::size_t>(i)].first.adjoint();
    d(i) = skeleton.equalities[static_cast<std::size_t>(i)].second;
  }
  // x + E^H (E E^H)^{-1} (d - E x)
  const MatC gram = e * e.adjoint();
  return x + e.adjoint() * gram.ldlt().solve(VecC(d - e * x));
}

/// Exact projection onto the variant's nonconvex set (with the run's
/// equalities honored by alternating projections when present).
inline VecC snap_to_variant(const ConvexSubproblem& skeleton,
                            const ConstraintVariant& variant, VecC x) {
  const int n = static_cast<int>(x.size());
  const double r = variant.entry_radius(n);
  auto modulus_snap = [&](VecC v) {
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      const double a = std::abs(v(j));
      v(j) = (a == 0.0) ? cxd(r, 0.0) : v(j) * (r / a);
    }
    return v;
  };
  auto papr_snap = [&](VecC v) {
    const double box = r * std::sqrt(1.0 + variant.papr_eps);
    for (int it = 0; it < 100; ++it) {
      for (Eigen::Index j = 0; j < v.size(); ++j) {
        const double a = std::abs(v(j));
        if (a > box) v(j) *= box / a;
      }
      const double nrm = v.norm();
      if (nrm == 0.0) break;
      v *= std::sqrt(variant.total_power) / nrm;
      double worst = 0.0;
      for (Eigen::Index j = 0; j < v.size(); ++j)
        worst = std::max(worst, std::abs(v(j)) - box);
      if (worst <= 1e-15 * box) break;
    }
    return v;
  };

  if (skeleton.equalities.empty()) {
    return (variant.kind == VariantKind::kPAPR) ? papr_snap(std::move(x))
                                                : modulus_snap(std::move(x));
  }
  // Alternate between the equality affine set and the variant set; finish on
  // the variant side so the power structure is exact.
  for (int it = 0; it < 300; ++it) {
    x = project_equalities(skeleton, x);
    const VecC snapped = (variant.kind == VariantKind::kPAPR)
                             ? papr_snap(x)
                             : modulus_snap(x);
    const double move = (snapped - x).norm();
    x = snapped;
    if (move <= 1e-13 * (1.0 + x.norm())) break;
  }
  return x;
}

}  // namespace detail

/// Joint waveform/filter design: outer MM majorization of the concentrated
/// SINR objective, inner neADMM splitting between the convex x-update and the
/// closed-form nonconvex y-update, duals reset at each outer iteration and y
/// warm-started from the previous iterate. The SINR trace is monotone by
/// construction: a candidate outer iterate that fails to improve the
/// concentrated objective is rejected and the loop stops.
inline DesignResult design(const DesignProblem& prob, const SolverConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  cfg.validate();
  require(prob.ops != nullptr, "design: operator set required");
  const int n = prob.ops->waveform_dim();
  prob.variant.validate(n);
  const double r = prob.variant.entry_radius(n);
  const double sqrt_p = std::sqrt(prob.variant.total_power);

  const ConvexSubproblem skeleton = detail::make_skeleton(prob, n);

  // --- initialization ---
  VecC x;
  if (prob.initial) {
    x = detail::project_to_convex_set(skeleton, *prob.initial, cfg.inner);
  } else if (prob.comm_mode == CommMode::kCI) {
    x = initialize_waveform(prob.ci.rows, prob.variant, n, cfg.inner);
    double maximin = std::numeric_limits<double>::infinity();
    double max_gamma = 0.0;
    for (int i = 0; i < prob.ci.size(); ++i) {
      maximin = std::min(
          maximin,
          (prob.ci.rows[static_cast<std::size_t>(i)].adjoint() * x).real()(0));
      max_gamma =
          std::max(max_gamma, prob.ci.thresholds[static_cast<std::size_t>(i)]);
    }
    if (maximin < max_gamma - 1e-9)
      throw infeasible_scenario_error(
          "design: maximin communication margin " + std::to_string(maximin) +
          " is below the largest QoS threshold " + std::to_string(max_gamma));
    // The maximin point may sit outside the CMS similarity disks; pull it
    // into the full convex set before starting.
    if (prob.variant.kind == VariantKind::kCMS)
      x = detail::project_to_convex_set(skeleton, x, cfg.inner);
  } else if (prob.comm_mode == CommMode::kZF) {
    // Per-slot minimum-norm solution of the equality system, then repaired
    // into the variant's convex structure if needed.
    x = detail::project_equalities(skeleton, VecC::Zero(n));
    x = detail::project_to_convex_set(skeleton, x, cfg.inner);
  } else {
    throw invalid_argument_error(
        "design: radar-only runs must provide an initial waveform");
  }

  const VecC anchor = detail::make_interior_anchor(skeleton, x, cfg.inner);

  // --- outer MM loop ---
  double sinr_prev = prob.target_power * concentrated_objective(*prob.ops, x);
  DesignResult result;
  result.sinr_trace.push_back({0, linear_to_db(sinr_prev)});
  result.converged = false;
  int total_inner = 0;

  for (int outer = 1; outer <= cfg.mm_max_iter; ++outer) {
    const SurrogateCoeffs coeffs = build_surrogate(*prob.ops, x);

    VecC x_k = x;
    VecC y = x;  // warm start from the previous outer iterate
    VecC lambda = VecC::Zero(n);
    VecR mu = VecR::Zero(n);

    for (int k = 0; k < cfg.admm_max_iter; ++k) {
      ConvexSubproblem sub = skeleton;
      sub.quad = coeffs.d_matrix;
      sub.linear = coeffs.b_vector;
      sub.prox_weight = cfg.rho;
      sub.prox_center = y - lambda / cfg.rho;
      const SolveReport rep = solve(sub, cfg.inner, x_k, anchor);
      if (rep.status == SolveStatus::kInfeasible)
        throw solver_failure_error("design: x-update solver reported an "
                                   "infeasible subproblem");
      x_k = rep.solution;
      ++total_inner;

      VecC y_new;
      if (prob.variant.kind == VariantKind::kPAPR) {
        y_new = y_update_papr(x_k, lambda, cfg.rho, prob.variant.total_power);
      } else {
        const VecC a = x_k + lambda / cfg.rho;
        const VecR b = VecR::Constant(n, r) - mu / cfg.rho;
        y_new = y_update_cm(a, b);
      }
      const double dual_step = cfg.rho * (y_new - y).cwiseAbs().maxCoeff();
      y = y_new;
      lambda += cfg.rho * (x_k - y);
      if (prob.variant.kind != VariantKind::kPAPR)
        mu += cfg.rho * (y.cwiseAbs() - VecR::Constant(n, r));

      const double r_split = (x_k - y).cwiseAbs().maxCoeff();
      const double r_struct =
          (prob.variant.kind == VariantKind::kPAPR)
              ? std::abs(x_k.norm() - sqrt_p)
              : (x_k.cwiseAbs() - VecR::Constant(n, r)).cwiseAbs().maxCoeff();
      if (r_split <= cfg.admm_primal_tol && r_struct <= cfg.admm_primal_tol &&
          dual_step <= cfg.admm_dual_tol)
        break;
    }

    const double sinr_cand =
        prob.target_power * concentrated_objective(*prob.ops, x_k);
    if (sinr_cand < sinr_prev * (1.0 - 1e-12)) {
      // Inexact inner solve failed to improve the objective; keep the last
      // iterate so the trace stays monotone.
      result.converged = true;
      break;
    }
    x = x_k;
    result.sinr_trace.push_back({outer, linear_to_db(sinr_cand)});
    result.outer_iterations = outer;
    const double rel = (sinr_cand - sinr_prev) / std::max(sinr_prev, 1e-300);
    sinr_prev = sinr_cand;
    if (rel < cfg.mm_tol) {
      result.converged = true;
      break;
    }
  }
  result.total_inner_iterations = total_inner;

  // --- exact snap, margin audit, final filter ---
  const VecC x_snapped = detail::snap_to_variant(skeleton, prob.variant, x);
  bool accept_snap = true;
  if (prob.audit_ci.size() > 0) {
    const VecR pre = ci_margins(prob.audit_ci, x);
    const VecR post = ci_margins(prob.audit_ci, x_snapped);
    // Reject the snap only if it pushes a margin below the tolerance.
    if (post.minCoeff() < -1e-6 && post.minCoeff() < pre.minCoeff() - 1e-12)
      accept_snap = false;
  }
  const VecC x_final = accept_snap ? x_snapped : x;

  result.waveform = x_final;
  result.filter = mvdr_filter(*prob.ops, x_final);
  result.sinr_db = linear_to_db(
      output_sinr(*prob.ops, prob.target_power, x_final, result.filter));

  FeasibilityReport& feas = result.feasibility;
  feas.snap_applied = accept_snap;
  if (prob.audit_ci.size() > 0) {
    feas.has_ci_margin = true;
    feas.min_ci_margin = ci_margins(prob.audit_ci, x_final).minCoeff();
  }
  feas.papr = detail::papr_of(x_final);
  if (prob.variant.kind == VariantKind::kPAPR) {
    const double box = r * std::sqrt(1.0 + prob.variant.papr_eps);
    double over = 0.0;
    for (Eigen::Index j = 0; j < x_final.size(); ++j)
      over = std::max(over, std::abs(x_final(j)) - box);
    feas.max_modulus_deviation = std::max(0.0, over);
  } else {
    feas.max_modulus_deviation =
        (x_final.cwiseAbs() - VecR::Constant(n, r)).cwiseAbs().maxCoeff();
  }
  if (prob.variant.kind == VariantKind::kCMS)
    feas.max_similarity_deviation =
        (x_final - prob.variant.reference).cwiseAbs().maxCoeff();

  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

/// Non-CI zero-forcing baseline: identical pipeline with the CI halfspaces
/// replaced by exact symbol-reproduction equalities.
inline DesignResult design_zf_baseline(const OperatorSet& ops,
                                       double target_power,
                                       const ConstraintVariant& variant,
                                       const CommSetup& comm,
                                       const ArrayConfig& cfg,
                                       const SolverConfig& solver) {
  DesignProblem prob;
  prob.ops = &ops;
  prob.target_power = target_power;
  prob.variant = variant;
  prob.comm_mode = CommMode::kZF;
  prob.zf = build_zf_constraints(comm, cfg);
  prob.audit_ci = build_ci_constraints(comm, cfg);
  return design(prob, solver);
}

/// STAP-only upper-bound baseline: no communication constraints at all.
/// Initialized from the given reference waveform (typically the LFM set).
inline DesignResult design_radar_only(const OperatorSet& ops,
                                      double target_power,
                                      const ConstraintVariant& variant,
                                      const VecC& initial,
                                      const SolverConfig& solver) {
  DesignProblem prob;
  prob.ops = &ops;
  prob.target_power = target_power;
  prob.variant = variant;
  prob.comm_mode = CommMode::kNone;
  prob.initial = initial;
  return design(prob, solver);
}

/// CI-constrained design (the main scheme).
inline DesignResult design_ci(const OperatorSet& ops, double target_power,
                              const ConstraintVariant& variant,
                              const CommSetup& comm, const ArrayConfig& cfg,
                              const SolverConfig& solver) {
  DesignProblem prob;
  prob.ops = &ops;
  prob.target_power = target_power;
  prob.variant = variant;
  prob.comm_mode = CommMode::kCI;
  prob.ci = build_ci_constraints(comm, cfg);
  prob.audit_ci = prob.ci;
  return design(prob, solver);
}

}  // namespace stapslp
