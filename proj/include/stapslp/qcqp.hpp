// SPDX-License-Identifier: Apache-2.0
//
// stapslp: joint space-time waveform and receive-filter design for
// dual-function radar-communication systems.
// Copyright (C) 2026 stapslp contributors

#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "stapslp/common.hpp"

namespace stapslp {

// ---------------------------------------------------------------------------
// Real-embedded canonical problem
//
//   minimize   (1/2) z^T H z + c^T z
//   subject to a_i^T z >= b_i                        (linear)
//              sum_{j in S_k} z_j^2 + q_k^T z <= s_k (convex quadratic)
//              E z = d                               (equality)
//
// Complex vectors embed as interleaved (Re x_0, Im x_0, Re x_1, ...), which
// keeps per-coordinate disks on contiguous index pairs.
// ---------------------------------------------------------------------------

inline VecR embed_complex(const VecC& x) {
  VecR z(2 * x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    z(2 * i) = x(i).real();
    z(2 * i + 1) = x(i).imag();
  }
  return z;
}

inline VecC unembed_complex(const VecR& z) {
  VecC x(z.size() / 2);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cxd(z(2 * i), z(2 * i + 1));
  return x;
}

/// Symmetric real form of a Hermitian matrix: x^H D x = z^T D_R z.
inline MatR embed_hermitian(const MatC& d) {
  MatR h(2 * d.rows(), 2 * d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      h(2 * i, 2 * j) = d(i, j).real();
      h(2 * i, 2 * j + 1) = -d(i, j).imag();
      h(2 * i + 1, 2 * j) = d(i, j).imag();
      h(2 * i + 1, 2 * j + 1) = d(i, j).real();
    }
  return h;
}

struct LinConstraint {
  VecR a;
  double b = 0.0;
};

struct QuadConstraint {
  std::vector<int> sq_idx;                  // coordinates entering as z_j^2
  std::vector<std::pair<int, double>> lin;  // sparse q_k
  double s = 0.0;
};

struct RealQcqp {
  MatR h;  // PSD
  VecR c;
  std::vector<LinConstraint> lin;
  std::vector<QuadConstraint> quad;
  MatR eq_e{0, 0};
  VecR eq_d{0};

  int dim() const { return static_cast<int>(c.size()); }
  int n_ineq() const { return static_cast<int>(lin.size() + quad.size()); }

  double objective(const VecR& z) const {
    return 0.5 * z.dot(h * z) + c.dot(z);
  }

  double lin_slack(std::size_t i, const VecR& z) const {
    return lin[i].a.dot(z) - lin[i].b;
  }

  double quad_slack(std::size_t k, const VecR& z) const {
    const auto& qc = quad[k];
    double v = qc.s;
    for (int j : qc.sq_idx) v -= z(j) * z(j);
    for (const auto& [j, w] : qc.lin) v -= w * z(j);
    return v;
  }

  /// Gradient of the quadratic constraint function (the <= side).
  VecR quad_grad(std::size_t k, const VecR& z) const {
    VecR g = VecR::Zero(dim());
    const auto& qc = quad[k];
    for (int j : qc.sq_idx) g(j) += 2.0 * z(j);
    for (const auto& [j, w] : qc.lin) g(j) += w;
    return g;
  }

  /// Largest constraint violation at z (0 when feasible).
  double infeasibility(const VecR& z) const {
    double v = 0.0;
    for (std::size_t i = 0; i < lin.size(); ++i)
      v = std::max(v, -lin_slack(i, z));
    for (std::size_t k = 0; k < quad.size(); ++k)
      v = std::max(v, -quad_slack(k, z));
    if (eq_e.rows() > 0) v = std::max(v, (eq_e * z - eq_d).cwiseAbs().maxCoeff());
    return v;
  }
};

enum class SolveStatus { kOptimal, kMaxIter, kInfeasible };

struct RealSolveReport {
  VecR z;
  SolveStatus status = SolveStatus::kMaxIter;
  double objective = 0.0;
  double primal_infeasibility = 0.0;
  int newton_iterations = 0;
  VecR lin_duals;   // >= 0
  VecR quad_duals;  // >= 0
  VecR eq_duals;
};

struct IpmOptions {
  double feas_tol = 1e-6;
  double kkt_tol = 1e-6;
  int max_newton = 200;
  double barrier_mu = 10.0;  // barrier decrease factor
  double gap_tol = 1e-9;     // duality-gap estimate target, relative
  bool polish = true;
  double phase1_margin = 1e-9;
};

namespace detail {

/// Damped Newton for  min eta * f(z) - sum log(slacks)  s.t. E z = d,
/// starting from a strictly feasible z which stays strictly feasible.
class BarrierNewton {
 public:
  explicit BarrierNewton(const RealQcqp& p) : p_(p) {}

  double barrier_value(const VecR& z, double eta) const {
    double v = eta * p_.objective(z);
    for (std::size_t i = 0; i < p_.lin.size(); ++i) {
      const double s = p_.lin_slack(i, z);
      if (s <= 0.0) return std::numeric_limits<double>::infinity();
      v -= std::log(s);
    }
    for (std::size_t k = 0; k < p_.quad.size(); ++k) {
      const double s = p_.quad_slack(k, z);
      if (s <= 0.0) return std::numeric_limits<double>::infinity();
      v -= std::log(s);
    }
    return v;
  }

  /// Returns Newton steps taken, or -1 if max_steps was exhausted.
  int center(VecR& z, double eta, int max_steps) {
    const int n = p_.dim();
    const int ne = static_cast<int>(p_.eq_e.rows());
    for (int it = 0; it < max_steps; ++it) {
      VecR grad = eta * (p_.h * z + p_.c);
      MatR hess = eta * p_.h;
      for (std::size_t i = 0; i < p_.lin.size(); ++i) {
        const double s = p_.lin_slack(i, z);
        grad.noalias() -= p_.lin[i].a / s;
        hess.noalias() += (p_.lin[i].a * p_.lin[i].a.transpose()) / (s * s);
      }
      for (std::size_t k = 0; k < p_.quad.size(); ++k) {
        const double s = p_.quad_slack(k, z);
        const VecR w = p_.quad_grad(k, z);
        grad.noalias() += w / s;
        hess.noalias() += (w * w.transpose()) / (s * s);
        for (int j : p_.quad[k].sq_idx) hess(j, j) += 2.0 / s;
      }

      VecR dz(n);
      if (ne == 0) {
        Eigen::LDLT<MatR> ldlt(hess);
        dz = -ldlt.solve(grad);
        if (ldlt.info() != Eigen::Success || !dz.allFinite()) {
          hess.diagonal().array() +=
              1e-10 * (1.0 + hess.diagonal().maxCoeff());
          dz = -hess.ldlt().solve(grad);
        }
      } else {
        MatR kkt = MatR::Zero(n + ne, n + ne);
        kkt.topLeftCorner(n, n) = hess;
        kkt.topRightCorner(n, ne) = p_.eq_e.transpose();
        kkt.bottomLeftCorner(ne, n) = p_.eq_e;
        VecR rhs(n + ne);
        rhs.head(n) = -grad;
        rhs.tail(ne) = p_.eq_d - p_.eq_e * z;
        const VecR sol = kkt.partialPivLu().solve(rhs);
        dz = sol.head(n);
      }
      if (!dz.allFinite()) return it;

      const double decrement2 = -grad.dot(dz);
      if (decrement2 <= 2e-12) return it;

      // Fraction to boundary, then Armijo backtracking.
      double alpha = std::min(1.0, 0.99 * max_step_to_boundary(z, dz));
      const double f0 = barrier_value(z, eta);
      bool stepped = false;
      for (int bt = 0; bt < 60; ++bt) {
        const VecR zn = z + alpha * dz;
        const double fn = barrier_value(zn, eta);
        if (fn <= f0 - 0.25 * alpha * decrement2) {
          z = zn;
          stepped = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!stepped) return it;  // line search stalled at this centering
    }
    return -1;
  }

 private:
  double max_step_to_boundary(const VecR& z, const VecR& dz) const {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p_.lin.size(); ++i) {
      const double dirn = p_.lin[i].a.dot(dz);
      if (dirn < 0.0) alpha = std::min(alpha, -p_.lin_slack(i, z) / dirn);
    }
    for (std::size_t k = 0; k < p_.quad.size(); ++k) {
      // slack(z + t dz) = slack0 - t w^T dz - t^2 sum_sq dz_j^2
      double a2 = 0.0;
      for (int j : p_.quad[k].sq_idx) a2 += dz(j) * dz(j);
      const double a1 = p_.quad_grad(k, z).dot(dz);
      const double s0 = p_.quad_slack(k, z);
      if (a2 <= 0.0) {
        if (a1 > 0.0) alpha = std::min(alpha, s0 / a1);
        continue;
      }
      const double disc = a1 * a1 + 4.0 * a2 * s0;
      const double root = (-a1 + std::sqrt(std::max(disc, 0.0))) / (2.0 * a2);
      if (root > 0.0) alpha = std::min(alpha, root);
    }
    return alpha;
  }

  const RealQcqp& p_;
};

}  // namespace detail

/// Barrier path-following from a strictly feasible start. eta is raised until
/// the duality-gap estimate n_ineq/eta is below gap_tol * (1 + |objective|);
/// the barrier multipliers become the returned duals.
inline RealSolveReport solve_from_interior(const RealQcqp& p, VecR z,
                                           const IpmOptions& opt) {
  RealSolveReport rep;
  const int m = p.n_ineq();
  if (m == 0) {
    const int n = p.dim();
    const int ne = static_cast<int>(p.eq_e.rows());
    if (ne == 0) {
      z = -p.h.ldlt().solve(p.c);
    } else {
      MatR kkt = MatR::Zero(n + ne, n + ne);
      kkt.topLeftCorner(n, n) = p.h;
      kkt.topRightCorner(n, ne) = p.eq_e.transpose();
      kkt.bottomLeftCorner(ne, n) = p.eq_e;
      VecR rhs(n + ne);
      rhs.head(n) = -p.c;
      rhs.tail(ne) = p.eq_d;
      const VecR sol = kkt.partialPivLu().solve(rhs);
      z = sol.head(n);
      rep.eq_duals = sol.tail(ne);
    }
    rep.z = z;
    rep.status = SolveStatus::kOptimal;
    rep.objective = p.objective(z);
    rep.primal_infeasibility = p.infeasibility(z);
    return rep;
  }

  detail::BarrierNewton newton(p);
  int iters = 0;
  double eta = 1.0;
  while (true) {
    const int used = newton.center(z, eta, opt.max_newton);
    iters += (used < 0) ? opt.max_newton : used;
    const double gap = static_cast<double>(m) / eta;
    if (gap <= opt.gap_tol * (1.0 + std::abs(p.objective(z)))) break;
    if (iters > 50 * opt.max_newton) break;  // safety net
    eta *= opt.barrier_mu;
  }

  rep.z = z;
  rep.newton_iterations = iters;
  rep.status = SolveStatus::kOptimal;
  rep.objective = p.objective(z);
  rep.primal_infeasibility = p.infeasibility(z);
  rep.lin_duals.resize(static_cast<Eigen::Index>(p.lin.size()));
  for (std::size_t i = 0; i < p.lin.size(); ++i)
    rep.lin_duals(static_cast<Eigen::Index>(i)) =
        1.0 / (eta * p.lin_slack(i, z));
  rep.quad_duals.resize(static_cast<Eigen::Index>(p.quad.size()));
  for (std::size_t k = 0; k < p.quad.size(); ++k)
    rep.quad_duals(static_cast<Eigen::Index>(k)) =
        1.0 / (eta * p.quad_slack(k, z));
  rep.eq_duals = VecR::Zero(p.eq_e.rows());
  return rep;
}

/// Active-set refinement of a near-optimal point. Treats the nearly active
/// inequalities as equalities, Newton-solves that KKT system, then drops
/// negative-multiplier rows and adds violated ones until an exact KKT point
/// with nonnegative multipliers is found; KKT sufficiency for this convex
/// problem makes that point the global optimum. Returns true on success and
/// leaves `rep` untouched on failure, so the input remains the fallback.
/// Also serves as the warm-start fast path: started from the previous
/// solution of a slowly changing subproblem it typically converges in one or
/// two working-set rounds without any barrier stage.
inline bool polish_active_set(const RealQcqp& p, RealSolveReport& rep) {
  const int n = p.dim();
  const int ne = static_cast<int>(p.eq_e.rows());
  std::vector<char> act_lin(p.lin.size(), 0), act_quad(p.quad.size(), 0);
  const double scale = 1.0 + rep.z.cwiseAbs().maxCoeff();
  const double grad_scale = 1.0 + (p.h * rep.z + p.c).cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < p.lin.size(); ++i)
    act_lin[i] = p.lin_slack(i, rep.z) <= 1e-6 * scale;
  for (std::size_t k = 0; k < p.quad.size(); ++k)
    act_quad[k] = p.quad_slack(k, rep.z) <= 1e-6 * scale;

  for (int round = 0; round < 40; ++round) {
    std::vector<std::size_t> ali, aqi;
    for (std::size_t i = 0; i < p.lin.size(); ++i)
      if (act_lin[i]) ali.push_back(i);
    for (std::size_t k = 0; k < p.quad.size(); ++k)
      if (act_quad[k]) aqi.push_back(k);
    const int na = static_cast<int>(ali.size());
    const int nq = static_cast<int>(aqi.size());

    // Newton on the working-set KKT equalities:
    //   H z + c - sum lam_i a_i + sum mu_k w_k(z) + E^T nu = 0
    //   a_i^T z = b_i,   quad_k(z) = s_k,   E z = d.
    VecR z = rep.z;
    VecR lam = VecR::Zero(na), mu = VecR::Zero(nq), nu = VecR::Zero(ne);
    bool ok = true;
    double first_res = -1.0;
    for (int newt = 0;; ++newt) {
      VecR r_stat = p.h * z + p.c;
      for (int i = 0; i < na; ++i)
        r_stat.noalias() -= lam(i) * p.lin[ali[static_cast<std::size_t>(i)]].a;
      for (int k = 0; k < nq; ++k)
        r_stat.noalias() +=
            mu(k) * p.quad_grad(aqi[static_cast<std::size_t>(k)], z);
      if (ne > 0) r_stat.noalias() += p.eq_e.transpose() * nu;

      VecR r_pri(na + nq + ne);
      for (int i = 0; i < na; ++i)
        r_pri(i) = -p.lin_slack(ali[static_cast<std::size_t>(i)], z);
      for (int k = 0; k < nq; ++k)
        r_pri(na + k) = -p.quad_slack(aqi[static_cast<std::size_t>(k)], z);
      if (ne > 0) r_pri.tail(ne) = p.eq_e * z - p.eq_d;

      const double res = r_stat.cwiseAbs().maxCoeff() +
                         (r_pri.size() ? r_pri.cwiseAbs().maxCoeff() : 0.0);
      if (res <= 1e-12 * (scale + grad_scale)) break;
      if (first_res < 0.0) first_res = res;
      if (newt >= 30 || !std::isfinite(res) || res > 1e6 * (first_res + 1.0)) {
        ok = false;
        break;
      }

      const int dim_kkt = n + na + nq + ne;
      MatR kkt = MatR::Zero(dim_kkt, dim_kkt);
      MatR hz = p.h;
      for (int k = 0; k < nq; ++k)
        for (int j : p.quad[aqi[static_cast<std::size_t>(k)]].sq_idx)
          hz(j, j) += 2.0 * mu(k);
      kkt.topLeftCorner(n, n) = hz;
      for (int i = 0; i < na; ++i) {
        const VecR& a = p.lin[ali[static_cast<std::size_t>(i)]].a;
        kkt.block(0, n + i, n, 1) = -a;                 // d r_stat / d lam
        kkt.block(n + i, 0, 1, n) = -a.transpose();     // d(b - a^T z)/d z
      }
      for (int k = 0; k < nq; ++k) {
        const VecR w = p.quad_grad(aqi[static_cast<std::size_t>(k)], z);
        kkt.block(0, n + na + k, n, 1) = w;             // d r_stat / d mu
        kkt.block(n + na + k, 0, 1, n) = w.transpose(); // d(quad - s)/d z
      }
      if (ne > 0) {
        kkt.block(0, n + na + nq, n, ne) = p.eq_e.transpose();
        kkt.block(n + na + nq, 0, ne, n) = p.eq_e;
      }

      VecR rhs(dim_kkt);
      rhs.head(n) = -r_stat;
      if (dim_kkt > n) rhs.tail(na + nq + ne) = -r_pri;

      VecR delta = kkt.partialPivLu().solve(rhs);
      const bool bad = !delta.allFinite() ||
                       (kkt * delta - rhs).cwiseAbs().maxCoeff() >
                           1e-8 * (1.0 + rhs.cwiseAbs().maxCoeff());
      if (bad) {
        Eigen::FullPivLU<MatR> flu(kkt);
        if (!flu.isInvertible()) {
          ok = false;
          break;
        }
        delta = flu.solve(rhs);
        if (!delta.allFinite()) {
          ok = false;
          break;
        }
      }
      z += delta.head(n);
      lam += delta.segment(n, na);
      mu += delta.segment(n + na, nq);
      if (ne > 0) nu += delta.tail(ne);
    }
    if (!ok) return false;

    // Multiplier signs and inactive feasibility decide the next working set.
    const double dual_tol = 1e-10 * grad_scale;
    std::size_t drop_idx = 0;
    int drop_kind = 0;  // 0 none, 1 lin, 2 quad
    double most_neg = -dual_tol;
    for (int i = 0; i < na; ++i)
      if (lam(i) < most_neg) {
        most_neg = lam(i);
        drop_idx = ali[static_cast<std::size_t>(i)];
        drop_kind = 1;
      }
    for (int k = 0; k < nq; ++k)
      if (mu(k) < most_neg) {
        most_neg = mu(k);
        drop_idx = aqi[static_cast<std::size_t>(k)];
        drop_kind = 2;
      }
    if (drop_kind == 1) {
      act_lin[drop_idx] = 0;
      continue;
    }
    if (drop_kind == 2) {
      act_quad[drop_idx] = 0;
      continue;
    }

    // Batch-add clearly violated constraints (wrong ones are dropped by the
    // multiplier check on later rounds).
    double worst = 1e-11 * scale;
    for (std::size_t i = 0; i < p.lin.size(); ++i)
      if (!act_lin[i]) worst = std::max(worst, -p.lin_slack(i, z));
    for (std::size_t k = 0; k < p.quad.size(); ++k)
      if (!act_quad[k]) worst = std::max(worst, -p.quad_slack(k, z));
    bool added = false;
    if (worst > 1e-11 * scale) {
      const double cut = std::max(1e-11 * scale, 0.3 * worst);
      for (std::size_t i = 0; i < p.lin.size(); ++i)
        if (!act_lin[i] && -p.lin_slack(i, z) >= cut) {
          act_lin[i] = 1;
          added = true;
        }
      for (std::size_t k = 0; k < p.quad.size(); ++k)
        if (!act_quad[k] && -p.quad_slack(k, z) >= cut) {
          act_quad[k] = 1;
          added = true;
        }
    }
    if (added) continue;

    // Exact KKT point with nonnegative multipliers; accept if no worse.
    if (p.objective(z) <=
        rep.objective + 1e-9 * (1.0 + std::abs(rep.objective))) {
      rep.z = z;
      rep.objective = p.objective(z);
      rep.primal_infeasibility = p.infeasibility(z);
      rep.status = SolveStatus::kOptimal;
      rep.lin_duals = VecR::Zero(static_cast<Eigen::Index>(p.lin.size()));
      for (int i = 0; i < na; ++i)
        rep.lin_duals(static_cast<Eigen::Index>(
            ali[static_cast<std::size_t>(i)])) = std::max(0.0, lam(i));
      rep.quad_duals = VecR::Zero(static_cast<Eigen::Index>(p.quad.size()));
      for (int k = 0; k < nq; ++k)
        rep.quad_duals(static_cast<Eigen::Index>(
            aqi[static_cast<std::size_t>(k)])) = std::max(0.0, mu(k));
      rep.eq_duals = nu;
      return true;
    }
    return false;
  }
  return false;
}

/// Checks strict feasibility with a safety margin (used to vet warm starts).
inline bool strictly_feasible(const RealQcqp& p, const VecR& z, double margin) {
  if (z.size() != p.dim()) return false;
  for (std::size_t i = 0; i < p.lin.size(); ++i)
    if (p.lin_slack(i, z) <= margin) return false;
  for (std::size_t k = 0; k < p.quad.size(); ++k)
    if (p.quad_slack(k, z) <= margin) return false;
  if (p.eq_e.rows() > 0 &&
      (p.eq_e * z - p.eq_d).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + z.norm()))
    return false;
  return true;
}

/// Finds a strictly feasible point of p (ignoring its objective) by relaxing
/// every inequality with one shared slack variable and driving it negative.
/// Returns nullopt when the problem is (numerically) infeasible.
inline std::optional<VecR> phase_one(const RealQcqp& p, const IpmOptions& opt) {
  const int n = p.dim();
  RealQcqp aux;
  aux.h = MatR::Zero(n + 1, n + 1);
  aux.h(n, n) = 1e-6;  // keeps the relaxed problem bounded below
  aux.c = VecR::Zero(n + 1);
  aux.c(n) = 1.0;
  for (const auto& lc : p.lin) {
    LinConstraint nc;
    nc.a = VecR::Zero(n + 1);
    nc.a.head(n) = lc.a;
    nc.a(n) = 1.0;
    nc.b = lc.b;
    aux.lin.push_back(std::move(nc));
  }
  for (const auto& qc : p.quad) {
    QuadConstraint nq = qc;
    nq.lin.push_back({n, -1.0});
    aux.quad.push_back(std::move(nq));
  }
  if (p.eq_e.rows() > 0) {
    aux.eq_e = MatR::Zero(p.eq_e.rows(), n + 1);
    aux.eq_e.leftCols(n) = p.eq_e;
    aux.eq_d = p.eq_d;
  }

  VecR z0 = VecR::Zero(n);
  if (p.eq_e.rows() > 0)
    z0 = p.eq_e.completeOrthogonalDecomposition().solve(p.eq_d);
  VecR zx(n + 1);
  zx.head(n) = z0;
  zx(n) = p.infeasibility(z0) + 1.0;

  detail::BarrierNewton newton(aux);
  double eta = 1.0;
  for (int stage = 0; stage < 40; ++stage) {
    newton.center(zx, eta, opt.max_newton);
    if (zx(n) < -opt.phase1_margin) {
      const VecR z = zx.head(n);
      if (strictly_feasible(p, z, 0.0)) return z;
    }
    if (static_cast<double>(aux.n_ineq()) / eta < 1e-12) break;
    eta *= opt.barrier_mu;
  }
  if (zx(n) < 0.0) {
    const VecR z = zx.head(n);
    if (strictly_feasible(p, z, 0.0)) return z;
  }
  return std::nullopt;
}

/// Full pipeline: active-set fast path from the warm start, then (on
/// failure) warm-start vetting, optional phase-I, barrier, polish.
inline RealSolveReport solve_real_qcqp(
    const RealQcqp& p, const IpmOptions& opt,
    const std::optional<VecR>& warm_start = std::nullopt,
    const std::optional<VecR>& interior_anchor = std::nullopt) {
  if (opt.polish && warm_start && warm_start->size() == p.dim() &&
      p.n_ineq() > 0 && p.infeasibility(*warm_start) <= 1e-7) {
    RealSolveReport fast;
    fast.z = *warm_start;
    fast.objective = p.objective(fast.z);
    fast.primal_infeasibility = p.infeasibility(fast.z);
    fast.lin_duals = VecR::Zero(static_cast<Eigen::Index>(p.lin.size()));
    fast.quad_duals = VecR::Zero(static_cast<Eigen::Index>(p.quad.size()));
    fast.eq_duals = VecR::Zero(p.eq_e.rows());
    if (polish_active_set(p, fast)) return fast;
  }

  VecR z0;
  bool have_start = false;
  const double margin = 1e-10;
  if (warm_start && strictly_feasible(p, *warm_start, margin)) {
    z0 = *warm_start;
    have_start = true;
  }
  if (!have_start && warm_start && interior_anchor &&
      warm_start->size() == p.dim() && interior_anchor->size() == p.dim()) {
    // Pull the warm start toward a deep interior point.
    for (double t : {0.01, 0.05, 0.2, 0.5, 0.9}) {
      const VecR blend = (1.0 - t) * (*warm_start) + t * (*interior_anchor);
      if (strictly_feasible(p, blend, margin)) {
        z0 = blend;
        have_start = true;
        break;
      }
    }
  }
  if (!have_start && interior_anchor &&
      strictly_feasible(p, *interior_anchor, margin)) {
    z0 = *interior_anchor;
    have_start = true;
  }
  if (!have_start && p.n_ineq() == 0) {
    z0 = VecR::Zero(p.dim());
    have_start = true;
  }
  if (!have_start) {
    const auto z = phase_one(p, opt);
    if (!z) {
      RealSolveReport rep;
      rep.status = SolveStatus::kInfeasible;
      rep.z = VecR::Zero(p.dim());
      rep.primal_infeasibility = p.infeasibility(rep.z);
      return rep;
    }
    z0 = *z;
  }

  RealSolveReport rep = solve_from_interior(p, z0, opt);
  if (opt.polish && rep.status == SolveStatus::kOptimal && p.n_ineq() > 0)
    polish_active_set(p, rep);
  return rep;
}

}  // namespace stapslp
