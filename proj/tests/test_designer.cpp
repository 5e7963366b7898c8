// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <stapslp/designer.hpp>
#include <stapslp/lfm.hpp>

#include "support/dense_model.hpp"
#include "support/scenario_fixtures.hpp"

using namespace stapslp;
using stapslp::testing::desk_scenario;
using stapslp::testing::tiny_scenario;

namespace {
SolverConfig fast_cfg() {
  SolverConfig cfg;
  cfg.mm_max_iter = 30;
  cfg.admm_max_iter = 120;
  return cfg;
}

void check_monotone_trace(const DesignResult& res) {
  for (std::size_t i = 0; i + 1 < res.sinr_trace.size(); ++i)
    REQUIRE(res.sinr_trace[i + 1].second >= res.sinr_trace[i].second - 1e-6);
}
}  // namespace

TEST_CASE("y_update_cm closed form") {
  SECTION("worked scalars") {
    VecC a(3);
    a << cxd(2.0, 0.0), 2.0 * std::exp(kJ * (kPi / 4.0)), cxd(1.0, 0.0);
    VecR b(3);
    b << 4.0, 0.0, -3.0;
    const VecC y = y_update_cm(a, b);
    REQUIRE(std::abs(y(0) - cxd(3.0, 0.0)) < 1e-14);
    REQUIRE(std::abs(y(1) - std::exp(kJ * (kPi / 4.0))) < 1e-14);
    REQUIRE(std::abs(y(2)) == 0.0);  // clamp engaged
  }

  SECTION("zero input takes phase zero") {
    VecC a = VecC::Zero(1);
    VecR b = VecR::Constant(1, 2.0);
    const VecC y = y_update_cm(a, b);
    REQUIRE(y(0) == cxd(1.0, 0.0));
  }

  SECTION("matches exhaustive 2-D grid search") {
    // Objective per coordinate: |y - a|^2 + (|y| - b)^2.
    Rng rng(5);
    for (int trial = 0; trial < 12; ++trial) {
      const cxd a = rng.cnormal() * rng.uniform(0.0, 2.0);
      const double b = rng.uniform(-2.0, 2.0);  // clamp-active cases included
      VecC av(1);
      av << a;
      VecR bv(1);
      bv << b;
      const cxd y_star = y_update_cm(av, bv)(0);
      auto objective = [&](cxd y) {
        return std::norm(y - a) + std::pow(std::abs(y) - b, 2.0);
      };
      const double f_star = objective(y_star);
      const int n_grid = 400;  // unit test scale; acceptance uses 2000
      const double amp_max = 2.0 * (std::abs(a) + std::abs(b)) + 1.0;
      double best = std::numeric_limits<double>::infinity();
      for (int ia = 0; ia <= n_grid; ++ia)
        for (int ip = 0; ip < n_grid; ++ip) {
          const double amp = amp_max * ia / n_grid;
          const double ph = -kPi + 2.0 * kPi * ip / n_grid;
          best = std::min(best, objective(amp * std::exp(kJ * ph)));
        }
      REQUIRE(f_star <= best + 1e-12);
    }
  }
}

TEST_CASE("y_update_papr closed form") {
  Rng rng(6);
  const double p = 4.0;
  VecC x(3), lambda(3);
  for (int i = 0; i < 3; ++i) {
    x(i) = rng.cnormal();
    lambda(i) = rng.cnormal();
  }

  const VecC y = y_update_papr(x, lambda, 1.0, p);
  REQUIRE(y.squaredNorm() == Catch::Approx(p).epsilon(1e-12));

  SECTION("already on the sphere: unchanged") {
    VecC v = x + lambda;
    v *= std::sqrt(p) / v.norm();
    const VecC y2 = y_update_papr(v, VecC::Zero(3), 1.0, p);
    REQUIRE((y2 - v).norm() < 1e-12);
  }

  SECTION("radial: scaling the input does not move the output") {
    const VecC y3 = y_update_papr(VecC(3.0 * x), VecC(3.0 * lambda), 1.0, p);
    REQUIRE((y3 - y).norm() < 1e-12);
  }

  SECTION("zero input tie-break") {
    const VecC y4 = y_update_papr(VecC::Zero(3), VecC::Zero(3), 1.0, p);
    REQUIRE(y4(0) == cxd(2.0, 0.0));
    REQUIRE(std::abs(y4(1)) == 0.0);
  }
}

TEST_CASE("dual_update accumulates residuals") {
  VecC x(2), y(2), lambda = VecC::Zero(2);
  VecR mu = VecR::Zero(2);
  x << cxd(1.0, 1.0), cxd(0.0, 2.0);
  y << cxd(1.0, 0.0), cxd(0.0, 2.0);
  const double rho = 2.0, radius = 1.5;

  auto [l1, m1] = dual_update(lambda, mu, rho, x, y, radius);
  REQUIRE(std::abs(l1(0) - cxd(0.0, 2.0)) < 1e-15);
  REQUIRE(std::abs(l1(1)) == 0.0);
  REQUIRE(m1(0) == Catch::Approx(rho * (1.0 - radius)));
  REQUIRE(m1(1) == Catch::Approx(rho * (2.0 - radius)));

  // constant residual accumulates linearly
  auto [l2, m2] = dual_update(l1, m1, rho, x, y, radius);
  REQUIRE(std::abs(l2(0) - cxd(0.0, 4.0)) < 1e-15);
  REQUIRE(m2(1) == Catch::Approx(2.0 * rho * (2.0 - radius)));

  // x = y and |y| = radius leave the duals unchanged
  VecC on_sphere(2);
  on_sphere << radius * std::exp(kJ * 0.3), radius * std::exp(kJ * (-1.2));
  auto [l3, m3] = dual_update(lambda, mu, rho, on_sphere, on_sphere, radius);
  REQUIRE(l3.norm() == 0.0);
  REQUIRE(m3.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("initialize_waveform: single-row phase alignment optimum") {
  // One unit-norm row, disk radius r: the maximin puts each coordinate at
  // radius r aligned with the row, objective r * sum |h_j|.
  const int n = 5;
  Rng rng(8);
  VecC h(n);
  for (int i = 0; i < n; ++i) h(i) = rng.cnormal();
  h /= h.norm();
  const double p = 2.0;  // r = sqrt(p/n)
  const ConstraintVariant variant = ConstraintVariant::cm(p);
  const double r = variant.entry_radius(n);

  const VecC x = initialize_waveform({h}, variant, n);
  const double achieved = (h.adjoint() * x).real()(0);
  const double expected = r * h.cwiseAbs().sum();
  REQUIRE(achieved == Catch::Approx(expected).epsilon(1e-6));
}

TEST_CASE("initialize_waveform reaches a nonnegative maximin") {
  auto s = tiny_scenario(51, 2, 5.0);
  const CIConstraintSet cset = build_ci_constraints(s.comm, s.cfg);
  const ConstraintVariant variant = ConstraintVariant::cm(10.0);
  const VecC x = initialize_waveform(cset.rows, variant, s.cfg.waveform_dim());
  double maximin = std::numeric_limits<double>::infinity();
  for (const VecC& row : cset.rows)
    maximin = std::min(maximin, (row.adjoint() * x).real()(0));
  REQUIRE(maximin >= 0.0);  // x = 0 already achieves margin 0
}

TEST_CASE("CM design: monotone trace, exact modulus, CI feasibility") {
  auto s = tiny_scenario(61, 2, 5.0);
  const double p = 20.0;
  const DesignResult res = design_ci(s.ops, s.target.power,
                                     ConstraintVariant::cm(p), s.comm, s.cfg,
                                     fast_cfg());
  check_monotone_trace(res);
  REQUIRE(res.feasibility.has_ci_margin);
  REQUIRE(res.feasibility.min_ci_margin >= -1e-6);

  const int n = s.cfg.waveform_dim();
  const double r = std::sqrt(p / n);
  if (res.feasibility.snap_applied) {
    REQUIRE(res.feasibility.max_modulus_deviation <= 1e-12 * r);
    REQUIRE(res.waveform.squaredNorm() == Catch::Approx(p).epsilon(1e-12));
  }
  // reported SINR equals the two-path evaluation at the reported pair
  const double direct =
      output_sinr(s.ops, s.target.power, res.waveform, res.filter);
  REQUIRE(res.sinr_db == Catch::Approx(linear_to_db(direct)).margin(1e-9));

  // SINR improved over the trace start
  REQUIRE(res.sinr_trace.back().second >= res.sinr_trace.front().second);
}

TEST_CASE("PAPR design: power exact, box respected, better than CM") {
  auto s = tiny_scenario(67, 2, 5.0);
  const double p = 20.0;
  const SolverConfig cfg = fast_cfg();
  const DesignResult cm = design_ci(s.ops, s.target.power,
                                    ConstraintVariant::cm(p), s.comm, s.cfg,
                                    cfg);
  const DesignResult papr = design_ci(s.ops, s.target.power,
                                      ConstraintVariant::papr(p, 1.0), s.comm,
                                      s.cfg, cfg);
  check_monotone_trace(papr);
  REQUIRE(papr.waveform.squaredNorm() == Catch::Approx(p).epsilon(1e-9));
  REQUIRE(papr.feasibility.papr <= 2.0 * (1.0 + 1e-9));
  REQUIRE(papr.feasibility.min_ci_margin >= -1e-6);
  // nested feasible sets: PAPR(eps=1) should not lose to CM
  REQUIRE(papr.sinr_db >= cm.sinr_db - 0.05);
}

TEST_CASE("CMS design respects the similarity budget") {
  auto s = tiny_scenario(71, 2, 5.0);
  const double p = 20.0;
  const int n = s.cfg.waveform_dim();
  const VecC ref = build_reference_lfm(s.cfg, p);
  const double xi = 1.5 * std::sqrt(p / n);
  const DesignResult res =
      design_ci(s.ops, s.target.power, ConstraintVariant::cms(p, xi, ref),
                s.comm, s.cfg, fast_cfg());
  check_monotone_trace(res);
  REQUIRE(res.feasibility.max_similarity_deviation <= xi + 1e-9);
  REQUIRE(res.feasibility.min_ci_margin >= -1e-6);
  if (res.feasibility.snap_applied)
    REQUIRE(res.feasibility.max_modulus_deviation <= 1e-12 * std::sqrt(p / n));
}

TEST_CASE("ZF baseline is CI-feasible with near-binding margins") {
  auto s = tiny_scenario(73, 2, 5.0);
  const double p = 20.0;
  const DesignResult zf = design_zf_baseline(s.ops, s.target.power,
                                             ConstraintVariant::cm(p), s.comm,
                                             s.cfg, fast_cfg());
  check_monotone_trace(zf);
  REQUIRE(zf.feasibility.min_ci_margin >= -1e-6);
  // Equalities make every CI margin zero up to solver and snap residuals.
  REQUIRE(zf.feasibility.min_ci_margin <= 1e-3);
}

TEST_CASE("nested feasible sets order the baselines") {
  auto s = tiny_scenario(79, 2, 5.0);
  const double p = 20.0;
  const SolverConfig cfg = fast_cfg();
  const ConstraintVariant variant = ConstraintVariant::cm(p);

  const DesignResult ci = design_ci(s.ops, s.target.power, variant, s.comm,
                                    s.cfg, cfg);
  const DesignResult zf = design_zf_baseline(s.ops, s.target.power, variant,
                                             s.comm, s.cfg, cfg);
  const DesignResult radar =
      design_radar_only(s.ops, s.target.power, variant,
                        build_reference_lfm(s.cfg, p), cfg);

  REQUIRE(radar.sinr_db >= ci.sinr_db - 0.05);
  REQUIRE(ci.sinr_db >= zf.sinr_db - 0.05);
}

TEST_CASE("infeasible QoS raises infeasible_scenario_error") {
  auto s = tiny_scenario(83, 2, 5.0);
  // Tiny power with an enormous QoS demand cannot be met.
  CommSetup greedy = s.comm;
  greedy.qos.assign(greedy.qos.size(), db_to_linear(80.0));
  REQUIRE_THROWS_AS(
      design_ci(s.ops, s.target.power, ConstraintVariant::cm(1e-6), greedy,
                s.cfg, fast_cfg()),
      infeasible_scenario_error);
}

TEST_CASE("radar-only PAPR run approaches the power-iteration bound without clutter") {
  auto s = tiny_scenario(89, 2, 5.0);
  OperatorSet clean = s.ops;
  clean.clutter_factors.clear();
  const double p = 8.0;

  // Upper bound: sigma_0^2 * P * lambda_max(A0^H A0) / sigma_r^2.
  const MatC a0 = clean.a0.dense();
  Eigen::SelfAdjointEigenSolver<MatC> es(MatC(a0.adjoint() * a0));
  const double bound =
      s.target.power * p * es.eigenvalues().maxCoeff() / clean.noise_power;

  // Generous box so the ball constraint is the only binding one.
  SolverConfig cfg = fast_cfg();
  cfg.mm_tol = 1e-6;
  const DesignResult res =
      design_radar_only(clean, s.target.power, ConstraintVariant::papr(p, 4.0),
                        build_reference_lfm(s.cfg, p), cfg);
  const double achieved = db_to_linear(res.sinr_db);
  REQUIRE(achieved <= bound * (1.0 + 1e-9));
  REQUIRE(achieved >= 0.95 * bound);
}

TEST_CASE("design is deterministic under a fixed scenario") {
  auto s = tiny_scenario(97, 2, 5.0);
  const DesignResult a = design_ci(s.ops, s.target.power,
                                   ConstraintVariant::cm(10.0), s.comm, s.cfg,
                                   fast_cfg());
  const DesignResult b = design_ci(s.ops, s.target.power,
                                   ConstraintVariant::cm(10.0), s.comm, s.cfg,
                                   fast_cfg());
  REQUIRE((a.waveform - b.waveform).norm() == 0.0);
  REQUIRE(a.sinr_db == b.sinr_db);
}
