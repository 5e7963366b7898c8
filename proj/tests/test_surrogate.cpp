// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <stapslp/surrogate.hpp>

#include "support/dense_model.hpp"
#include "support/scenario_fixtures.hpp"

using namespace stapslp;
using stapslp::testing::random_waveform;
using stapslp::testing::tiny_scenario;

namespace {
double neg_objective(const OperatorSet& ops, const VecC& x) {
  return -concentrated_objective(ops, x);
}
}  // namespace

TEST_CASE("surrogate is tangent at the expansion point") {
  auto s = tiny_scenario(23);
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const VecC xt = random_waveform(s.cfg, rng);
    const SurrogateCoeffs c = build_surrogate(s.ops, xt);
    REQUIRE(std::abs(surrogate_value(c, xt) - neg_objective(s.ops, xt)) <=
            1e-9 * (1.0 + std::abs(neg_objective(s.ops, xt))));
  }
}

TEST_CASE("surrogate majorizes the objective on random perturbations") {
  auto s = tiny_scenario(29);
  Rng rng(9);
  const VecC xt = random_waveform(s.cfg, rng);
  const SurrogateCoeffs c = build_surrogate(s.ops, xt);
  for (double scale : {1e-3, 1e-2, 1e-1, 1.0}) {
    for (int trial = 0; trial < 200; ++trial) {
      VecC d(xt.size());
      for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = rng.cnormal();
      const VecC x = xt + scale * xt.norm() * d / d.norm();
      REQUIRE(surrogate_value(c, x) >= neg_objective(s.ops, x) - 1e-8);
    }
  }
}

TEST_CASE("D_t is Hermitian PSD") {
  auto s = tiny_scenario(31);
  Rng rng(10);
  const VecC xt = random_waveform(s.cfg, rng);
  const SurrogateCoeffs c = build_surrogate(s.ops, xt);
  REQUIRE((c.d_matrix - c.d_matrix.adjoint()).norm() <=
          1e-10 * (1.0 + c.d_matrix.norm()));
  Eigen::SelfAdjointEigenSolver<MatC> es(c.d_matrix);
  REQUIRE(es.eigenvalues().minCoeff() >=
          -1e-8 * std::max(1.0, es.eigenvalues().maxCoeff()));
}

TEST_CASE("no clutter: D_t vanishes, b_t is the matched-filter gradient") {
  auto s = tiny_scenario(37);
  OperatorSet clean = s.ops;
  clean.clutter_factors.clear();
  Rng rng(11);
  const VecC xt = random_waveform(s.cfg, rng);
  const SurrogateCoeffs c = build_surrogate(clean, xt);

  REQUIRE(c.d_matrix.norm() == 0.0);
  const VecC expected_b =
      (2.0 / clean.noise_power) * clean.a0.adjoint_apply(clean.a0.apply(xt));
  REQUIRE((c.b_vector - expected_b).norm() <= 1e-12 * expected_b.norm());

  // The surrogate is the tangent linearization of -||A0 x||^2 / sigma_r^2,
  // so it majorizes globally and touches at xt.
  REQUIRE(std::abs(surrogate_value(c, xt) - neg_objective(clean, xt)) < 1e-10);
  for (int trial = 0; trial < 50; ++trial) {
    const VecC x = random_waveform(s.cfg, rng);
    REQUIRE(surrogate_value(c, x) >= neg_objective(clean, x) - 1e-9);
  }
}

TEST_CASE("surrogate_value basics") {
  auto s = tiny_scenario(41);
  Rng rng(12);
  const VecC xt = random_waveform(s.cfg, rng);
  const SurrogateCoeffs c = build_surrogate(s.ops, xt);

  SECTION("value at zero is the constant") {
    REQUIRE(surrogate_value(c, VecC::Zero(xt.size())) ==
            Catch::Approx(c.const_offset));
  }

  SECTION("convexity via midpoints") {
    for (int trial = 0; trial < 50; ++trial) {
      const VecC x1 = random_waveform(s.cfg, rng);
      const VecC x2 = random_waveform(s.cfg, rng);
      const double mid = surrogate_value(c, 0.5 * (x1 + x2));
      const double avg =
          0.5 * (surrogate_value(c, x1) + surrogate_value(c, x2));
      REQUIRE(mid <= avg + 1e-9 * (1.0 + std::abs(avg)));
    }
  }

  SECTION("finite differences match the gradient 2 D x - b") {
    const VecC x0 = random_waveform(s.cfg, rng);
    const VecC grad = 2.0 * (c.d_matrix * x0) - c.b_vector;
    const double h = 1e-5;
    for (int coord = 0; coord < 4; ++coord) {
      for (cxd dir : {cxd(1, 0), cxd(0, 1)}) {
        VecC xp = x0, xm = x0;
        xp(coord) += h * dir;
        xm(coord) -= h * dir;
        const double fd =
            (surrogate_value(c, xp) - surrogate_value(c, xm)) / (2.0 * h);
        // d/dt f(x + t dir e_c) = Re{conj(grad_c) dir} with the Wirtinger
        // convention grad = 2Dx - b for f = x^H D x - Re{b^H x}.
        const double analytic = (std::conj(grad(coord)) * dir).real();
        REQUIRE(fd == Catch::Approx(analytic).epsilon(1e-5).margin(1e-7));
      }
    }
  }
}

TEST_CASE("minimizing the surrogate cannot decrease the concentrated objective") {
  // MM descent on the unconstrained prox problem: the next iterate from
  // min surrogate + (rho/2)||x - x_t||^2 must not lower g(x).
  auto s = tiny_scenario(43);
  Rng rng(13);
  VecC x = random_waveform(s.cfg, rng);
  double g_prev = concentrated_objective(s.ops, x);
  for (int it = 0; it < 5; ++it) {
    const SurrogateCoeffs c = build_surrogate(s.ops, x);
    const double rho = 1e-6;
    // minimizer of x^H D x - Re{b^H x} + (rho/2)||x - x_t||^2
    MatC lhs = 2.0 * c.d_matrix;
    lhs.diagonal().array() += rho;
    x = lhs.ldlt().solve(c.b_vector + rho * x);
    const double g_now = concentrated_objective(s.ops, x);
    REQUIRE(g_now >= g_prev - 1e-9 * (1.0 + std::abs(g_prev)));
    g_prev = g_now;
  }
}
