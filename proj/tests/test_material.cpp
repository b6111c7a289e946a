#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "hyperwave/material.hpp"

using namespace hyperwave;
using testutil::random_admissible_state;
using testutil::random_mat3;

namespace {
const NeoHookeanParams unit_params = NeoHookeanParams::from_c1_beta(1.0, 1.0);
}

TEST_CASE("parameter derivation and admissibility", "[material]") {
  NeoHookeanParams p(68.6, 26.32);
  CHECK(p.c1 == Catch::Approx(13.16).epsilon(1e-15));
  CHECK(p.beta == Catch::Approx((3 * 68.6 - 2 * 26.32) / (6 * 26.32)).epsilon(1e-15));
  CHECK(p.beta > 0.0);
  CHECK_THROWS_AS(NeoHookeanParams(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(NeoHookeanParams(1.0, 2.0), std::invalid_argument); // 3K <= 2mu
  CHECK(unit_params.c1 == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(unit_params.beta == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("stored energy values", "[material]") {
  CHECK(energy(unit_params, Mat3::zero()) == 0.0);
  CHECK(energy(unit_params, Mat3::scaled_identity(0.1)) ==
        Catch::Approx(0.19447393005377743).epsilon(1e-12));
  CHECK_THROWS_AS(energy(unit_params, Mat3::scaled_identity(-1.0)), NonPositiveJacobian);
}

TEST_CASE("stress values", "[material]") {
  const Mat3 s0 = stress(unit_params, Mat3::zero());
  for (double v : s0.a) CHECK(v == 0.0);

  const Mat3 s = stress(unit_params, Mat3::scaled_identity(0.1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j)
        CHECK(s(i, j) == Catch::Approx(1.1736837635385865).epsilon(1e-12));
      else
        CHECK(s(i, j) == 0.0);
    }
  CHECK_THROWS_AS(stress(unit_params, Mat3::scaled_identity(-1.0)), NonPositiveJacobian);
}

TEST_CASE("stress is the gradient of the energy", "[material]") {
  std::mt19937_64 gen(101);
  const double eps = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const NeoHookeanParams p = trial % 2 ? unit_params : NeoHookeanParams(68.6, 26.32);
    const Mat3 Y = random_admissible_state(gen);
    const Mat3 H = random_mat3(gen, 1.0);
    const double analytic = ddot(stress(p, Y), H);
    const double fd = (energy(p, Y + eps * H) - energy(p, Y - eps * H)) / (2.0 * eps);
    CHECK(std::abs(analytic - fd) / std::max(1.0, std::abs(analytic)) <= 1e-6);
  }
}

TEST_CASE("tangent value at the reference state", "[material]") {
  const Mat3 t = tangent_apply(unit_params, Mat3::zero(), Mat3::identity());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(t(i, j) == Catch::Approx(i == j ? 16.0 : 0.0).margin(1e-12));

  const Mat3 z = tangent_apply(unit_params, Mat3::scaled_identity(0.05), Mat3::zero());
  for (double v : z.a) CHECK(v == 0.0);
  CHECK_THROWS_AS(tangent_apply(unit_params, Mat3::scaled_identity(-1.0), Mat3::identity()),
                  NonPositiveJacobian);
}

TEST_CASE("tangent is the gradient of the stress", "[material]") {
  std::mt19937_64 gen(202);
  const double eps = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const NeoHookeanParams p = trial % 2 ? unit_params : NeoHookeanParams(68.6, 26.32);
    const Mat3 Y = random_admissible_state(gen);
    const Mat3 H = random_mat3(gen, 1.0);
    const Mat3 analytic = tangent_apply(p, Y, H);
    const Mat3 fd = (1.0 / (2.0 * eps)) * (stress(p, Y + eps * H) - stress(p, Y - eps * H));
    CHECK(frobenius_norm(analytic - fd) / std::max(1.0, frobenius_norm(analytic)) <= 1e-6);
  }
}

TEST_CASE("tangent symmetry and linearity", "[material]") {
  std::mt19937_64 gen(303);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 Y = random_admissible_state(gen);
    const Mat3 H1 = random_mat3(gen, 1.0);
    const Mat3 H2 = random_mat3(gen, 1.0);
    CHECK(std::abs(ddot(H1, tangent_apply(unit_params, Y, H2)) -
                   ddot(H2, tangent_apply(unit_params, Y, H1))) <= 1e-12);

    const double a = 0.7, b = -1.3;
    const Mat3 lhs = tangent_apply(unit_params, Y, a * H1 + b * H2);
    const Mat3 rhs = a * tangent_apply(unit_params, Y, H1) + b * tangent_apply(unit_params, Y, H2);
    CHECK(frobenius_norm(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("first-order B-splines", "[material]") {
  const SplineGrid g(-15.0, 15.0, 30);
  for (int i = 0; i <= 30; ++i)
    for (int p = 0; p <= 30; ++p)
      CHECK(bspline_eval(g, i, g.knot(p)) == Catch::Approx(i == p ? 1.0 : 0.0).margin(1e-12));

  CHECK(bspline_eval(g, 4, 0.5 * (g.knot(4) + g.knot(5))) == Catch::Approx(0.5).margin(1e-12));
  CHECK(bspline_eval(g, 4, -20.0) == 0.0);
  CHECK(bspline_eval(g, 4, 20.0) == 0.0);

  std::mt19937_64 gen(404);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = testutil::uniform(gen, 15.0);
    double s = 0.0;
    for (int i = 0; i <= 30; ++i) s += bspline_eval(g, i, x);
    CHECK(s == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("dictionary weighting", "[material]") {
  const SplineGrid g2(-15.0, 15.0, 8), g3(-15.0, 15.0, 8);
  DictionaryCoeffs ones(8, 8, 1.0);
  std::mt19937_64 gen(505);

  for (int trial = 0; trial < 20; ++trial) {
    const double x2 = testutil::uniform(gen, 15.0), x3 = testutil::uniform(gen, 15.0);
    CHECK(dict_weight(g2, g3, ones, x2, x3, true) == Catch::Approx(1.0).margin(1e-12));
    CHECK(dict_weight(g2, g3, ones, x2, x3, false) == 1.0);
  }

  DictionaryCoeffs alpha(8, 8, 1.0);
  alpha(3, 5) = 0.25;
  CHECK(dict_weight(g2, g3, alpha, g2.knot(3), g3.knot(5), true) == Catch::Approx(0.25).margin(1e-12));
  CHECK(dict_weight(g2, g3, alpha, g2.knot(3), g3.knot(5), false) == 1.0);

  CHECK(dict_gradient_weight(g2, g3, 3, 5, g2.knot(3), g3.knot(5), true) == Catch::Approx(1.0).margin(1e-12));
  CHECK(dict_gradient_weight(g2, g3, 3, 5, g2.knot(3), g3.knot(5), false) == 0.0);

  for (int trial = 0; trial < 20; ++trial) {
    const double x2 = testutil::uniform(gen, 15.0), x3 = testutil::uniform(gen, 15.0);
    double s = 0.0;
    for (int r = 0; r <= 8; ++r)
      for (int q = 0; q <= 8; ++q) s += dict_gradient_weight(g2, g3, r, q, x2, x3, true);
    CHECK(s == Catch::Approx(1.0).margin(1e-12));
  }
}
