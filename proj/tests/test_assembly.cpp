#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "hyperwave/assembly.hpp"

using namespace hyperwave;

namespace {

Material desk_material() {
  return Material{NeoHookeanParams(68.6, 26.32), SplineGrid(-15, 15, 8), SplineGrid(-15, 15, 8)};
}

PlateMesh desk_mesh() { return build_plate({-0.1, -15, -15}, {0.1, 15, 15}, {2, 8, 8}); }

std::vector<double> random_field(const PlateMesh& m, std::mt19937_64& gen, double scale) {
  std::vector<double> u(m.dof_count());
  for (double& v : u) v = testutil::uniform(gen, scale);
  return u;
}

/// Independent oracle for one tangent entry at the zero state: 3x3x3 Gauss
/// with locally coded trilinear gradients, using the closed-form tensor
/// grad^2 C(0) : H = 2 c1 H + 4 c1 beta tr(H) I + 2 c1 H'.
double tangent_entry_oracle_zero_state(const PlateMesh& m, const NeoHookeanParams& p, int e,
                                       int na, int ca, int nb, int cb) {
  const std::array<double, 3> gp = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const std::array<double, 3> gw = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const auto ei = m.elem_index(e);
  double acc = 0.0;
  for (int q3 = 0; q3 < 3; ++q3)
    for (int q2 = 0; q2 < 3; ++q2)
      for (int q1 = 0; q1 < 3; ++q1) {
        const std::array<double, 3> xi = {gp[q1], gp[q2], gp[q3]};
        const double w = gw[q1] * gw[q2] * gw[q3] * (m.h[0] * m.h[1] * m.h[2]) / 8.0;
        const auto grad_of = [&](int local) {
          const int l1 = local % 2, l2 = (local / 2) % 2, l3 = local / 4;
          const std::array<double, 3> s = {l1 ? 1.0 : -1.0, l2 ? 1.0 : -1.0, l3 ? 1.0 : -1.0};
          const std::array<double, 3> f = {0.5 * (1 + s[0] * xi[0]), 0.5 * (1 + s[1] * xi[1]),
                                           0.5 * (1 + s[2] * xi[2])};
          return std::array<double, 3>{s[0] * 0.5 * f[1] * f[2] * 2.0 / m.h[0],
                                       f[0] * s[1] * 0.5 * f[2] * 2.0 / m.h[1],
                                       f[0] * f[1] * s[2] * 0.5 * 2.0 / m.h[2]};
        };
        (void)ei;
        const auto ga = grad_of(na), gb = grad_of(nb);
        // (2 c1 Jr + 4 c1 beta tr(Jr) I + 2 c1 Jr') : Js with Jr = e_ca (x) ga
        double v = 0.0;
        if (ca == cb) {
          double dd = 0.0;
          for (int d = 0; d < 3; ++d) dd += ga[d] * gb[d];
          v += 2.0 * p.c1 * dd;
        }
        v += 4.0 * p.c1 * p.beta * ga[ca] * gb[cb];
        v += 2.0 * p.c1 * ga[cb] * gb[ca];
        acc += w * v;
      }
  return acc;
}

} // namespace

TEST_CASE("tangent at the zero state matches the dense oracle", "[assembly]") {
  const PlateMesh m = desk_mesh();
  const Material mat = desk_material();
  DictionaryCoeffs ones(8, 8, 1.0);
  std::vector<double> zero(m.dof_count(), 0.0);
  const SparseMatrix A = assemble_tangent(m, mat, ones, zero, zero, 0.5);

  // entries coupling dofs inside a single element can be compared directly
  const int e = m.elem_id(0, 2, 3);
  const auto& conn = m.elems[e];
  // local node 0 couples with local node 7 only through this element
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 12; ++trial) {
    const int ca = static_cast<int>(gen() % 3), cb = static_cast<int>(gen() % 3);
    const double oracle = tangent_entry_oracle_zero_state(m, mat.params, e, 0, ca, 7, cb);
    const double got = A.at(3 * conn[0] + ca, 3 * conn[7] + cb);
    CHECK(got == Catch::Approx(oracle).margin(1e-10 * std::max(1.0, std::abs(oracle))));
  }
}

TEST_CASE("tangent is bit-exactly symmetric", "[assembly]") {
  const PlateMesh m = desk_mesh();
  const Material mat = desk_material();
  DictionaryCoeffs ones(8, 8, 1.0);
  std::mt19937_64 gen(6);
  const std::vector<double> ua = random_field(m, gen, 1e-3);
  const std::vector<double> ub = random_field(m, gen, 1e-3);
  const SparseMatrix A = assemble_tangent(m, mat, ones, ua, ub, 0.7);
  CHECK(A.max_asymmetry() == 0.0);
}

TEST_CASE("zero coefficients silence layer-only couplings", "[assembly]") {
  // thickness has bulk elements here, so only the x1-extreme layers carry alpha
  const PlateMesh m = build_plate({-0.1, -15, -15}, {0.1, 15, 15}, {4, 4, 4});
  const Material mat = desk_material();
  DictionaryCoeffs zero_alpha(8, 8, 0.0);
  std::vector<double> zero(m.dof_count(), 0.0);
  const SparseMatrix A = assemble_tangent(m, mat, zero_alpha, zero, zero, 0.5);

  // two adjacent nodes on the x1 = lo face share only layer elements
  const int r = m.node_id(0, 2, 2), s = m.node_id(0, 3, 2);
  for (int ca = 0; ca < 3; ++ca)
    for (int cb = 0; cb < 3; ++cb) CHECK(A.at(3 * r + ca, 3 * s + cb) == 0.0);

  // mid-plane nodes couple through bulk elements regardless of alpha
  const int rb = m.node_id(2, 2, 2), sb = m.node_id(2, 3, 2);
  double any = 0.0;
  for (int ca = 0; ca < 3; ++ca)
    for (int cb = 0; cb < 3; ++cb) any += std::abs(A.at(3 * rb + ca, 3 * sb + cb));
  CHECK(any > 0.0);
}

TEST_CASE("internal force properties", "[assembly]") {
  const PlateMesh m = desk_mesh();
  const Material mat = desk_material();
  DictionaryCoeffs ones(8, 8, 1.0);
  std::vector<double> zero(m.dof_count(), 0.0);

  const std::vector<double> D0 = assemble_internal_force(m, mat, ones, zero, zero, 0.5);
  CHECK(max_abs(D0) == 0.0);

  // linearity in alpha (every element lies in a layer on this mesh)
  std::mt19937_64 gen(8);
  const std::vector<double> ua = random_field(m, gen, 1e-3);
  const std::vector<double> ub = random_field(m, gen, 1e-3);
  DictionaryCoeffs alpha(8, 8, 1.0);
  for (double& v : alpha.v) v = 1.0 + 0.5 * testutil::uniform(gen, 1.0);
  DictionaryCoeffs scaled = alpha;
  for (double& v : scaled.v) v *= 3.0;
  const std::vector<double> D1 = assemble_internal_force(m, mat, alpha, ua, ub, 0.5);
  const std::vector<double> D3 = assemble_internal_force(m, mat, scaled, ua, ub, 0.5);
  for (std::size_t i = 0; i < D1.size(); i += 17)
    CHECK(D3[i] == Catch::Approx(3.0 * D1[i]).margin(1e-12 * (1.0 + std::abs(D1[i]))));
}

TEST_CASE("internal force linearizes through the tangent", "[assembly]") {
  const PlateMesh m = build_plate({-0.1, -15, -15}, {0.1, 15, 15}, {2, 4, 4});
  const Material mat = Material{NeoHookeanParams(68.6, 26.32), SplineGrid(-15, 15, 4), SplineGrid(-15, 15, 4)};
  DictionaryCoeffs ones(4, 4, 1.0);
  std::mt19937_64 gen(9);
  const std::vector<double> ua = random_field(m, gen, 1e-3);
  const std::vector<double> ub = random_field(m, gen, 1e-3);
  std::vector<double> du = random_field(m, gen, 1.0);
  const double theta = 0.6, eps = 1e-6;

  std::vector<double> uap = ua, uam = ua;
  axpy(eps, du, uap);
  axpy(-eps, du, uam);
  const std::vector<double> Dp = assemble_internal_force(m, mat, ones, uap, ub, theta);
  const std::vector<double> Dm = assemble_internal_force(m, mat, ones, uam, ub, theta);

  const SparseMatrix A = assemble_tangent(m, mat, ones, ua, ub, theta);
  const std::vector<double> Adu = A.multiply(du);

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < du.size(); ++i) {
    const double fd = (Dp[i] - Dm[i]) / (2.0 * eps);
    const double lin = theta * Adu[i];
    num += (fd - lin) * (fd - lin);
    den += lin * lin;
  }
  CHECK(std::sqrt(num) <= 1e-6 * std::sqrt(den));
}

TEST_CASE("gradient entries", "[assembly]") {
  const PlateMesh m = build_plate({-0.1, -15, -15}, {0.1, 15, 15}, {2, 4, 4});
  const Material mat = Material{NeoHookeanParams(68.6, 26.32), SplineGrid(-15, 15, 4), SplineGrid(-15, 15, 4)};
  std::mt19937_64 gen(10);
  const std::vector<double> U = random_field(m, gen, 1e-3);
  const std::vector<double> P = random_field(m, gen, 1e-3);
  std::vector<double> zero(m.dof_count(), 0.0);

  CHECK(gradient_entry(m, mat, 2, 2, U, zero) == 0.0);
  CHECK(gradient_entry(m, mat, 2, 2, zero, P) == 0.0);

  // sum over all (r, s) equals the unweighted layer integral of stress : Jp
  double sum = 0.0;
  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s) sum += gradient_entry(m, mat, r, s, U, P);
  double direct = 0.0;
  for (int e = 0; e < m.elem_count(); ++e) {
    if (!m.elem_in_layer[e]) continue;
    for (int k = 0; k < 8; ++k) {
      const QuadraturePoint qp = m.quadrature_point(e, k);
      direct += qp.weight * ddot(stress(mat.params, eval_gradient(m, U, qp)), eval_gradient(m, P, qp));
    }
  }
  CHECK(sum == Catch::Approx(direct).margin(1e-10 * (1.0 + std::abs(direct))));

  // the batched gradient matrix agrees with per-entry evaluation
  const DictionaryCoeffs G = gradient_matrix(m, mat, U, P);
  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s)
      CHECK(G(r, s) == Catch::Approx(gradient_entry(m, mat, r, s, U, P)).margin(1e-14));
}

TEST_CASE("assembly is deterministic", "[assembly]") {
  const PlateMesh m = desk_mesh();
  const Material mat = desk_material();
  DictionaryCoeffs ones(8, 8, 1.0);
  std::mt19937_64 gen(11);
  const std::vector<double> ua = random_field(m, gen, 1e-3);
  const std::vector<double> ub = random_field(m, gen, 1e-3);
  const SparseMatrix A1 = assemble_tangent(m, mat, ones, ua, ub, 0.5);
  const SparseMatrix A2 = assemble_tangent(m, mat, ones, ua, ub, 0.5);
  CHECK(A1.vals == A2.vals);
  const std::vector<double> D1 = assemble_internal_force(m, mat, ones, ua, ub, 0.5);
  const std::vector<double> D2 = assemble_internal_force(m, mat, ones, ua, ub, 0.5);
  CHECK(D1 == D2);
}
