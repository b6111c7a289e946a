#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "mat3.hpp"

namespace hyperwave {

/// Neo-Hookean constants. The stored energy is
///   C(Y) = c1 (I1 - 3) + (c1/beta) (D^(-2 beta) - 1),
/// I1 = |F|_F^2, D = det F, F = Y + I, c1 = mu/2, beta = (3K - 2mu)/(6mu).
struct NeoHookeanParams {
  double bulk_modulus;
  double shear_modulus;
  double c1;
  double beta;

  NeoHookeanParams(double K, double mu) : bulk_modulus(K), shear_modulus(mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("shear modulus must be positive");
    if (!(3.0 * K > 2.0 * mu)) throw std::invalid_argument("need 3K > 2mu so that beta > 0");
    c1 = mu / 2.0;
    beta = (3.0 * K - 2.0 * mu) / (6.0 * mu);
  }

  /// Convenience for tests working directly in (c1, beta).
  static NeoHookeanParams from_c1_beta(double c1_, double beta_) {
    const double mu = 2.0 * c1_;
    const double K = (6.0 * mu * beta_ + 2.0 * mu) / 3.0;
    return NeoHookeanParams(K, mu);
  }
};

namespace detail {
inline double det_pow(double det, double beta) {
  // D^(-2 beta) via exp(-2 beta ln D); caller guarantees det > 0.
  return std::exp(-2.0 * beta * std::log(det));
}
} // namespace detail

/// Stored energy C(Y).
inline double energy(const NeoHookeanParams& p, const Mat3& Y) {
  const Mat3 F = Y + Mat3::identity();
  const double D = F.det();
  if (!(D > 0.0)) throw NonPositiveJacobian(D);
  const double I1 = frobenius_norm_sq(F);
  return p.c1 * (I1 - 3.0) + (p.c1 / p.beta) * (detail::det_pow(D, p.beta) - 1.0);
}

/// First Piola-Kirchhoff stress grad_Y C(Y) = 2 c1 F - 2 c1 D^(-2 beta) F^(-T).
inline Mat3 stress(const NeoHookeanParams& p, const Mat3& Y) {
  const Mat3 F = Y + Mat3::identity();
  const double D = F.det();
  if (!(D > 0.0)) throw NonPositiveJacobian(D);
  const double dp = detail::det_pow(D, p.beta);
  const Mat3 Finvt = (1.0 / D) * F.cof();
  return 2.0 * p.c1 * F - (2.0 * p.c1 * dp) * Finvt;
}

/// Directional second derivative grad_Y grad_Y C(Y) : H
///   = 2 c1 H + 4 c1 beta D^(-2b) <<F^-T, H>> F^-T + 2 c1 D^(-2b) F^-T H' F^-T.
inline Mat3 tangent_apply(const NeoHookeanParams& p, const Mat3& Y, const Mat3& H) {
  const Mat3 F = Y + Mat3::identity();
  const double D = F.det();
  if (!(D > 0.0)) throw NonPositiveJacobian(D);
  const double dp = detail::det_pow(D, p.beta);
  const Mat3 Finvt = (1.0 / D) * F.cof();
  Mat3 r = 2.0 * p.c1 * H;
  r += (4.0 * p.c1 * p.beta * dp * ddot(Finvt, H)) * Finvt;
  r += (2.0 * p.c1 * dp) * (Finvt * H.transpose() * Finvt);
  return r;
}

/// Equidistant knot grid x^(0) < ... < x^(n) on [a, b] for first-order B-splines.
struct SplineGrid {
  double a;
  double b;
  int n; // number of cells; n+1 knots

  SplineGrid(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
    if (!(b > a) || n < 1) throw std::invalid_argument("spline grid needs b > a and n >= 1");
  }

  double spacing() const { return (b - a) / n; }
  double knot(int i) const { return a + (b - a) * static_cast<double>(i) / n; }

  int cell_of(double x) const {
    int c = static_cast<int>(std::floor((x - a) / spacing()));
    return std::clamp(c, 0, n - 1);
  }
};

/// First-order B-spline (hat function) b_i; zero outside [a, b], b_i(x^(p)) = delta_ip.
inline double bspline_eval(const SplineGrid& g, int i, double x) {
  if (x < g.a || x > g.b) return 0.0;
  const double t = std::abs(x - g.knot(i)) / g.spacing();
  return std::max(0.0, 1.0 - t);
}

/// Nonnegative dictionary coefficient matrix alpha in R^{(n+1)x(n+1)}.
/// Entry (i, j) weights b_i(x2) b_j(x3). Also used for unconstrained
/// perturbation directions, so nonnegativity is validated on demand.
struct DictionaryCoeffs {
  int n2; // cells of the x2 grid
  int n3; // cells of the x3 grid
  std::vector<double> v; // (n2+1) x (n3+1), row-major in (i, j)

  DictionaryCoeffs() : n2(0), n3(0), v(1, 0.0) {}
  DictionaryCoeffs(int n2_, int n3_, double fill = 0.0)
      : n2(n2_), n3(n3_), v(static_cast<std::size_t>(n2_ + 1) * (n3_ + 1), fill) {}

  int rows() const { return n2 + 1; }
  int cols() const { return n3 + 1; }
  double& operator()(int i, int j) { return v[static_cast<std::size_t>(i) * (n3 + 1) + j]; }
  double operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * (n3 + 1) + j]; }

  bool is_nonnegative() const {
    for (double x : v)
      if (x < 0.0) return false;
    return true;
  }

  void clamp_nonnegative() {
    for (double& x : v) x = std::max(0.0, x);
  }

  double max_abs_deviation_from(double ref) const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x - ref));
    return m;
  }
};

/// Spatial dictionary weight: sum_ij alpha_ij b_i(x2) b_j(x3) inside a layer,
/// 1 between the layers (undamaged bulk material).
inline double dict_weight(const SplineGrid& g2, const SplineGrid& g3, const DictionaryCoeffs& alpha,
                          double x2, double x3, bool in_layer) {
  if (!in_layer) return 1.0;
  const int c2 = g2.cell_of(x2);
  const int c3 = g3.cell_of(x3);
  double s = 0.0;
  for (int i = c2; i <= c2 + 1; ++i) {
    const double bi = bspline_eval(g2, i, x2);
    if (bi == 0.0) continue;
    for (int j = c3; j <= c3 + 1; ++j) s += alpha(i, j) * bi * bspline_eval(g3, j, x3);
  }
  return s;
}

/// Spatial factor of the dictionary element C_rs = b_r b_s C: b_r(x2) b_s(x3)
/// inside a layer, 0 between the layers.
inline double dict_gradient_weight(const SplineGrid& g2, const SplineGrid& g3, int r, int s,
                                   double x2, double x3, bool in_layer) {
  if (!in_layer) return 0.0;
  return bspline_eval(g2, r, x2) * bspline_eval(g3, s, x3);
}

/// Constitutive model plus the dictionary grids it is weighted by.
struct Material {
  NeoHookeanParams params;
  SplineGrid grid2;
  SplineGrid grid3;
};

} // namespace hyperwave
