#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "forward.hpp"
#include "sparse.hpp"
#include "vecops.hpp"

namespace hyperwave {

/// Trapezoid rule on the time grid: (T/m) (v0/2 + v1 + ... + v_{m-1} + vm/2).
inline double trapezoid_time_integral(const std::vector<double>& values, const TimeGrid& tg) {
  if (values.size() != static_cast<std::size_t>(tg.steps) + 1)
    throw LengthMismatch(values.size(), static_cast<std::size_t>(tg.steps) + 1);
  double s = 0.5 * (values.front() + values.back());
  for (int j = 1; j < tg.steps; ++j) s += values[j];
  return tg.dt() * s;
}

/// Trapezoid-in-time of squared Euclidean level norms (the discrete
/// L^2(0,T) norm squared used for data, sensor series and noise scaling).
inline double l2t_norm_sq(const FieldHistory& hist, const TimeGrid& tg) {
  std::vector<double> v(hist.size());
  for (std::size_t j = 0; j < hist.size(); ++j) v[j] = dot(hist[j], hist[j]);
  return trapezoid_time_integral(v, tg);
}

inline double l2t_norm(const FieldHistory& hist, const TimeGrid& tg) {
  return std::sqrt(l2t_norm_sq(hist, tg));
}

/// Trapezoid-in-time of matrix quadratic forms x' B x.
inline double l2t_qform(const SparseMatrix& B, const FieldHistory& hist, const TimeGrid& tg) {
  std::vector<double> v(hist.size());
  for (std::size_t j = 0; j < hist.size(); ++j) v[j] = B.quadratic_form(hist[j]);
  return trapezoid_time_integral(v, tg);
}

/// Discrete L^2(0,T;U) + H^1(0,T;H) norm: the U part is the stiffness-energy
/// seminorm integral |Jz|_F^2, the H^1 part uses mass norms of values and of
/// backward-difference time derivatives (d^0 = 0, matching zero initial
/// velocity of all differenced fields).
struct SpaceTimeNorm {
  const SparseMatrix* mass;
  const SparseMatrix* gradgrad;
  TimeGrid tg;

  double operator()(const FieldHistory& z) const {
    const double u_part = std::sqrt(l2t_qform(*gradgrad, z, tg));

    std::vector<double> vals(z.size()), dvals(z.size(), 0.0);
    for (std::size_t j = 0; j < z.size(); ++j) vals[j] = mass->quadratic_form(z[j]);
    const double k = tg.dt();
    std::vector<double> diff(z.empty() ? 0 : z[0].size());
    for (std::size_t j = 1; j < z.size(); ++j) {
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (z[j][i] - z[j - 1][i]) / k;
      dvals[j] = mass->quadratic_form(diff);
    }
    const double h1_part =
        std::sqrt(trapezoid_time_integral(vals, tg) + trapezoid_time_integral(dvals, tg));
    return u_part + h1_part;
  }
};

inline FieldHistory history_difference(const FieldHistory& a, const FieldHistory& b) {
  FieldHistory d(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    d[j].resize(a[j].size());
    for (std::size_t i = 0; i < a[j].size(); ++i) d[j][i] = a[j][i] - b[j][i];
  }
  return d;
}

} // namespace hyperwave
