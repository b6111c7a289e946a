#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "forward.hpp"
#include "material.hpp"
#include "mesh.hpp"

namespace hyperwave {

struct DamageSquare {
  double center2 = 0.0;
  double center3 = 0.0;
  double side = 1.0;
  double value = 0.5; // damaged coefficient value
};

struct Scenario {
  std::string name;
  std::vector<DamageSquare> squares;
};

/// Damage scenarios A, B, C: cylindrical damages with unit-square base.
inline Scenario build_scenario(const std::string& name, double side = 1.0, double value = 0.5) {
  Scenario s;
  s.name = name;
  if (name == "A") {
    s.squares = {{-1.5, 1.5, side, value}};
  } else if (name == "B") {
    s.squares = {{5.5, 5.5, side, value}, {-1.5, -10.5, side, value}};
  } else if (name == "C") {
    s.squares = {{-1.5, -4.5, side, value}, {5.5, 5.5, side, value}};
  } else {
    throw UnknownScenario(name);
  }
  return s;
}

/// alpha_true: 1 everywhere except knots falling inside a damage square.
inline DictionaryCoeffs scenario_coefficients(const Scenario& s, const SplineGrid& g2,
                                              const SplineGrid& g3) {
  DictionaryCoeffs alpha(g2.n, g3.n, 1.0);
  for (int i = 0; i <= g2.n; ++i)
    for (int j = 0; j <= g3.n; ++j) {
      const double x2 = g2.knot(i), x3 = g3.knot(j);
      for (const auto& sq : s.squares)
        if (std::abs(x2 - sq.center2) <= 0.5 * sq.side && std::abs(x3 - sq.center3) <= 0.5 * sq.side)
          alpha(i, j) = sq.value;
    }
  return alpha;
}

struct ExcitationParams {
  double amplitude = 1.0;
  double pulse_width = 1.0;      // t_w: raised cosine support [0, t_w]
  double spatial_halfwidth = 1.0; // half-width of the f2, f3 hat factors
  double center2 = 0.0;
  double center3 = 0.0;
};

/// f_t(t) = A/2 (1 - cos(2 pi t / t_w)) on [0, t_w], zero afterwards.
inline double excitation_pulse(const ExcitationParams& p, double t) {
  if (t < 0.0 || t > p.pulse_width) return 0.0;
  return p.amplitude * 0.5 * (1.0 - std::cos(2.0 * M_PI * t / p.pulse_width));
}

/// Load vectors MF^j for the separable excitation
/// f = f_t(t) f2(x2) f3(x3) e_3 acting at the center of the plate:
/// the spatial load is assembled once by quadrature and scaled by f_t(t_j).
inline FieldHistory build_excitation(const PlateMesh& mesh, const TimeGrid& tg,
                                     const ExcitationParams& p) {
  if (!(p.spatial_halfwidth > 0.0)) throw InvalidWidth("spatial half-width must be positive");
  if (!(p.pulse_width > 0.0) || p.pulse_width > tg.horizon)
    throw InvalidWidth("pulse width must lie in (0, T]");

  const auto hat = [](double x, double c, double w) {
    return std::max(0.0, 1.0 - std::abs(x - c) / w);
  };

  std::vector<double> spatial(mesh.dof_count(), 0.0);
  for (int e = 0; e < mesh.elem_count(); ++e) {
    const auto& conn = mesh.elems[e];
    for (int k = 0; k < 8; ++k) {
      const QuadraturePoint qp = mesh.quadrature_point(e, k);
      const double f23 = hat(qp.xphys[1], p.center2, p.spatial_halfwidth) *
                         hat(qp.xphys[2], p.center3, p.spatial_halfwidth);
      if (f23 == 0.0) continue;
      for (int a = 0; a < 8; ++a)
        spatial[3 * conn[a] + 2] += qp.weight * f23 * mesh.shape_val[k][a];
    }
  }

  FieldHistory force(tg.steps + 1);
  for (int j = 0; j <= tg.steps; ++j) {
    const double ft = excitation_pulse(p, tg.time(j));
    force[j].assign(mesh.dof_count(), 0.0);
    if (ft != 0.0)
      for (std::size_t i = 0; i < spatial.size(); ++i) force[j][i] = ft * spatial[i];
  }
  return force;
}

} // namespace hyperwave
