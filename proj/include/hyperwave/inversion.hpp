#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "assembly.hpp"
#include "errors.hpp"
#include "forward.hpp"
#include "norms.hpp"
#include "observation.hpp"
#include "rng.hpp"
#include "sensitivity.hpp"

namespace hyperwave {

struct LandweberConfig {
  double omega = 10.0;
  int max_iter = 50;
  double tol = 1e-12;        // absolute, on the squared-residual trace delta_i
  double tau = 0.0;          // > 2 enables the discrepancy principle
  double noise_delta = 0.0;  // relative noise level used for data generation
  double noise_norm_abs = 0.0; // absolute noise norm in the residual norm (for stopping)
  std::uint64_t seed = 0;
  bool project_nonneg = true;
};

struct RunRecord {
  std::vector<double> residuals; // delta_i per iteration (squared time-integrated norm)
  DictionaryCoeffs alpha;
  int iterations = 0;
  std::string stop_reason; // maxiter | tolerance | discrepancy
  double omega_used = 0.0;
};

/// Draw an i.i.d. standard normal perturbation and rescale it so the relative
/// discrete L^2(0,T) error equals delta exactly. Works for both nodal field
/// histories and sensor time series.
inline FieldHistory add_noise(const FieldHistory& data, double delta, std::uint64_t seed,
                              const TimeGrid& tg) {
  if (delta == 0.0) return data;
  if (delta < 0.0) throw std::invalid_argument("noise level must be nonnegative");
  const double base = l2t_norm(data, tg);
  if (base == 0.0) throw ZeroSignal();
  NormalSampler rng(seed);
  FieldHistory noise(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    noise[j].resize(data[j].size());
    for (double& v : noise[j]) v = rng.next();
  }
  const double nn = l2t_norm(noise, tg);
  const double s = delta * base / nn;
  FieldHistory out = data;
  for (std::size_t j = 0; j < out.size(); ++j) axpy(s, noise[j], out[j]);
  return out;
}

/// Discrepancy principle: stop once residual_norm <= tau * delta.
inline bool discrepancy_stop(double residual_norm, double delta, double tau) {
  if (!(tau > 2.0)) throw InvalidTau(tau);
  return residual_norm <= tau * delta;
}

namespace detail {

/// gamma = trapezoid-in-time of the gradient matrices G(U^j, P^j).
inline DictionaryCoeffs time_integrated_gradient(const PlateMesh& mesh, const Material& mat,
                                                 const FieldHistory& U, const FieldHistory& P,
                                                 const TimeGrid& tg) {
  DictionaryCoeffs gamma(mat.grid2.n, mat.grid3.n, 0.0);
  const int m = tg.steps;
  for (int j = 0; j <= m; ++j) {
    const double w = tg.dt() * ((j == 0 || j == m) ? 0.5 : 1.0);
    const DictionaryCoeffs G = gradient_matrix(mesh, mat, U[j], P[j]);
    for (std::size_t q = 0; q < gamma.v.size(); ++q) gamma.v[q] += w * G.v[q];
  }
  return gamma;
}

struct LandweberState {
  RunRecord rec;
  std::shared_ptr<const SparsityPattern> pattern;
  SparseMatrix M;
};

inline void validate_landweber(const LandweberConfig& cfg) {
  if (!(cfg.omega > 0.0)) throw std::invalid_argument("relaxation omega must be positive");
  if (cfg.tau != 0.0 && !(cfg.tau > 2.0)) throw InvalidTau(cfg.tau);
}

} // namespace detail

/// Attenuated Landweber iteration on sensor data (IP II), Algorithm flavour:
/// alpha starts at 1; each iteration runs the forward solver, measures the
/// sensor residual, sweeps the adjoint and updates alpha_rs += omega * gamma_rs.
inline RunRecord landweber_sensor(const PlateMesh& mesh, const Material& mat,
                                  const SensorArray& sensors, const TimeGrid& tg,
                                  const FieldHistory& force, const FieldHistory& y,
                                  const LandweberConfig& cfg, const SolverConfig& scfg) {
  detail::validate_landweber(cfg);
  if (static_cast<int>(y.size()) != tg.steps + 1)
    throw LengthMismatch(y.size(), static_cast<std::size_t>(tg.steps) + 1);

  auto pattern = build_dof_pattern(mesh);
  const SparseMatrix M = assemble_mass(mesh, pattern);

  RunRecord rec;
  rec.omega_used = cfg.omega;
  rec.alpha = DictionaryCoeffs(mat.grid2.n, mat.grid3.n, 1.0);
  rec.stop_reason = "maxiter";

  for (int i = 1; i <= cfg.max_iter; ++i) {
    const ForwardResult fw = forward(mesh, mat, rec.alpha, tg, force, scfg, pattern, &M);
    FieldHistory w(tg.steps + 1);
    for (int j = 0; j <= tg.steps; ++j) {
      w[j] = observe(sensors, fw.u[j]);
      for (int s = 0; s < sensors.count; ++s) w[j][s] -= y[j][s];
    }
    const double delta_i = l2t_norm_sq(w, tg);
    rec.residuals.push_back(delta_i);
    rec.iterations = i;
    if (cfg.tau > 0.0 && discrepancy_stop(std::sqrt(delta_i), cfg.noise_norm_abs, cfg.tau)) {
      rec.stop_reason = "discrepancy";
      break;
    }
    if (delta_i <= cfg.tol) {
      rec.stop_reason = "tolerance";
      break;
    }
    const FieldHistory P = adjoint_sensor(mesh, mat, rec.alpha, w, fw.u, sensors, tg, scfg, pattern, &M);
    const DictionaryCoeffs gamma = detail::time_integrated_gradient(mesh, mat, fw.u, P, tg);
    for (std::size_t q = 0; q < rec.alpha.v.size(); ++q) rec.alpha.v[q] += cfg.omega * gamma.v[q];
    if (cfg.project_nonneg) rec.alpha.clamp_nonnegative();
  }
  return rec;
}

/// Attenuated Landweber iteration on the full displacement field (IP I):
/// dual loads W^j = M (U^j - Udata^j), residual in the discrete L^2(0,T;H) norm.
inline RunRecord landweber_full(const PlateMesh& mesh, const Material& mat, const TimeGrid& tg,
                                const FieldHistory& force, const FieldHistory& u_data,
                                const LandweberConfig& cfg, const SolverConfig& scfg) {
  detail::validate_landweber(cfg);
  if (static_cast<int>(u_data.size()) != tg.steps + 1)
    throw LengthMismatch(u_data.size(), static_cast<std::size_t>(tg.steps) + 1);

  auto pattern = build_dof_pattern(mesh);
  const SparseMatrix M = assemble_mass(mesh, pattern);

  RunRecord rec;
  rec.omega_used = cfg.omega;
  rec.alpha = DictionaryCoeffs(mat.grid2.n, mat.grid3.n, 1.0);
  rec.stop_reason = "maxiter";

  const int L = mesh.dof_count();
  for (int i = 1; i <= cfg.max_iter; ++i) {
    const ForwardResult fw = forward(mesh, mat, rec.alpha, tg, force, scfg, pattern, &M);
    FieldHistory W = zero_history(tg.steps + 1, L);
    std::vector<double> level_sq(tg.steps + 1);
    std::vector<double> diff(L);
    for (int j = 0; j <= tg.steps; ++j) {
      for (int q = 0; q < L; ++q) diff[q] = fw.u[j][q] - u_data[j][q];
      M.multiply(diff, W[j]);
      level_sq[j] = dot(diff, W[j]); // (U - Udata)' M (U - Udata)
    }
    const double delta_i = trapezoid_time_integral(level_sq, tg);
    rec.residuals.push_back(delta_i);
    rec.iterations = i;
    if (cfg.tau > 0.0 && discrepancy_stop(std::sqrt(delta_i), cfg.noise_norm_abs, cfg.tau)) {
      rec.stop_reason = "discrepancy";
      break;
    }
    if (delta_i <= cfg.tol) {
      rec.stop_reason = "tolerance";
      break;
    }
    const FieldHistory P = adjoint_full(mesh, mat, rec.alpha, W, fw.u, tg, scfg, pattern, &M);
    const DictionaryCoeffs gamma = detail::time_integrated_gradient(mesh, mat, fw.u, P, tg);
    for (std::size_t q = 0; q < rec.alpha.v.size(); ++q) rec.alpha.v[q] += cfg.omega * gamma.v[q];
    if (cfg.project_nonneg) rec.alpha.clamp_nonnegative();
  }
  return rec;
}

/// Tangential cone ratio ||T(ab) - T(a) - T'(a)(ab - a)|| / ||T(ab) - T(a)||
/// in the discrete L^2(0,T;U) + H^1(0,T;H) norm.
inline double cone_ratio(const PlateMesh& mesh, const Material& mat, const TimeGrid& tg,
                         const FieldHistory& force, const DictionaryCoeffs& alpha,
                         const DictionaryCoeffs& alpha_bar, const SolverConfig& scfg,
                         const ForwardResult* fw_alpha = nullptr) {
  auto pattern = build_dof_pattern(mesh);
  const SparseMatrix M = assemble_mass(mesh, pattern);
  const SparseMatrix G = assemble_gradgrad(mesh, pattern);
  const SpaceTimeNorm norm{&M, &G, tg};

  ForwardResult fw_own;
  if (!fw_alpha) {
    fw_own = forward(mesh, mat, alpha, tg, force, scfg, pattern, &M);
    fw_alpha = &fw_own;
  }
  const ForwardResult fw_bar = forward(mesh, mat, alpha_bar, tg, force, scfg, pattern, &M);

  DictionaryCoeffs h(mat.grid2.n, mat.grid3.n, 0.0);
  for (std::size_t q = 0; q < h.v.size(); ++q) h.v[q] = alpha_bar.v[q] - alpha.v[q];
  const FieldHistory V = derivative_apply(mesh, mat, alpha, h, fw_alpha->u, tg, scfg, pattern, &M);

  FieldHistory utilde = history_difference(fw_bar.u, fw_alpha->u);
  const double denom = norm(utilde);
  if (denom < 1e-14) throw DegenerateDenominator(denom);
  FieldHistory d = utilde;
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t q = 0; q < d[j].size(); ++q) d[j][q] -= V[j][q];
  return norm(d) / denom;
}

} // namespace hyperwave
