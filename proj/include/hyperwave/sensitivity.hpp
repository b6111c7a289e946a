#pragma once

#include <vector>

#include "assembly.hpp"
#include "cg.hpp"
#include "forward.hpp"
#include "observation.hpp"

namespace hyperwave {

/// Directional derivative v = T'(alpha) h of the forward map: the same
/// theta-scheme as the forward solver with the tangent frozen at the forward
/// states and the h-weighted internal force as right-hand side. This is the
/// exact derivative of the discrete forward map (up to solver tolerances),
/// so it is linear in h with quadratic Taylor remainder.
inline FieldHistory derivative_apply(const PlateMesh& mesh, const Material& mat,
                                     const DictionaryCoeffs& alpha, const DictionaryCoeffs& h,
                                     const FieldHistory& U, const TimeGrid& tg, const SolverConfig& cfg,
                                     std::shared_ptr<const SparsityPattern> pattern = nullptr,
                                     const SparseMatrix* mass = nullptr) {
  const int L = mesh.dof_count();
  const int m = tg.steps;
  if (static_cast<int>(U.size()) != m + 1) throw LengthMismatch(U.size(), static_cast<std::size_t>(m) + 1);

  if (!pattern) pattern = build_dof_pattern(mesh);
  SparseMatrix Mown;
  if (!mass) {
    Mown = assemble_mass(mesh, pattern);
    mass = &Mown;
  }
  const SparseMatrix& M = *mass;

  const double k = tg.dt();
  const double th = tg.theta;
  const double rho = cfg.density;
  const auto mask = detail::dirichlet_mask(mesh, cfg.boundary);
  const bool clamped = cfg.boundary == BoundaryMode::clamped_all;

  FieldHistory V = zero_history(m + 1, L);
  std::vector<double> MS(L, 0.0); // derivative of the mass-weighted velocity
  std::vector<double> rhs(L), tmp(L);

  for (int j = 1; j <= m; ++j) {
    SparseMatrix A = assemble_tangent(mesh, mat, alpha, U[j], U[j - 1], th, pattern);
    const std::vector<double> G = assemble_direction_force(mesh, mat, h, U[j], U[j - 1], th);

    // [M + (k^2 th^2/rho) A] V^j = M V^{j-1} + k MS^{j-1}
    //                              - (k^2 th (1-th)/rho) A V^{j-1} - (k^2 th/rho) G
    M.multiply(V[j - 1], rhs);
    A.multiply(V[j - 1], tmp);
    for (int i = 0; i < L; ++i)
      rhs[i] += k * MS[i] - (k * k * th * (1.0 - th) / rho) * tmp[i] - (k * k * th / rho) * G[i];

    SparseMatrix K = M.plus_scaled(k * k * th * th / rho, A);
    if (clamped) {
      K.apply_dirichlet(mask);
      detail::zero_constrained(rhs, mask);
    }
    CgResult sol = cg_solve(K, rhs, V[j - 1], cfg.cg);
    V[j] = std::move(sol.x);

    // MS^j = MS^{j-1} - (k/rho) [A (th V^j + (1-th) V^{j-1}) + G]
    const std::vector<double> Vblend = blend(th, V[j], 1.0 - th, V[j - 1]);
    A.multiply(Vblend, tmp);
    for (int i = 0; i < L; ++i) MS[i] -= (k / rho) * (tmp[i] + G[i]);
    if (clamped) detail::zero_constrained(MS, mask);
  }
  return V;
}

/// Backward adjoint sweep for full-field data: terminal values P^m = 0,
/// MQ^m = 0, then for j = m-1..0 solve
///   S0 P^j = S1 P^{j+1} + k M Q^{j+1} + (k^2 th^2/rho) W^j + (k^2 (1-th) th/rho) W^{j+1}
/// with S0 = M + (k^2 th^2/rho) A(u^j, u^{j+1}), S1 = M - (k^2 (1-th) th/rho) A.
inline FieldHistory adjoint_full(const PlateMesh& mesh, const Material& mat,
                                 const DictionaryCoeffs& alpha, const FieldHistory& W,
                                 const FieldHistory& U, const TimeGrid& tg, const SolverConfig& cfg,
                                 std::shared_ptr<const SparsityPattern> pattern = nullptr,
                                 const SparseMatrix* mass = nullptr) {
  const int L = mesh.dof_count();
  const int m = tg.steps;
  if (static_cast<int>(W.size()) != m + 1) throw LengthMismatch(W.size(), static_cast<std::size_t>(m) + 1);
  if (static_cast<int>(U.size()) != m + 1) throw LengthMismatch(U.size(), static_cast<std::size_t>(m) + 1);

  if (!pattern) pattern = build_dof_pattern(mesh);
  SparseMatrix Mown;
  if (!mass) {
    Mown = assemble_mass(mesh, pattern);
    mass = &Mown;
  }
  const SparseMatrix& M = *mass;

  const double k = tg.dt();
  const double th = tg.theta;
  const double rho = cfg.density;
  const auto mask = detail::dirichlet_mask(mesh, cfg.boundary);
  const bool clamped = cfg.boundary == BoundaryMode::clamped_all;

  FieldHistory P = zero_history(m + 1, L);
  std::vector<double> MQ(L, 0.0);
  std::vector<double> rhs(L), tmp(L);

  for (int j = m - 1; j >= 0; --j) {
    SparseMatrix A = assemble_tangent(mesh, mat, alpha, U[j], U[j + 1], th, pattern);
    SparseMatrix S0 = M.plus_scaled(k * k * th * th / rho, A);

    // rhs = S1 P^{j+1} + k MQ^{j+1} + load terms, with S1 applied as M - c A
    M.multiply(P[j + 1], rhs);
    A.multiply(P[j + 1], tmp);
    for (int i = 0; i < L; ++i)
      rhs[i] += -(k * k * (1.0 - th) * th / rho) * tmp[i] + k * MQ[i] +
                (k * k * th * th / rho) * W[j][i] + (k * k * (1.0 - th) * th / rho) * W[j + 1][i];

    if (clamped) {
      S0.apply_dirichlet(mask);
      detail::zero_constrained(rhs, mask);
    }
    CgResult sol = cg_solve(S0, rhs, P[j + 1], cfg.cg);
    P[j] = std::move(sol.x);

    // MQ^j = MQ^{j+1} - (k th/rho) A P^j - (k (1-th)/rho) A P^{j+1} + load terms
    const std::vector<double> Pblend = blend(th, P[j], 1.0 - th, P[j + 1]);
    A.multiply(Pblend, tmp);
    for (int i = 0; i < L; ++i)
      MQ[i] += -(k / rho) * tmp[i] + (k * th / rho) * W[j][i] + (k * (1.0 - th) / rho) * W[j + 1][i];
    if (clamped) detail::zero_constrained(MQ, mask);
  }
  return P;
}

/// Sensor-data adjoint: identical to adjoint_full with W^j := M_bdry G-bar' w^j.
inline FieldHistory adjoint_sensor(const PlateMesh& mesh, const Material& mat,
                                   const DictionaryCoeffs& alpha, const FieldHistory& Wsens,
                                   const FieldHistory& U, const SensorArray& sensors,
                                   const TimeGrid& tg, const SolverConfig& cfg,
                                   std::shared_ptr<const SparsityPattern> pattern = nullptr,
                                   const SparseMatrix* mass = nullptr) {
  FieldHistory W(Wsens.size());
  for (std::size_t j = 0; j < Wsens.size(); ++j) W[j] = observe_adjoint(sensors, Wsens[j]);
  return adjoint_full(mesh, mat, alpha, W, U, tg, cfg, std::move(pattern), mass);
}

} // namespace hyperwave
