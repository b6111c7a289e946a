#pragma once

#include <string>
#include <vector>

#include "assembly.hpp"
#include "cg.hpp"
#include "mesh.hpp"
#include "vecops.hpp"

namespace hyperwave {

struct TimeGrid {
  double horizon; // T
  int steps;      // m
  double theta;   // in [0, 1]

  TimeGrid(double T, int m, double th = 0.5) : horizon(T), steps(m), theta(th) {
    if (m < 1 || !(T > 0.0)) throw std::invalid_argument("time grid needs m >= 1 and T > 0");
    if (th < 0.0 || th > 1.0) throw std::invalid_argument("theta must lie in [0, 1]");
  }

  double dt() const { return horizon / steps; }
  double time(int j) const { return horizon * static_cast<double>(j) / steps; }
};

/// Time-indexed nodal coefficient vectors, levels j = 0..m.
using FieldHistory = std::vector<std::vector<double>>;

inline FieldHistory zero_history(int levels, int len) {
  return FieldHistory(levels, std::vector<double>(len, 0.0));
}

enum class BoundaryMode { free_boundary, clamped_all };

struct SolverConfig {
  double density = 1.0;       // rho
  double newton_tol = 1e-10;  // absolute tol is newton_tol * (1 + ||MF^j||)
  int newton_max_iter = 20;
  CgConfig cg{};
  BoundaryMode boundary = BoundaryMode::free_boundary;
};

struct ForwardResult {
  FieldHistory u;  // U^j
  FieldHistory mr; // mass-weighted velocities MR^j
  std::vector<int> newton_iters;                 // per time step
  std::vector<std::vector<double>> newton_residuals; // per time step, per iterate
};

namespace detail {

inline std::vector<unsigned char> dirichlet_mask(const PlateMesh& mesh, BoundaryMode mode) {
  std::vector<unsigned char> mask(mesh.dof_count(), 0);
  if (mode == BoundaryMode::clamped_all)
    for (int n = 0; n < mesh.node_count(); ++n)
      if (mesh.node_on_boundary[n])
        for (int c = 0; c < 3; ++c) mask[3 * n + c] = 1;
  return mask;
}

inline void zero_constrained(std::vector<double>& v, const std::vector<unsigned char>& mask) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mask[i]) v[i] = 0.0;
}

} // namespace detail

/// Theta-method time stepping of the split system with an inner Newton
/// iteration per step. Starts from U^0 = 0, MR^0 = 0; `force` holds the
/// premultiplied load vectors MF^j for j = 0..m.
inline ForwardResult forward(const PlateMesh& mesh, const Material& mat, const DictionaryCoeffs& alpha,
                             const TimeGrid& tg, const FieldHistory& force, const SolverConfig& cfg,
                             std::shared_ptr<const SparsityPattern> pattern = nullptr,
                             const SparseMatrix* mass = nullptr) {
  const int L = mesh.dof_count();
  const int m = tg.steps;
  if (static_cast<int>(force.size()) != m + 1)
    throw LengthMismatch(force.size(), static_cast<std::size_t>(m) + 1);

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

  ForwardResult out;
  out.u = zero_history(m + 1, L);
  out.mr = zero_history(m + 1, L);
  out.newton_iters.assign(m, 0);
  out.newton_residuals.resize(m);

  std::vector<double> residual(L), tmp(L), rhs(L), delta(L);

  for (int j = 1; j <= m; ++j) {
    const auto& Uprev = out.u[j - 1];
    const auto& MRprev = out.mr[j - 1];
    std::vector<double> Ucur = Uprev; // U^{j,0} = U^{j-1}
    const double tol = cfg.newton_tol * (1.0 + norm2(force[j]));

    std::vector<double> D;
    bool converged = false;
    int l = 0;
    for (; l <= cfg.newton_max_iter; ++l) {
      // F_h(U^{j,l}) = M (U - U^{j-1}) - k MR^{j-1} + (k^2 th / rho) D(u_l^j, u^{j-1})
      //               - (k^2 th^2 / rho) MF^j - (k^2 th (1-th) / rho) MF^{j-1}
      D = assemble_internal_force(mesh, mat, alpha, Ucur, Uprev, th);
      for (int i = 0; i < L; ++i) tmp[i] = Ucur[i] - Uprev[i];
      M.multiply(tmp, residual);
      for (int i = 0; i < L; ++i)
        residual[i] += -k * MRprev[i] + (k * k * th / rho) * D[i] -
                       (k * k * th * th / rho) * force[j][i] -
                       (k * k * th * (1.0 - th) / rho) * force[j - 1][i];
      if (clamped) detail::zero_constrained(residual, mask);
      const double rnorm = norm2(residual);
      out.newton_residuals[j - 1].push_back(rnorm);
      if (rnorm <= tol) {
        converged = true;
        break;
      }
      if (l == cfg.newton_max_iter) break;

      SparseMatrix A = assemble_tangent(mesh, mat, alpha, Ucur, Uprev, th, pattern);
      SparseMatrix K = M.plus_scaled(k * k * th * th / rho, A);
      for (int i = 0; i < L; ++i) rhs[i] = -residual[i];
      if (clamped) {
        K.apply_dirichlet(mask);
        detail::zero_constrained(rhs, mask);
      }
      std::fill(delta.begin(), delta.end(), 0.0);
      CgResult sol = cg_solve(K, rhs, delta, cfg.cg);
      axpy(1.0, sol.x, Ucur);
    }
    if (!converged) throw NewtonDiverged(j, l, out.newton_residuals[j - 1].back());
    out.newton_iters[j - 1] = l;
    out.u[j] = Ucur;

    // MR^j = MR^{j-1} - (k/rho) D(u^j, u^{j-1}) + (k th / rho) MF^j + (k (1-th)/rho) MF^{j-1}
    auto& MRj = out.mr[j];
    for (int i = 0; i < L; ++i)
      MRj[i] = MRprev[i] - (k / rho) * D[i] + (k * th / rho) * force[j][i] +
               (k * (1.0 - th) / rho) * force[j - 1][i];
    if (clamped) detail::zero_constrained(MRj, mask); // drop reaction terms
  }
  return out;
}

} // namespace hyperwave
