#pragma once

#include <array>
#include <vector>

#include "material.hpp"
#include "mesh.hpp"
#include "sparse.hpp"
#include "vecops.hpp"

namespace hyperwave {

namespace detail {

/// Jphi for local dof (node a, component c): e_c (x) grad phi_a.
inline Mat3 basis_gradient(const std::array<double, 3>& g, int c) {
  Mat3 m;
  m(c, 0) = g[0];
  m(c, 1) = g[1];
  m(c, 2) = g[2];
  return m;
}

/// Dictionary weighting mode for the internal force assembly.
struct AlphaWeight {
  const DictionaryCoeffs* coeffs;
  double operator()(const Material& mat, double x2, double x3, bool in_layer) const {
    return dict_weight(mat.grid2, mat.grid3, *coeffs, x2, x3, in_layer);
  }
};

/// Direction weighting: sum_rs h_rs b_r b_s inside the layers, 0 in the bulk
/// (the bulk does not depend on the dictionary coefficients).
struct DirectionWeight {
  const DictionaryCoeffs* coeffs;
  double operator()(const Material& mat, double x2, double x3, bool in_layer) const {
    if (!in_layer) return 0.0;
    return dict_weight(mat.grid2, mat.grid3, *coeffs, x2, x3, true);
  }
};

template <class Weight>
std::vector<double> assemble_force_impl(const PlateMesh& mesh, const Material& mat, Weight weight,
                                        const std::vector<double>& U_a, const std::vector<double>& U_b,
                                        double theta) {
  const std::vector<double> Ublend = blend(theta, U_a, 1.0 - theta, U_b);
  std::vector<double> D(mesh.dof_count(), 0.0);
  std::array<double, 24> local{};
  for (int e = 0; e < mesh.elem_count(); ++e) {
    local.fill(0.0);
    const bool in_layer = mesh.elem_in_layer[e] != 0;
    for (int k = 0; k < 8; ++k) {
      const QuadraturePoint qp = mesh.quadrature_point(e, k);
      const Mat3 Y = eval_gradient(mesh, Ublend, qp);
      const double detF = (Y + Mat3::identity()).det();
      if (!(detF > 0.0)) throw NonPositiveJacobian(detF, e, k);
      const double w = qp.weight * weight(mat, qp.xphys[1], qp.xphys[2], in_layer);
      if (w == 0.0) continue;
      const Mat3 S = stress(mat.params, Y);
      const auto& grads = mesh.shape_grad[k];
      for (int b = 0; b < 8; ++b)
        for (int cj = 0; cj < 3; ++cj) {
          double s = 0.0;
          for (int d = 0; d < 3; ++d) s += S(cj, d) * grads[b][d];
          local[3 * b + cj] += w * s;
        }
    }
    const auto& conn = mesh.elems[e];
    for (int b = 0; b < 8; ++b)
      for (int cj = 0; cj < 3; ++cj) D[3 * conn[b] + cj] += local[3 * b + cj];
  }
  return D;
}

} // namespace detail

/// Tangent matrix A_rs = integral of w_alpha(x) (grad_Y grad_Y C(Y) : Jphi_r) : Jphi_s
/// at the blended state Y = theta Ju_a + (1-theta) Ju_b. Bit-exactly symmetric:
/// the local block is computed on the upper triangle and mirrored.
inline SparseMatrix assemble_tangent(const PlateMesh& mesh, const Material& mat,
                                     const DictionaryCoeffs& alpha, const std::vector<double>& U_a,
                                     const std::vector<double>& U_b, double theta,
                                     std::shared_ptr<const SparsityPattern> pattern = nullptr) {
  if (!pattern) pattern = build_dof_pattern(mesh);
  SparseMatrix A(pattern, true);
  const std::vector<double> Ublend = blend(theta, U_a, 1.0 - theta, U_b);
  std::array<std::array<double, 24>, 24> local{};
  std::array<Mat3, 24> tangents;
  for (int e = 0; e < mesh.elem_count(); ++e) {
    for (auto& row : local) row.fill(0.0);
    const bool in_layer = mesh.elem_in_layer[e] != 0;
    for (int k = 0; k < 8; ++k) {
      const QuadraturePoint qp = mesh.quadrature_point(e, k);
      const Mat3 Y = eval_gradient(mesh, Ublend, qp);
      const double detF = (Y + Mat3::identity()).det();
      if (!(detF > 0.0)) throw NonPositiveJacobian(detF, e, k);
      const double w = qp.weight * dict_weight(mat.grid2, mat.grid3, alpha, qp.xphys[1], qp.xphys[2], in_layer);
      if (w == 0.0) continue;
      const auto& grads = mesh.shape_grad[k];
      for (int a = 0; a < 8; ++a)
        for (int ci = 0; ci < 3; ++ci)
          tangents[3 * a + ci] = tangent_apply(mat.params, Y, detail::basis_gradient(grads[a], ci));
      for (int r = 0; r < 24; ++r) {
        const Mat3& T = tangents[r];
        for (int s = r; s < 24; ++s) {
          const int b = s / 3, cj = s % 3;
          double v = 0.0;
          for (int d = 0; d < 3; ++d) v += T(cj, d) * grads[b][d];
          local[r][s] += w * v;
        }
      }
    }
    for (int r = 0; r < 24; ++r)
      for (int s = 0; s < r; ++s) local[r][s] = local[s][r];
    const auto& conn = mesh.elems[e];
    for (int r = 0; r < 24; ++r) {
      const int gr = 3 * conn[r / 3] + r % 3;
      for (int s = 0; s < 24; ++s) A.add_at(gr, 3 * conn[s / 3] + s % 3, local[r][s]);
    }
  }
  return A;
}

/// Internal force D_s = integral of w_alpha(x) grad_Y C(Y) : Jphi_s at the blended state.
inline std::vector<double> assemble_internal_force(const PlateMesh& mesh, const Material& mat,
                                                   const DictionaryCoeffs& alpha,
                                                   const std::vector<double>& U_a,
                                                   const std::vector<double>& U_b, double theta) {
  return detail::assemble_force_impl(mesh, mat, detail::AlphaWeight{&alpha}, U_a, U_b, theta);
}

/// Internal force weighted by a coefficient direction h, supported on the
/// layers only: entries sum_rs h_rs integral of b_r b_s grad_Y C(Y) : Jphi_s.
inline std::vector<double> assemble_direction_force(const PlateMesh& mesh, const Material& mat,
                                                    const DictionaryCoeffs& h,
                                                    const std::vector<double>& U_a,
                                                    const std::vector<double>& U_b, double theta) {
  return detail::assemble_force_impl(mesh, mat, detail::DirectionWeight{&h}, U_a, U_b, theta);
}

/// All dictionary gradient integrals at one time level:
/// G_rs = integral over layer elements of b_r(x2) b_s(x3) grad_Y C(Ju) : Jp.
inline DictionaryCoeffs gradient_matrix(const PlateMesh& mesh, const Material& mat,
                                        const std::vector<double>& U, const std::vector<double>& P) {
  DictionaryCoeffs G(mat.grid2.n, mat.grid3.n, 0.0);
  for (int e = 0; e < mesh.elem_count(); ++e) {
    if (!mesh.elem_in_layer[e]) continue;
    for (int k = 0; k < 8; ++k) {
      const QuadraturePoint qp = mesh.quadrature_point(e, k);
      const Mat3 Y = eval_gradient(mesh, U, qp);
      const double detF = (Y + Mat3::identity()).det();
      if (!(detF > 0.0)) throw NonPositiveJacobian(detF, e, k);
      const Mat3 Jp = eval_gradient(mesh, P, qp);
      const double val = qp.weight * ddot(stress(mat.params, Y), Jp);
      const int c2 = mat.grid2.cell_of(qp.xphys[1]);
      const int c3 = mat.grid3.cell_of(qp.xphys[2]);
      for (int i = c2; i <= c2 + 1; ++i) {
        const double bi = bspline_eval(mat.grid2, i, qp.xphys[1]);
        if (bi == 0.0) continue;
        for (int j = c3; j <= c3 + 1; ++j) G(i, j) += val * bi * bspline_eval(mat.grid3, j, qp.xphys[2]);
      }
    }
  }
  return G;
}

/// Single (r, s) entry of the adjoint gradient integrand at one time level.
inline double gradient_entry(const PlateMesh& mesh, const Material& mat, int r, int s,
                             const std::vector<double>& U, const std::vector<double>& P) {
  double z = 0.0;
  for (int e = 0; e < mesh.elem_count(); ++e) {
    if (!mesh.elem_in_layer[e]) continue;
    for (int k = 0; k < 8; ++k) {
      const QuadraturePoint qp = mesh.quadrature_point(e, k);
      const double brs =
          dict_gradient_weight(mat.grid2, mat.grid3, r, s, qp.xphys[1], qp.xphys[2], true);
      if (brs == 0.0) continue;
      const Mat3 Y = eval_gradient(mesh, U, qp);
      const double detF = (Y + Mat3::identity()).det();
      if (!(detF > 0.0)) throw NonPositiveJacobian(detF, e, k);
      const Mat3 Jp = eval_gradient(mesh, P, qp);
      z += qp.weight * brs * ddot(stress(mat.params, Y), Jp);
    }
  }
  return z;
}

} // namespace hyperwave
