#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "sparse.hpp"
#include "vecops.hpp"

namespace hyperwave {

struct CgConfig {
  double rel_tol = 1e-12;
  int max_iter = 0; // 0 -> 10 * dimension
};

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double residual_norm = 0.0; // recomputed as ||Ax - b|| on exit
};

/// Conjugate gradients for a symmetric (positive definite) matrix.
/// Converges when ||Ax - b|| <= rel_tol * ||b||; the returned residual is
/// recomputed from scratch, not taken from the recurrence.
inline CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b,
                         const std::vector<double>& x0, double rel_tol, int max_iter) {
  const int n = A.dim();
  if (max_iter <= 0) max_iter = 10 * n;
  CgResult out;
  out.x = x0;
  out.x.resize(n, 0.0);

  std::vector<double> r(n), p(n), Ap(n);
  A.multiply(out.x, Ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];

  const double bnorm = norm2(b);
  const double threshold = rel_tol * bnorm;
  double rr = dot(r, r);

  if (std::sqrt(rr) <= threshold) {
    out.residual_norm = std::sqrt(rr);
    return out;
  }

  p = r;
  int it = 0;
  while (it < max_iter) {
    ++it;
    A.multiply(p, Ap);
    const double pAp = dot(p, Ap);
    if (pAp <= 0.0) throw IndefiniteMatrix(pAp);
    const double alpha = rr / pAp;
    axpy(alpha, p, out.x);
    axpy(-alpha, Ap, r);
    const double rr_new = dot(r, r);
    if (std::sqrt(rr_new) <= threshold) {
      // verify against the true residual before accepting
      A.multiply(out.x, Ap);
      for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
      const double true_norm = norm2(r);
      if (true_norm <= threshold) {
        out.iterations = it;
        out.residual_norm = true_norm;
        return out;
      }
      rr = dot(r, r);
      p = r; // restart from the true residual
      continue;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }

  A.multiply(out.x, Ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
  throw NotConverged(it, norm2(r));
}

inline CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b,
                         const std::vector<double>& x0, const CgConfig& cfg = {}) {
  return cg_solve(A, b, x0, cfg.rel_tol, cfg.max_iter);
}

} // namespace hyperwave
