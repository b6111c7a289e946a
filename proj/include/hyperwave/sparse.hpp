#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace hyperwave {

/// Compressed-row sparsity shared by all matrices assembled on one mesh,
/// so that M + c*A is a plain value-wise operation.
struct SparsityPattern {
  int dim = 0;
  std::vector<int> row_ptr; // dim + 1
  std::vector<int> cols;    // sorted within each row

  std::size_t nnz() const { return cols.size(); }

  /// Index of entry (r, c) in the value array; -1 if not present.
  int find(int r, int c) const {
    const int lo = row_ptr[r], hi = row_ptr[r + 1];
    auto it = std::lower_bound(cols.begin() + lo, cols.begin() + hi, c);
    if (it == cols.begin() + hi || *it != c) return -1;
    return static_cast<int>(it - cols.begin());
  }
};

/// CSR matrix over a shared pattern.
struct SparseMatrix {
  std::shared_ptr<const SparsityPattern> pattern;
  std::vector<double> vals;
  bool symmetric = false;

  SparseMatrix() = default;
  explicit SparseMatrix(std::shared_ptr<const SparsityPattern> p, bool sym = false)
      : pattern(std::move(p)), vals(pattern->nnz(), 0.0), symmetric(sym) {}

  int dim() const { return pattern ? pattern->dim : 0; }

  void set_zero() { std::fill(vals.begin(), vals.end(), 0.0); }

  void add_at(int r, int c, double v) {
    const int k = pattern->find(r, c);
    assert(k >= 0 && "entry outside sparsity pattern");
    vals[k] += v;
  }

  double at(int r, int c) const {
    const int k = pattern->find(r, c);
    return k >= 0 ? vals[k] : 0.0;
  }

  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    const auto& rp = pattern->row_ptr;
    const auto& cs = pattern->cols;
    y.assign(pattern->dim, 0.0);
    for (int r = 0; r < pattern->dim; ++r) {
      double s = 0.0;
      for (int k = rp[r]; k < rp[r + 1]; ++k) s += vals[k] * x[cs[k]];
      y[r] = s;
    }
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y;
    multiply(x, y);
    return y;
  }

  double quadratic_form(const std::vector<double>& x) const {
    const auto& rp = pattern->row_ptr;
    const auto& cs = pattern->cols;
    double q = 0.0;
    for (int r = 0; r < pattern->dim; ++r) {
      double s = 0.0;
      for (int k = rp[r]; k < rp[r + 1]; ++k) s += vals[k] * x[cs[k]];
      q += x[r] * s;
    }
    return q;
  }

  /// this + c * other, patterns must be shared.
  SparseMatrix plus_scaled(double c, const SparseMatrix& other) const {
    if (pattern != other.pattern) throw std::invalid_argument("pattern mismatch in matrix sum");
    SparseMatrix r(pattern, symmetric && other.symmetric);
    for (std::size_t k = 0; k < vals.size(); ++k) r.vals[k] = vals[k] + c * other.vals[k];
    return r;
  }

  double max_asymmetry() const {
    double m = 0.0;
    const auto& rp = pattern->row_ptr;
    const auto& cs = pattern->cols;
    for (int r = 0; r < pattern->dim; ++r)
      for (int k = rp[r]; k < rp[r + 1]; ++k) {
        const int c = cs[k];
        if (c < r) continue;
        const int kt = pattern->find(c, r);
        const double vt = kt >= 0 ? vals[kt] : 0.0;
        m = std::max(m, std::abs(vals[k] - vt));
      }
    return m;
  }

  /// Zero row and column of a constrained dof and put 1 on the diagonal.
  void apply_dirichlet(const std::vector<unsigned char>& constrained) {
    const auto& rp = pattern->row_ptr;
    const auto& cs = pattern->cols;
    for (int r = 0; r < pattern->dim; ++r) {
      const bool rc = constrained[r] != 0;
      for (int k = rp[r]; k < rp[r + 1]; ++k) {
        const int c = cs[k];
        if (rc || constrained[c]) vals[k] = (r == c) ? 1.0 : 0.0;
      }
    }
  }
};

/// Build a pattern from a per-row column list (columns get sorted, deduped).
inline std::shared_ptr<SparsityPattern> make_pattern(int dim, std::vector<std::vector<int>> row_cols) {
  auto p = std::make_shared<SparsityPattern>();
  p->dim = dim;
  p->row_ptr.assign(dim + 1, 0);
  for (int r = 0; r < dim; ++r) {
    auto& rc = row_cols[r];
    std::sort(rc.begin(), rc.end());
    rc.erase(std::unique(rc.begin(), rc.end()), rc.end());
    p->row_ptr[r + 1] = p->row_ptr[r] + static_cast<int>(rc.size());
  }
  p->cols.reserve(p->row_ptr[dim]);
  for (int r = 0; r < dim; ++r)
    p->cols.insert(p->cols.end(), row_cols[r].begin(), row_cols[r].end());
  return p;
}

} // namespace hyperwave
