#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "errors.hpp"
#include "mat3.hpp"
#include "sparse.hpp"

namespace hyperwave {

/// Which elements carry the spatial dictionary.
enum class LayerRule {
  outermost_x1, // the two element layers touching the x1-extreme faces
  all,
  none,
};

struct QuadraturePoint {
  int element = 0;
  int k = 0; // 0..7 within the element
  std::array<double, 3> xref{};
  std::array<double, 3> xphys{};
  double weight = 0.0; // gauss weight x |det J|
  bool in_layer = false;
};

struct BoundaryFace {
  int element = 0;
  int axis = 0;     // normal axis 0..2
  int side = 0;     // 0 = low face, 1 = high face
  std::array<int, 4> nodes{}; // global node ids, tensor order in the tangential axes
  double detj = 0.0;          // area element for the 2x2 face rule
};

/// Structured trilinear hexahedral mesh of the plate
/// [a1,b1] x [a2,b2] x [a3,b3] with lexicographic node numbering, x1 fastest.
/// Degrees of freedom interleave as dof = 3 * node + component.
struct PlateMesh {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  std::array<int, 3> cells{};
  std::array<double, 3> h{}; // spacing per axis

  std::vector<std::array<double, 3>> node_coords;
  std::vector<std::array<int, 8>> elems; // local node l = l1 + 2 l2 + 4 l3
  std::vector<std::uint8_t> elem_in_layer;
  std::vector<BoundaryFace> boundary_faces;
  std::vector<std::uint8_t> node_on_boundary;

  // Reference tables at the 8 Gauss points (identical for every element):
  // shape values and physical shape gradients.
  std::array<std::array<double, 8>, 8> shape_val{};            // [qp][local node]
  std::array<std::array<std::array<double, 3>, 8>, 8> shape_grad{}; // [qp][local node][axis]
  std::array<std::array<double, 3>, 8> qp_ref{};               // reference coords per qp
  double qp_weight = 0.0;                                      // gauss w x det J (uniform)

  int nodes_per_axis(int d) const { return cells[d] + 1; }
  int node_count() const { return nodes_per_axis(0) * nodes_per_axis(1) * nodes_per_axis(2); }
  int elem_count() const { return cells[0] * cells[1] * cells[2]; }
  int dof_count() const { return 3 * node_count(); }

  int node_id(int i1, int i2, int i3) const {
    return i1 + nodes_per_axis(0) * (i2 + nodes_per_axis(1) * i3);
  }
  std::array<int, 3> node_index(int id) const {
    const int n1 = nodes_per_axis(0), n2 = nodes_per_axis(1);
    return {id % n1, (id / n1) % n2, id / (n1 * n2)};
  }
  int elem_id(int e1, int e2, int e3) const { return e1 + cells[0] * (e2 + cells[1] * e3); }
  std::array<int, 3> elem_index(int id) const {
    return {id % cells[0], (id / cells[0]) % cells[1], id / (cells[0] * cells[1])};
  }

  QuadraturePoint quadrature_point(int e, int k) const {
    QuadraturePoint q;
    q.element = e;
    q.k = k;
    q.xref = qp_ref[k];
    const auto ei = elem_index(e);
    for (int d = 0; d < 3; ++d)
      q.xphys[d] = lo[d] + h[d] * (ei[d] + 0.5 * (q.xref[d] + 1.0));
    q.weight = qp_weight;
    q.in_layer = elem_in_layer[e] != 0;
    return q;
  }
};

/// Build the structured plate mesh; 2x2x2 Gauss quadrature tables included.
inline PlateMesh build_plate(const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                             const std::array<int, 3>& cells, LayerRule layers = LayerRule::outermost_x1) {
  for (int d = 0; d < 3; ++d) {
    if (!(hi[d] > lo[d])) throw DegenerateExtent("extent must satisfy hi > lo on axis " + std::to_string(d));
    if (cells[d] < 1) throw DegenerateExtent("cell count must be >= 1 on axis " + std::to_string(d));
  }
  PlateMesh m;
  m.lo = lo;
  m.hi = hi;
  m.cells = cells;
  for (int d = 0; d < 3; ++d) m.h[d] = (hi[d] - lo[d]) / cells[d];

  const int n1 = m.nodes_per_axis(0), n2 = m.nodes_per_axis(1), n3 = m.nodes_per_axis(2);
  m.node_coords.resize(static_cast<std::size_t>(n1) * n2 * n3);
  m.node_on_boundary.assign(m.node_coords.size(), 0);
  for (int i3 = 0; i3 < n3; ++i3)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int i1 = 0; i1 < n1; ++i1) {
        const int id = m.node_id(i1, i2, i3);
        m.node_coords[id] = {lo[0] + m.h[0] * i1, lo[1] + m.h[1] * i2, lo[2] + m.h[2] * i3};
        const bool bdry = i1 == 0 || i1 == n1 - 1 || i2 == 0 || i2 == n2 - 1 || i3 == 0 || i3 == n3 - 1;
        m.node_on_boundary[id] = bdry ? 1 : 0;
      }

  m.elems.resize(static_cast<std::size_t>(m.elem_count()));
  m.elem_in_layer.assign(m.elems.size(), 0);
  for (int e3 = 0; e3 < cells[2]; ++e3)
    for (int e2 = 0; e2 < cells[1]; ++e2)
      for (int e1 = 0; e1 < cells[0]; ++e1) {
        const int e = m.elem_id(e1, e2, e3);
        for (int l3 = 0; l3 < 2; ++l3)
          for (int l2 = 0; l2 < 2; ++l2)
            for (int l1 = 0; l1 < 2; ++l1)
              m.elems[e][l1 + 2 * l2 + 4 * l3] = m.node_id(e1 + l1, e2 + l2, e3 + l3);
        switch (layers) {
          case LayerRule::outermost_x1:
            m.elem_in_layer[e] = (e1 == 0 || e1 == cells[0] - 1) ? 1 : 0;
            break;
          case LayerRule::all: m.elem_in_layer[e] = 1; break;
          case LayerRule::none: m.elem_in_layer[e] = 0; break;
        }
      }

  // Boundary faces, ordered by (axis, side, tangential lexicographic).
  for (int axis = 0; axis < 3; ++axis) {
    const int ta = (axis + 1) % 3, tb = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      for (int eb = 0; eb < cells[tb]; ++eb)
        for (int ea = 0; ea < cells[ta]; ++ea) {
          std::array<int, 3> ei{};
          ei[axis] = side == 0 ? 0 : cells[axis] - 1;
          ei[ta] = ea;
          ei[tb] = eb;
          BoundaryFace f;
          f.element = m.elem_id(ei[0], ei[1], ei[2]);
          f.axis = axis;
          f.side = side;
          f.detj = (m.h[ta] / 2.0) * (m.h[tb] / 2.0);
          std::array<int, 3> ni{};
          ni[axis] = side == 0 ? ei[axis] : ei[axis] + 1;
          int c = 0;
          for (int lb = 0; lb < 2; ++lb)
            for (int la = 0; la < 2; ++la) {
              ni[ta] = ea + la;
              ni[tb] = eb + lb;
              f.nodes[c++] = m.node_id(ni[0], ni[1], ni[2]);
            }
          m.boundary_faces.push_back(f);
        }
    }
  }

  // 2x2x2 Gauss tables; all elements share the constant diagonal Jacobian.
  const double g = 1.0 / std::sqrt(3.0);
  for (int k3 = 0; k3 < 2; ++k3)
    for (int k2 = 0; k2 < 2; ++k2)
      for (int k1 = 0; k1 < 2; ++k1) {
        const int k = k1 + 2 * k2 + 4 * k3;
        const std::array<double, 3> xi = {k1 ? g : -g, k2 ? g : -g, k3 ? g : -g};
        m.qp_ref[k] = xi;
        for (int l3 = 0; l3 < 2; ++l3)
          for (int l2 = 0; l2 < 2; ++l2)
            for (int l1 = 0; l1 < 2; ++l1) {
              const int l = l1 + 2 * l2 + 4 * l3;
              const std::array<double, 3> s = {l1 ? 1.0 : -1.0, l2 ? 1.0 : -1.0, l3 ? 1.0 : -1.0};
              const std::array<double, 3> f = {0.5 * (1.0 + s[0] * xi[0]), 0.5 * (1.0 + s[1] * xi[1]),
                                               0.5 * (1.0 + s[2] * xi[2])};
              m.shape_val[k][l] = f[0] * f[1] * f[2];
              m.shape_grad[k][l][0] = (s[0] * 0.5) * f[1] * f[2] * (2.0 / m.h[0]);
              m.shape_grad[k][l][1] = f[0] * (s[1] * 0.5) * f[2] * (2.0 / m.h[1]);
              m.shape_grad[k][l][2] = f[0] * f[1] * (s[2] * 0.5) * (2.0 / m.h[2]);
            }
      }
  m.qp_weight = (m.h[0] * m.h[1] * m.h[2]) / 8.0;
  return m;
}

/// Displacement gradient Ju = (d_j u_i) at a quadrature point.
inline Mat3 eval_gradient(const PlateMesh& mesh, const std::vector<double>& U, const QuadraturePoint& qp) {
  Mat3 J;
  const auto& conn = mesh.elems[qp.element];
  const auto& grads = mesh.shape_grad[qp.k];
  for (int l = 0; l < 8; ++l) {
    const int base = 3 * conn[l];
    for (int i = 0; i < 3; ++i) {
      const double ui = U[base + i];
      for (int j = 0; j < 3; ++j) J(i, j) += ui * grads[l][j];
    }
  }
  return J;
}

/// Dof-level sparsity: two dofs couple iff their nodes share an element.
inline std::shared_ptr<SparsityPattern> build_dof_pattern(const PlateMesh& mesh) {
  const int nn = mesh.node_count();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(3) * nn);
  for (int id = 0; id < nn; ++id) {
    const auto idx = mesh.node_index(id);
    std::vector<int> cols;
    cols.reserve(81);
    for (int d3 = -1; d3 <= 1; ++d3)
      for (int d2 = -1; d2 <= 1; ++d2)
        for (int d1 = -1; d1 <= 1; ++d1) {
          const int j1 = idx[0] + d1, j2 = idx[1] + d2, j3 = idx[2] + d3;
          if (j1 < 0 || j2 < 0 || j3 < 0 || j1 >= mesh.nodes_per_axis(0) ||
              j2 >= mesh.nodes_per_axis(1) || j3 >= mesh.nodes_per_axis(2))
            continue;
          const int nb = mesh.node_id(j1, j2, j3);
          for (int c = 0; c < 3; ++c) cols.push_back(3 * nb + c);
        }
    for (int c = 0; c < 3; ++c) rows[3 * id + c] = cols;
  }
  return make_pattern(3 * nn, std::move(rows));
}

/// Mass matrix M_rs = <phi_r, phi_s>_H, block diagonal across components.
inline SparseMatrix assemble_mass(const PlateMesh& mesh,
                                  std::shared_ptr<const SparsityPattern> pattern = nullptr) {
  if (!pattern) pattern = build_dof_pattern(mesh);
  SparseMatrix M(pattern, true);
  std::array<std::array<double, 8>, 8> local{};
  for (int k = 0; k < 8; ++k)
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) local[a][b] += mesh.qp_weight * mesh.shape_val[k][a] * mesh.shape_val[k][b];
  for (int e = 0; e < mesh.elem_count(); ++e) {
    const auto& conn = mesh.elems[e];
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        for (int c = 0; c < 3; ++c) M.add_at(3 * conn[a] + c, 3 * conn[b] + c, local[a][b]);
  }
  return M;
}

/// Boundary mass (M_bdry)_rs = integral over the boundary of <phi_r, phi_s>.
inline SparseMatrix assemble_boundary_mass(const PlateMesh& mesh,
                                           std::shared_ptr<const SparsityPattern> pattern = nullptr) {
  if (!pattern) pattern = build_dof_pattern(mesh);
  SparseMatrix Mb(pattern, true);
  // bilinear shape products on the reference face, 2x2 Gauss (exact)
  const double g = 1.0 / std::sqrt(3.0);
  std::array<std::array<double, 4>, 4> local{};
  for (int kb = 0; kb < 2; ++kb)
    for (int ka = 0; ka < 2; ++ka) {
      const double xa = ka ? g : -g, xb = kb ? g : -g;
      std::array<double, 4> N;
      int c = 0;
      for (int lb = 0; lb < 2; ++lb)
        for (int la = 0; la < 2; ++la)
          N[c++] = 0.5 * (1.0 + (la ? 1.0 : -1.0) * xa) * 0.5 * (1.0 + (lb ? 1.0 : -1.0) * xb);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) local[a][b] += N[a] * N[b];
    }
  for (const auto& f : mesh.boundary_faces)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 3; ++c)
          Mb.add_at(3 * f.nodes[a] + c, 3 * f.nodes[b] + c, f.detj * local[a][b]);
  return Mb;
}

/// Grad-grad matrix L_rs = integral of <grad phi_r, grad phi_s>, component
/// diagonal; x' L x is the discrete stiffness-energy seminorm |Jx|^2.
inline SparseMatrix assemble_gradgrad(const PlateMesh& mesh,
                                      std::shared_ptr<const SparsityPattern> pattern = nullptr) {
  if (!pattern) pattern = build_dof_pattern(mesh);
  SparseMatrix L(pattern, true);
  std::array<std::array<double, 8>, 8> local{};
  for (int k = 0; k < 8; ++k)
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d) s += mesh.shape_grad[k][a][d] * mesh.shape_grad[k][b][d];
        local[a][b] += mesh.qp_weight * s;
      }
  for (int e = 0; e < mesh.elem_count(); ++e) {
    const auto& conn = mesh.elems[e];
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        for (int c = 0; c < 3; ++c) L.add_at(3 * conn[a] + c, 3 * conn[b] + c, local[a][b]);
  }
  return L;
}

} // namespace hyperwave
