#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mesh.hpp"
#include "sparse.hpp"

namespace hyperwave {

/// Boundary sensor set. Each sensor weight function is a single nodal basis
/// element confined to the boundary, so the selection matrix G-bar has one
/// unit entry per row; the discrete observation is G-bar * M_bdry * U.
struct SensorArray {
  int count = 0;
  std::vector<int> dofs;      // one dof per sensor (3*node + component)
  std::vector<int> node_ids;  // sensor nodes
  std::vector<std::array<double, 3>> coords;
  SparseMatrix boundary_mass; // M_bdry, assembled once
};

inline SensorArray make_sensor_array(const PlateMesh& mesh, const std::vector<int>& node_ids,
                                     const std::vector<int>& components,
                                     std::shared_ptr<const SparsityPattern> pattern = nullptr) {
  if (components.size() != node_ids.size())
    throw LengthMismatch(components.size(), node_ids.size());
  SensorArray s;
  s.count = static_cast<int>(node_ids.size());
  s.node_ids = node_ids;
  for (std::size_t i = 0; i < node_ids.size(); ++i) {
    const int id = node_ids[i];
    if (id < 0 || id >= mesh.node_count() || !mesh.node_on_boundary[id]) throw InteriorNode(id);
    s.dofs.push_back(3 * id + components[i]);
    s.coords.push_back(mesh.node_coords[id]);
  }
  s.boundary_mass = assemble_boundary_mass(mesh, std::move(pattern));
  return s;
}

inline SensorArray make_sensor_array(const PlateMesh& mesh, const std::vector<int>& node_ids,
                                     int component = 2,
                                     std::shared_ptr<const SparsityPattern> pattern = nullptr) {
  return make_sensor_array(mesh, node_ids, std::vector<int>(node_ids.size(), component),
                           std::move(pattern));
}

/// Q[u] = G-bar M_bdry U: one boundary-mass row per sensor dof.
inline std::vector<double> observe(const SensorArray& s, const std::vector<double>& U) {
  std::vector<double> y(s.count, 0.0);
  const auto& p = *s.boundary_mass.pattern;
  for (int kS = 0; kS < s.count; ++kS) {
    const int r = s.dofs[kS];
    double acc = 0.0;
    for (int k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k)
      acc += s.boundary_mass.vals[k] * U[p.cols[k]];
    y[kS] = acc;
  }
  return y;
}

/// Q* a = M_bdry G-bar' a, a dual (load) vector.
inline std::vector<double> observe_adjoint(const SensorArray& s, const std::vector<double>& a) {
  std::vector<double> spread(s.boundary_mass.dim(), 0.0);
  for (int kS = 0; kS < s.count; ++kS) spread[s.dofs[kS]] += a[kS];
  return s.boundary_mass.multiply(spread);
}

/// Ring layouts on both x1-extreme faces: `per_edge` equally spaced positions
/// per edge, each edge contributing per_edge - 1 of them (the closing corner
/// belongs to the next edge), snapped to the nearest edge node. Duplicate
/// nodes are kept, so the sensor count is exactly 8 * (per_edge - 1).
inline std::vector<int> ring_layout_nodes(const PlateMesh& mesh, int per_edge) {
  if (per_edge < 2) throw std::invalid_argument("ring layout needs at least 2 sensors per edge");
  std::vector<int> nodes;
  const int n2 = mesh.cells[1], n3 = mesh.cells[2];
  for (int side = 0; side < 2; ++side) {
    const int i1 = side == 0 ? 0 : mesh.cells[0];
    // corners of the face ring in (i2, i3), traversed counter-clockwise
    const std::array<std::array<int, 2>, 4> corner = {{{0, 0}, {n2, 0}, {n2, n3}, {0, n3}}};
    for (int edge = 0; edge < 4; ++edge) {
      const auto& a = corner[edge];
      const auto& b = corner[(edge + 1) % 4];
      for (int j = 0; j < per_edge - 1; ++j) {
        const double t = static_cast<double>(j) / (per_edge - 1);
        const int i2 = static_cast<int>(std::lround(a[0] + t * (b[0] - a[0])));
        const int i3 = static_cast<int>(std::lround(a[1] + t * (b[1] - a[1])));
        nodes.push_back(mesh.node_id(i1, i2, i3));
      }
    }
  }
  return nodes;
}

/// Named layouts: R57d (57 per edge, 448 sensors), R8d (8 per edge, 56
/// sensors), or "ring:<k>".
inline std::vector<int> named_layout_nodes(const PlateMesh& mesh, const std::string& name) {
  if (name == "R57d") return ring_layout_nodes(mesh, 57);
  if (name == "R8d") return ring_layout_nodes(mesh, 8);
  if (name.rfind("ring:", 0) == 0) return ring_layout_nodes(mesh, std::stoi(name.substr(5)));
  throw std::invalid_argument("unknown sensor layout '" + name + "'");
}

} // namespace hyperwave
