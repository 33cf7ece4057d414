#pragma once

#include <algorithm>
#include <array>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "stokesbiot/basis.hpp"
#include "stokesbiot/mesh.hpp"

namespace stokesbiot {

// Map from mesh entities to global degrees of freedom for continuous P1/P2
// Lagrange spaces. Scalar dofs are numbered vertices-first, then (for P2)
// edge midpoints in mesh edge order. Vector fields stack one scalar block per
// component: global index = component * count + scalar index.
struct DofMap {
  const Mesh2D* mesh = nullptr;
  int degree = 1;
  int components = 1;
  int count = 0;  // scalar dofs
  std::vector<std::array<double, 2>> node_coords;  // per scalar dof
  std::vector<int> cell_dofs;                      // triangles x nodes_per_cell

  int nodes_per_cell() const { return degree == 1 ? 3 : 6; }
  int total() const { return components * count; }
  int vector_dof(int component, int scalar_dof) const { return component * count + scalar_dof; }
  const int* cell(int t) const { return cell_dofs.data() + static_cast<size_t>(t) * nodes_per_cell(); }

  static DofMap build(const Mesh2D& mesh, int degree, int components) {
    if (degree != 1 && degree != 2) throw std::invalid_argument("DofMap: degree must be 1 or 2");
    if (components != 1 && components != 2)
      throw std::invalid_argument("DofMap: components must be 1 or 2");
    DofMap dm;
    dm.mesh = &mesh;
    dm.degree = degree;
    dm.components = components;
    const int nv = static_cast<int>(mesh.vertices.size());
    const int ne = static_cast<int>(mesh.edges.size());
    dm.count = (degree == 1) ? nv : nv + ne;

    dm.node_coords.resize(dm.count);
    for (int v = 0; v < nv; ++v) dm.node_coords[v] = mesh.vertices[v];
    if (degree == 2)
      for (int e = 0; e < ne; ++e) dm.node_coords[nv + e] = mesh.edge_midpoint(e);

    const int npc = dm.nodes_per_cell();
    dm.cell_dofs.resize(static_cast<size_t>(mesh.triangles.size()) * npc);
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
      const auto& tri = mesh.triangles[t];
      int* cd = dm.cell_dofs.data() + static_cast<size_t>(t) * npc;
      cd[0] = tri[0];
      cd[1] = tri[1];
      cd[2] = tri[2];
      if (degree == 2) {
        cd[3] = nv + mesh.edge_index(tri[0], tri[1]);
        cd[4] = nv + mesh.edge_index(tri[1], tri[2]);
        cd[5] = nv + mesh.edge_index(tri[2], tri[0]);
      }
    }
    return dm;
  }
};

// Scalar dofs lying on edges carrying any of the given tags (edge endpoints
// plus, for P2, the edge midpoint). Sorted and deduplicated.
inline std::vector<int> tagged_scalar_dofs(const DofMap& dm, std::initializer_list<EdgeTag> tags) {
  const Mesh2D& mesh = *dm.mesh;
  const int nv = static_cast<int>(mesh.vertices.size());
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(mesh.edges.size()); ++e) {
    bool match = false;
    for (EdgeTag t : tags) match = match || (mesh.edge_tags[e] == t);
    if (!match) continue;
    out.push_back(mesh.edges[e][0]);
    out.push_back(mesh.edges[e][1]);
    if (dm.degree == 2) out.push_back(nv + e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace stokesbiot
