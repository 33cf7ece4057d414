#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace stokesbiot {

enum class Region { Fluid, Poro };
enum class EdgeTag { Interior, ExteriorFluid, ExteriorPoro, Interface };

// Constant interface geometry for the flat interface at y = 0 with the fluid
// domain above and the poroelastic domain below.
struct InterfaceGeometry {
  static constexpr std::array<double, 2> fluid_normal{0.0, -1.0};
  static constexpr std::array<double, 2> poro_normal{0.0, 1.0};
  static constexpr std::array<double, 2> tangent{1.0, 0.0};
};

// Structured triangulation of one unit-square subdomain: the fluid mesh covers
// (0,1)x(0,1), the poroelastic mesh (0,1)x(-1,0). Both place their interface
// vertices on y = 0 with bitwise-identical x coordinates, so interface
// integrals can pair traces from the two meshes without any projection.
// Immutable after construction.
struct Mesh2D {
  Region region = Region::Fluid;
  int n = 0;     // cells per unit length
  double h = 0;  // max edge length
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<std::array<int, 2>> edges;      // endpoints stored sorted
  std::vector<EdgeTag> edge_tags;
  std::vector<std::array<int, 2>> edge_tris;  // adjacent triangles, -1 = none
  std::unordered_map<std::int64_t, int> edge_lookup;

  static std::int64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::int64_t>(a) << 32) | static_cast<std::int64_t>(b);
  }

  int edge_index(int a, int b) const {
    auto it = edge_lookup.find(edge_key(a, b));
    if (it == edge_lookup.end()) throw std::invalid_argument("mesh: no such edge");
    return it->second;
  }

  std::array<double, 2> edge_midpoint(int e) const {
    const auto& a = vertices[edges[e][0]];
    const auto& b = vertices[edges[e][1]];
    return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
  }

  double triangle_area(int t) const {
    const auto& p0 = vertices[triangles[t][0]];
    const auto& p1 = vertices[triangles[t][1]];
    const auto& p2 = vertices[triangles[t][2]];
    return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
  }

  double total_area() const {
    double a = 0;
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) a += triangle_area(t);
    return a;
  }
};

// Uniform mesh of n x n squares, each split into two triangles by the
// diagonal of positive slope (lower-left to upper-right, fixed for
// reproducibility). Boundary edges on y = 0 are tagged Interface, the rest
// of the boundary ExteriorFluid/ExteriorPoro.
inline Mesh2D build_rect_mesh(int n, Region region) {
  if (n < 1) throw std::invalid_argument("build_rect_mesh: n must be >= 1");

  Mesh2D m;
  m.region = region;
  m.n = n;

  const double y_shift = (region == Region::Fluid) ? 0.0 : -1.0;
  const int nv = n + 1;
  m.vertices.resize(static_cast<size_t>(nv) * nv);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices[static_cast<size_t>(j) * nv + i] = {static_cast<double>(i) / n,
                                                     static_cast<double>(j) / n + y_shift};

  m.triangles.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = j * nv + i;
      const int v10 = j * nv + i + 1;
      const int v01 = (j + 1) * nv + i;
      const int v11 = (j + 1) * nv + i + 1;
      m.triangles.push_back({v00, v10, v11});
      m.triangles.push_back({v00, v11, v01});
    }

  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const auto& tri = m.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      const auto key = Mesh2D::edge_key(a, b);
      auto it = m.edge_lookup.find(key);
      if (it == m.edge_lookup.end()) {
        const int e = static_cast<int>(m.edges.size());
        m.edges.push_back({std::min(a, b), std::max(a, b)});
        m.edge_tris.push_back({t, -1});
        m.edge_lookup.emplace(key, e);
      } else {
        m.edge_tris[it->second][1] = t;
      }
    }
  }

  m.edge_tags.resize(m.edges.size(), EdgeTag::Interior);
  for (size_t e = 0; e < m.edges.size(); ++e) {
    if (m.edge_tris[e][1] != -1) continue;  // interior edge
    const auto& a = m.vertices[m.edges[e][0]];
    const auto& b = m.vertices[m.edges[e][1]];
    if (a[1] == 0.0 && b[1] == 0.0)
      m.edge_tags[e] = EdgeTag::Interface;
    else
      m.edge_tags[e] = (region == Region::Fluid) ? EdgeTag::ExteriorFluid : EdgeTag::ExteriorPoro;
  }

  m.h = 0;
  for (const auto& e : m.edges) {
    const auto& a = m.vertices[e[0]];
    const auto& b = m.vertices[e[1]];
    m.h = std::max(m.h, std::hypot(b[0] - a[0], b[1] - a[1]));
  }
  return m;
}

struct InterfaceEdge {
  int edge;
  int tri;  // adjacent triangle in the mesh's own region
};

// All edges tagged Interface with their owning triangle, ordered by
// increasing x of the edge midpoint.
inline std::vector<InterfaceEdge> interface_edges(const Mesh2D& mesh) {
  std::vector<InterfaceEdge> out;
  for (int e = 0; e < static_cast<int>(mesh.edges.size()); ++e)
    if (mesh.edge_tags[e] == EdgeTag::Interface) out.push_back({e, mesh.edge_tris[e][0]});
  std::sort(out.begin(), out.end(), [&](const InterfaceEdge& a, const InterfaceEdge& b) {
    return mesh.edge_midpoint(a.edge)[0] < mesh.edge_midpoint(b.edge)[0];
  });
  return out;
}

// Plain-text mesh dump for debugging: vertices, triangles, tagged boundary edges.
inline void dump_mesh(const Mesh2D& mesh, std::ostream& os) {
  os.precision(17);
  for (const auto& v : mesh.vertices) os << "v " << v[0] << ' ' << v[1] << '\n';
  for (const auto& t : mesh.triangles) os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (size_t e = 0; e < mesh.edges.size(); ++e) {
    if (mesh.edge_tags[e] == EdgeTag::Interior) continue;
    const char* tag = nullptr;
    switch (mesh.edge_tags[e]) {
      case EdgeTag::ExteriorFluid: tag = "ExteriorFluid"; break;
      case EdgeTag::ExteriorPoro: tag = "ExteriorPoro"; break;
      case EdgeTag::Interface: tag = "Interface"; break;
      default: tag = "Interior"; break;
    }
    os << "e " << mesh.edges[e][0] << ' ' << mesh.edges[e][1] << ' ' << tag << '\n';
  }
}

}  // namespace stokesbiot
