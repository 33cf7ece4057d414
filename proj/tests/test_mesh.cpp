#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <sstream>

#include "stokesbiot/mesh.hpp"

using namespace stokesbiot;

TEST_CASE("single-cell fluid mesh") {
  const Mesh2D m = build_rect_mesh(1, Region::Fluid);
  CHECK(m.vertices.size() == 4);
  CHECK(m.triangles.size() == 2);
  int boundary = 0, interface = 0;
  for (size_t e = 0; e < m.edges.size(); ++e) {
    if (m.edge_tags[e] != EdgeTag::Interior) ++boundary;
    if (m.edge_tags[e] == EdgeTag::Interface) ++interface;
  }
  CHECK(boundary == 4);
  CHECK(interface == 1);
  const auto ie = interface_edges(m);
  REQUIRE(ie.size() == 1);
  CHECK(m.edge_midpoint(ie[0].edge)[0] == Catch::Approx(0.5));
}

TEST_CASE("poro mesh counts at n=4") {
  const Mesh2D m = build_rect_mesh(4, Region::Poro);
  CHECK(m.vertices.size() == 25);
  CHECK(m.triangles.size() == 32);
  const auto ie = interface_edges(m);
  CHECK(ie.size() == 4);
  for (const auto& e : ie) {
    CHECK(m.vertices[m.edges[e.edge][0]][1] == 0.0);
    CHECK(m.vertices[m.edges[e.edge][1]][1] == 0.0);
  }
  // the rest of the boundary is tagged exterior
  for (size_t e = 0; e < m.edges.size(); ++e)
    if (m.edge_tris[e][1] == -1 && m.edge_tags[e] != EdgeTag::Interface)
      CHECK(m.edge_tags[e] == EdgeTag::ExteriorPoro);
}

TEST_CASE("mesh size counts and orientation") {
  for (int n : {1, 2, 3, 5, 8}) {
    const Mesh2D mf = build_rect_mesh(n, Region::Fluid);
    CHECK(static_cast<int>(mf.triangles.size()) == 2 * n * n);
    CHECK(static_cast<int>(mf.vertices.size()) == (n + 1) * (n + 1));
    CHECK(static_cast<int>(interface_edges(mf).size()) == n);
    for (int t = 0; t < static_cast<int>(mf.triangles.size()); ++t)
      CHECK(mf.triangle_area(t) > 0.0);
    CHECK(mf.h == Catch::Approx(std::sqrt(2.0) / n).epsilon(1e-14));
  }
}

TEST_CASE("areas partition the domains") {
  const Mesh2D mf = build_rect_mesh(8, Region::Fluid);
  const Mesh2D mp = build_rect_mesh(8, Region::Poro);
  CHECK(std::abs(mf.total_area() - 1.0) < 1e-14);
  CHECK(std::abs(mf.total_area() + mp.total_area() - 2.0) < 1e-12);
}

TEST_CASE("interface edges ordered by midpoint, n=8") {
  const Mesh2D m = build_rect_mesh(8, Region::Fluid);
  const auto ie = interface_edges(m);
  REQUIRE(ie.size() == 8);
  for (int k = 0; k < 8; ++k)
    CHECK(m.edge_midpoint(ie[k].edge)[0] == Catch::Approx((2.0 * k + 1.0) / 16.0).epsilon(1e-14));
}

TEST_CASE("fluid and poro interface vertices coincide bitwise") {
  for (int n : {3, 8}) {
    const Mesh2D mf = build_rect_mesh(n, Region::Fluid);
    const Mesh2D mp = build_rect_mesh(n, Region::Poro);
    const auto fe = interface_edges(mf);
    const auto pe = interface_edges(mp);
    REQUIRE(fe.size() == pe.size());
    for (size_t k = 0; k < fe.size(); ++k) {
      auto fa = mf.vertices[mf.edges[fe[k].edge][0]];
      auto fb = mf.vertices[mf.edges[fe[k].edge][1]];
      auto pa = mp.vertices[mp.edges[pe[k].edge][0]];
      auto pb = mp.vertices[mp.edges[pe[k].edge][1]];
      if (fa[0] > fb[0]) std::swap(fa, fb);
      if (pa[0] > pb[0]) std::swap(pa, pb);
      CHECK(fa[0] == pa[0]);  // bitwise
      CHECK(fb[0] == pb[0]);
      CHECK(fa[1] == 0.0);
      CHECK(pa[1] == 0.0);
    }
  }
}

TEST_CASE("interface geometry constants") {
  CHECK(InterfaceGeometry::poro_normal[0] == -InterfaceGeometry::fluid_normal[0]);
  CHECK(InterfaceGeometry::poro_normal[1] == -InterfaceGeometry::fluid_normal[1]);
  const auto& nf = InterfaceGeometry::fluid_normal;
  const auto& tau = InterfaceGeometry::tangent;
  CHECK(nf[0] * nf[0] + nf[1] * nf[1] == 1.0);
  CHECK(tau[0] * tau[0] + tau[1] * tau[1] == 1.0);
  CHECK(nf[0] * tau[0] + nf[1] * tau[1] == 0.0);
}

TEST_CASE("invalid refinement throws") {
  CHECK_THROWS_AS(build_rect_mesh(0, Region::Fluid), std::invalid_argument);
}

TEST_CASE("mesh dump format") {
  const Mesh2D m = build_rect_mesh(1, Region::Fluid);
  std::ostringstream os;
  dump_mesh(m, os);
  const std::string s = os.str();
  CHECK(s.find("v 0 0") != std::string::npos);
  CHECK(s.find("t 0 1 3") != std::string::npos);
  CHECK(s.find("Interface") != std::string::npos);
  CHECK(s.find("ExteriorFluid") != std::string::npos);
}
