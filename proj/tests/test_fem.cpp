#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "stokesbiot/assembly.hpp"
#include "stokesbiot/basis.hpp"
#include "stokesbiot/diagnostics.hpp"
#include "stokesbiot/dofmap.hpp"
#include "stokesbiot/mms.hpp"
#include "stokesbiot/quadrature.hpp"

using namespace stokesbiot;

namespace {

// One unit right triangle (legs 1), enough structure for dof maps.
Mesh2D single_triangle() {
  Mesh2D m;
  m.region = Region::Fluid;
  m.n = 1;
  m.vertices = {{0, 0}, {1, 0}, {0, 1}};
  m.triangles = {{0, 1, 2}};
  m.edges = {{0, 1}, {1, 2}, {0, 2}};
  m.edge_tris = {{0, -1}, {0, -1}, {0, -1}};
  m.edge_tags = {EdgeTag::Interface, EdgeTag::ExteriorFluid, EdgeTag::ExteriorFluid};
  m.edge_lookup[Mesh2D::edge_key(0, 1)] = 0;
  m.edge_lookup[Mesh2D::edge_key(1, 2)] = 1;
  m.edge_lookup[Mesh2D::edge_key(0, 2)] = 2;
  m.h = std::sqrt(2.0);
  return m;
}

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

// int_T x^a y^b over the reference triangle = a! b! / (a+b+2)!
double monomial_integral(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

constexpr std::array<std::array<double, 2>, 2> kIdentityK = {{{1.0, 0.0}, {0.0, 1.0}}};

}  // namespace

TEST_CASE("bases: partition of unity and Kronecker property") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (const auto* basis : {&ReferenceBasis::p1(), &ReferenceBasis::p2()}) {
    for (int trial = 0; trial < 50; ++trial) {
      double xi = dist(rng), eta = dist(rng);
      if (xi + eta > 1.0) {
        xi = 1.0 - xi;
        eta = 1.0 - eta;
      }
      double v[6];
      basis->eval(xi, eta, v);
      double sum = 0;
      for (int a = 0; a < basis->node_count; ++a) sum += v[a];
      CHECK(std::abs(sum - 1.0) < 1e-14);
    }
    const auto nodes = basis->nodes();
    for (int j = 0; j < basis->node_count; ++j) {
      double v[6];
      basis->eval(nodes[j][0], nodes[j][1], v);
      for (int i = 0; i < basis->node_count; ++i)
        CHECK(std::abs(v[i] - (i == j ? 1.0 : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("triangle quadrature integrates monomials exactly") {
  const auto& qr = tri_quadrature();
  for (int a = 0; a + 0 <= kTriQuadratureDegree; ++a)
    for (int b = 0; a + b <= kTriQuadratureDegree; ++b) {
      double acc = 0;
      for (const auto& q : qr) acc += q.w * std::pow(q.xi, a) * std::pow(q.eta, b);
      CHECK(std::abs(acc - monomial_integral(a, b)) < 1e-13);
    }
  double wsum = 0;
  for (const auto& q : qr) {
    CHECK(q.w > 0.0);
    wsum += q.w;
  }
  CHECK(std::abs(wsum - 0.5) < 1e-15);
}

TEST_CASE("edge quadrature integrates degree-5 polynomials exactly") {
  for (int k = 0; k <= kEdgeQuadratureDegree; ++k) {
    double acc = 0;
    for (const auto& q : edge_quadrature()) acc += q.w * std::pow(q.s, k);
    CHECK(std::abs(acc - 1.0 / (k + 1)) < 1e-14);
  }
}

TEST_CASE("P1 mass matrix on a unit right triangle") {
  const Mesh2D m = single_triangle();
  const DofMap dm = DofMap::build(m, 1, 1);
  const SparseMatrix mass = assemble_mass(m, dm, 1.0);
  const double expected[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(mass.coeff(i, j) == Catch::Approx(expected[i][j] / 24.0).margin(1e-15));
}

TEST_CASE("mass matrix row sums and degenerate density") {
  const Mesh2D m = build_rect_mesh(3, Region::Fluid);
  for (int degree : {1, 2}) {
    const DofMap dm = DofMap::build(m, degree, 1);
    const SparseMatrix mass = assemble_mass(m, dm, 2.5);
    const Vector ones = Vector::Ones(dm.total());
    CHECK(ones.dot(mass * ones) == Catch::Approx(2.5 * 1.0).epsilon(1e-13));
  }
  const DofMap dm = DofMap::build(m, 1, 1);
  const SparseMatrix z = assemble_mass(m, dm, 0.0);
  CHECK(inf_norm(z) == 0.0);
  CHECK_THROWS_AS(assemble_mass(m, dm, -1.0), std::invalid_argument);
}

TEST_CASE("symmetric gradient stiffness") {
  const Mesh2D m = build_rect_mesh(4, Region::Fluid);
  const DofMap dm = DofMap::build(m, 2, 2);
  const double coeff = 0.7;
  const SparseMatrix a = assemble_sym_grad_stiffness(m, dm, coeff);

  SECTION("symmetry") {
    const SparseMatrix d = a - SparseMatrix(a.transpose());
    CHECK(inf_norm(d) < 1e-13);
  }
  SECTION("rigid-body modes in the kernel") {
    const std::vector<std::function<std::array<double, 2>(double, double)>> modes = {
        [](double, double) { return std::array<double, 2>{1.0, 0.0}; },
        [](double, double) { return std::array<double, 2>{0.0, 1.0}; },
        [](double x, double y) { return std::array<double, 2>{-y, x}; }};
    for (const auto& mode : modes) {
      const Vector r = interpolate_vector(
          dm, [&](double, double x, double y) { return mode(x, y); }, 0.0);
      CHECK((a * r).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("energy of u = (x, -y)") {
    const Vector u = interpolate_vector(
        dm, [](double, double x, double y) { return std::array<double, 2>{x, -y}; }, 0.0);
    CHECK(u.dot(a * u) == Catch::Approx(2.0 * coeff * 2.0 * 1.0).epsilon(1e-12));
  }
  SECTION("scalar dofmap rejected") {
    const DofMap sdm = DofMap::build(m, 2, 1);
    CHECK_THROWS_AS(assemble_sym_grad_stiffness(m, sdm, 1.0), std::invalid_argument);
  }
}

TEST_CASE("div-div matrix") {
  const Mesh2D m = build_rect_mesh(4, Region::Poro);
  const DofMap dm = DofMap::build(m, 2, 2);
  const double coeff = 1.3;
  const SparseMatrix b = assemble_div_div(m, dm, coeff);
  CHECK(inf_norm(SparseMatrix(b - SparseMatrix(b.transpose()))) < 1e-13);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Vector x(dm.total());
    for (int i = 0; i < x.size(); ++i) x[i] = dist(rng);
    CHECK(x.dot(b * x) >= -1e-12);
  }
  const Vector rot = interpolate_vector(
      dm, [](double, double x, double y) { return std::array<double, 2>{-y, x}; }, 0.0);
  CHECK((b * rot).cwiseAbs().maxCoeff() < 1e-12);
  const Vector u = interpolate_vector(
      dm, [](double, double x, double y) { return std::array<double, 2>{x, y}; }, 0.0);
  CHECK(u.dot(b * u) == Catch::Approx(coeff * 4.0 * 1.0).epsilon(1e-12));
}

TEST_CASE("pressure-divergence coupling") {
  const Mesh2D m = build_rect_mesh(8, Region::Fluid);
  const DofMap vdm = DofMap::build(m, 2, 2);
  const DofMap qdm = DofMap::build(m, 1, 1);
  const SparseMatrix c = assemble_pressure_div(m, vdm, qdm);

  const Vector constant = interpolate_vector(
      vdm, [](double, double, double) { return std::array<double, 2>{2.0, -3.0}; }, 0.0);
  CHECK((c * constant).cwiseAbs().maxCoeff() < 1e-13);

  const Vector ux = interpolate_vector(
      vdm, [](double, double x, double) { return std::array<double, 2>{x, 0.0}; }, 0.0);
  const Vector unit_load = assemble_load(m, qdm, [](double, double, double) { return 1.0; }, 0.0);
  CHECK(((c * ux) - unit_load).cwiseAbs().maxCoeff() < 1e-13);

  // interpolated benchmark velocity: total weak divergence equals the
  // divergence source integral to interpolation accuracy
  const Vector umms = interpolate_vector(
      vdm, [](double t, double x, double y) { return mms::velocity(t, x, y); }, 0.0);
  const double total = (c * umms).sum();
  CHECK(std::abs(total - (-2.0 * mms::kPi)) < 1e-4);

  const Mesh2D other = build_rect_mesh(8, Region::Poro);
  const DofMap odm = DofMap::build(other, 1, 1);
  CHECK_THROWS_AS(assemble_pressure_div(m, vdm, odm), std::invalid_argument);
}

TEST_CASE("scalar stiffness") {
  const Mesh2D tri = single_triangle();
  const DofMap dm1 = DofMap::build(tri, 1, 1);
  const SparseMatrix a = assemble_scalar_stiffness(tri, dm1, kIdentityK);
  const double expected[3][3] = {{2, -1, -1}, {-1, 1, 0}, {-1, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(a.coeff(i, j) == Catch::Approx(expected[i][j] / 2.0).margin(1e-15));

  const Mesh2D m = build_rect_mesh(4, Region::Poro);
  const DofMap dm = DofMap::build(m, 1, 1);
  const SparseMatrix k1 = assemble_scalar_stiffness(m, dm, kIdentityK);
  CHECK((k1 * Vector::Ones(dm.total())).cwiseAbs().maxCoeff() < 1e-13);

  const SparseMatrix k2 =
      assemble_scalar_stiffness(m, dm, {{{2.0, 0.0}, {0.0, 2.0}}});
  CHECK(inf_norm(SparseMatrix(k2 - 2.0 * k1)) < 1e-13);

  CHECK_THROWS_AS(assemble_scalar_stiffness(m, dm, {{{1.0, 2.0}, {-2.0, 1.0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_scalar_stiffness(m, dm, {{{1.0, 3.0}, {3.0, 1.0}}}),
                  std::invalid_argument);
}

TEST_CASE("P2 stiffness is exact on global quadratics") {
  const Mesh2D m = build_rect_mesh(4, Region::Fluid);
  const DofMap dm = DofMap::build(m, 2, 1);
  const SparseMatrix a = assemble_scalar_stiffness(m, dm, kIdentityK);
  const Vector q = interpolate_scalar(
      dm, [](double, double x, double y) { return x * x + x * y - y * y; }, 0.0);
  // grad q = (2x + y, x - 2y); int |grad q|^2 over the unit square = 10/3
  CHECK(q.dot(a * q) == Catch::Approx(10.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("interface tangential matrix") {
  const Mesh2D mf = build_rect_mesh(4, Region::Fluid);
  const Mesh2D mp = build_rect_mesh(4, Region::Poro);
  const DofMap fdm = DofMap::build(mf, 2, 2);
  const DofMap pdm = DofMap::build(mp, 2, 2);
  const auto fside = make_interface_side(mf, fdm);
  const auto pside = make_interface_side(mp, pdm);
  const double coeff = 2.25;
  const SparseMatrix g = assemble_interface_tangential(fside, fside, InterfaceGeometry::tangent, coeff);

  const Vector normal_field = interpolate_vector(
      fdm, [](double, double, double) { return std::array<double, 2>{0.0, 4.0}; }, 0.0);
  CHECK((g * normal_field).cwiseAbs().maxCoeff() < 1e-13);

  const Vector tangent_field = interpolate_vector(
      fdm, [](double, double, double) { return std::array<double, 2>{1.0, 0.0}; }, 0.0);
  CHECK(tangent_field.dot(g * tangent_field) == Catch::Approx(coeff).epsilon(1e-13));

  CHECK(inf_norm(SparseMatrix(g - SparseMatrix(g.transpose()))) < 1e-14);

  // cross-mesh variant pairs the matching traces
  const SparseMatrix gfp =
      assemble_interface_tangential(fside, pside, InterfaceGeometry::tangent, coeff);
  const Vector pt = interpolate_vector(
      pdm, [](double, double, double) { return std::array<double, 2>{1.0, 0.0}; }, 0.0);
  CHECK(tangent_field.dot(gfp * pt) == Catch::Approx(coeff).epsilon(1e-13));

  CHECK(inf_norm(assemble_interface_tangential(fside, fside, InterfaceGeometry::tangent, 0.0)) ==
        0.0);

  const Mesh2D mp5 = build_rect_mesh(5, Region::Poro);
  const DofMap pdm5 = DofMap::build(mp5, 2, 2);
  const auto pside5 = make_interface_side(mp5, pdm5);
  CHECK_THROWS_AS(assemble_interface_tangential(fside, pside5, InterfaceGeometry::tangent, 1.0),
                  std::invalid_argument);
}

TEST_CASE("interface normal matrices") {
  const Mesh2D mf = build_rect_mesh(4, Region::Fluid);
  const Mesh2D mp = build_rect_mesh(4, Region::Poro);
  const DofMap fdm = DofMap::build(mf, 2, 2);
  const DofMap ddm = DofMap::build(mp, 1, 1);
  const auto fside = make_interface_side(mf, fdm);
  const auto dside = make_interface_side(mp, ddm);
  const auto& nf = InterfaceGeometry::fluid_normal;

  const SparseMatrix n = assemble_interface_normal(fside, nf, fside, nf, 1.0);
  const Vector tangential = interpolate_vector(
      fdm, [](double, double, double) { return std::array<double, 2>{3.0, 0.0}; }, 0.0);
  CHECK((n * tangential).cwiseAbs().maxCoeff() < 1e-13);

  // v = (0,1): v.n_f = -1, so <v.n_f, v.n_f> = +1
  const Vector vup = interpolate_vector(
      fdm, [](double, double, double) { return std::array<double, 2>{0.0, 1.0}; }, 0.0);
  CHECK(vup.dot(n * vup) == Catch::Approx(1.0).epsilon(1e-13));

  const double L = 4.0;
  const SparseMatrix nss = assemble_interface_scalar(dside, dside, 1.0 / L);
  const Vector ones = Vector::Ones(ddm.total());
  CHECK(ones.dot(nss * ones) == Catch::Approx(1.0 / L).epsilon(1e-13));

  // mixed scalar-vector pairing: <phi, v.n_f> with phi = 1 and v = (0,1) is -1
  const SparseMatrix nvs = assemble_interface_normal(fside, nf, dside, 1.0);
  CHECK(vup.dot(nvs * ones) == Catch::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("load vectors") {
  const Mesh2D m = build_rect_mesh(6, Region::Fluid);
  const DofMap dm = DofMap::build(m, 1, 1);
  const Vector zero = assemble_load(m, dm, [](double, double, double) { return 0.0; }, 0.0);
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);
  const Vector one = assemble_load(m, dm, [](double, double, double) { return 1.0; }, 0.0);
  CHECK(one.sum() == Catch::Approx(1.0).epsilon(1e-13));
  const Vector xload = assemble_load(m, dm, [](double, double x, double) { return x; }, 0.0);
  CHECK(xload.sum() == Catch::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("assembly determinism") {
  const Mesh2D m = build_rect_mesh(5, Region::Poro);
  const DofMap dm = DofMap::build(m, 2, 2);
  const SparseMatrix a1 = assemble_sym_grad_stiffness(m, dm, 1.0);
  const SparseMatrix a2 = assemble_sym_grad_stiffness(m, dm, 1.0);
  REQUIRE(a1.nonZeros() == a2.nonZeros());
  for (int k = 0; k < a1.nonZeros(); ++k) CHECK(a1.valuePtr()[k] == a2.valuePtr()[k]);
}

TEST_CASE("dirichlet application") {
  const Mesh2D m = build_rect_mesh(4, Region::Fluid);
  const DofMap dm = DofMap::build(m, 1, 1);
  SparseMatrix a = assemble_scalar_stiffness(m, dm, kIdentityK);
  a += assemble_mass(m, dm, 1.0);  // make it nonsingular before constraints

  SECTION("all dofs constrained reproduces the boundary data") {
    std::vector<char> mask(dm.total(), 1);
    Vector g(dm.total());
    for (int i = 0; i < g.size(); ++i) g[i] = std::sin(1.0 + i);
    Vector rhs = Vector::Zero(dm.total());
    apply_dirichlet_rhs(a, mask, g, rhs);
    const Factorization f(constrained_matrix(a, mask));
    const Vector x = f.solve(rhs);
    CHECK((x - g).cwiseAbs().maxCoeff() < 1e-14);
  }

  SECTION("constrained values match exactly and free equations are unchanged") {
    std::vector<char> mask(dm.total(), 0);
    const auto bc = tagged_scalar_dofs(dm, {EdgeTag::ExteriorFluid});
    for (int s : bc) mask[s] = 1;
    Vector g = Vector::Zero(dm.total());
    for (int s : bc) g[s] = 0.25 + 0.01 * s;
    Vector rhs = assemble_load(m, dm, [](double, double x, double y) { return x - y; }, 0.0);
    const Vector rhs_orig = rhs;
    apply_dirichlet_rhs(a, mask, g, rhs);
    const Factorization f(constrained_matrix(a, mask));
    const Vector x = f.solve(rhs);
    for (int s : bc) CHECK(std::abs(x[s] - g[s]) < 1e-14);
    // original equations hold on free rows
    const Vector r = a * x - rhs_orig;
    for (int i = 0; i < r.size(); ++i)
      if (!mask[i]) CHECK(std::abs(r[i]) < 1e-12);
  }
}
