#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "stokesbiot/mms.hpp"

using namespace stokesbiot;
using mms::kPi;

namespace {

// Fourth-order central differences; oracle derivatives are independent of the
// hand-coded gradient and forcing formulas.
template <class F>
double fd1(F f, double v, double h = 1e-3) {
  return (-f(v + 2 * h) + 8 * f(v + h) - 8 * f(v - h) + f(v - 2 * h)) / (12 * h);
}

template <class F>
double fd2(F f, double v, double h = 1e-3) {
  return (-f(v + 2 * h) + 16 * f(v + h) - 30 * f(v) + 16 * f(v - h) - f(v - 2 * h)) / (12 * h * h);
}

struct Scalar3 {
  double (*f)(double, double, double);
  double dx(double t, double x, double y) const {
    return fd1([&](double v) { return f(t, v, y); }, x);
  }
  double dy(double t, double x, double y) const {
    return fd1([&](double v) { return f(t, x, v); }, y);
  }
  double dt(double t, double x, double y) const {
    return fd1([&](double v) { return f(v, x, y); }, t);
  }
  double dxx(double t, double x, double y) const {
    return fd2([&](double v) { return f(t, v, y); }, x);
  }
  double dyy(double t, double x, double y) const {
    return fd2([&](double v) { return f(t, x, v); }, y);
  }
  double dxy(double t, double x, double y) const {
    return fd1([&](double v) { return fd1([&](double w) { return f(t, w, v); }, x); }, y);
  }
};

double u1(double t, double x, double y) { return mms::velocity(t, x, y)[0]; }
double u2(double t, double x, double y) { return mms::velocity(t, x, y)[1]; }
double eta1(double t, double x, double y) { return mms::displacement(t, x, y)[0]; }
double eta2(double t, double x, double y) { return mms::displacement(t, x, y)[1]; }
double xi1(double t, double x, double y) { return mms::structure_velocity(t, x, y)[0]; }
double xi2(double t, double x, double y) { return mms::structure_velocity(t, x, y)[1]; }
double pf(double t, double x, double y) { return mms::pressure(t, x, y); }
double phi(double t, double x, double y) { return mms::pore_pressure(t, x, y); }

}  // namespace

TEST_CASE("exact field point values") {
  const auto u0 = mms::velocity(0.0, 0.0, 0.0);
  CHECK(u0[0] == Catch::Approx(kPi).epsilon(1e-14));
  CHECK(u0[1] == Catch::Approx(kPi).epsilon(1e-14));

  const auto uhalf = mms::velocity(0.5, 0.37, -0.6);
  CHECK(std::abs(uhalf[0]) < 1e-14);
  CHECK(std::abs(uhalf[1]) < 1e-14);

  CHECK(mms::pressure(0.0, 0.5, 0.0) == Catch::Approx(1.0 + 2.0 * kPi).epsilon(1e-14));

  for (double t : {0.0, 0.3, 0.9})
    for (double y : {-0.9, -0.4, 0.0}) CHECK(mms::pore_pressure(t, 0.0, y) == 0.0);

  const auto eta0 = mms::displacement(0.0, 0.7, -0.2);
  CHECK(eta0[0] == 0.0);
  CHECK(eta0[1] == 0.0);

  const auto etah = mms::displacement(0.5, 1.0, 0.0);
  CHECK(etah[0] == Catch::Approx(-2.0).epsilon(1e-14));
  CHECK(etah[1] == Catch::Approx(1.0).epsilon(1e-14));

  CHECK(mms::divergence_source(0.0) == Catch::Approx(-2.0 * kPi).epsilon(1e-14));
  CHECK(mms::darcy_source(0.0, 0.5, 0.0) ==
        Catch::Approx(1.0 - 2.0 * kPi + 1.25 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("pressure and pore pressure differ by the time-dependent constant") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double t = dist(rng), x = dist(rng), y = dist(rng) - 0.5;
    CHECK(mms::pressure(t, x, y) - mms::pore_pressure(t, x, y) ==
          Catch::Approx(2.0 * kPi * std::cos(kPi * t)).epsilon(1e-13));
  }
}

TEST_CASE("structure velocity is the time derivative of the displacement") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  for (int k = 0; k < 20; ++k) {
    const double t = dist(rng), x = dist(rng), y = -dist(rng);
    const double h = 1e-6;
    const auto ep = mms::displacement(t + h, x, y);
    const auto em = mms::displacement(t - h, x, y);
    const auto xi = mms::structure_velocity(t, x, y);
    CHECK(std::abs((ep[0] - em[0]) / (2 * h) - xi[0]) < 1e-6);
    CHECK(std::abs((ep[1] - em[1]) / (2 * h) - xi[1]) < 1e-6);
  }
  // kinematic consistency at t = 0: structure velocity equals fluid velocity
  const auto xival = mms::structure_velocity(0.0, 0.3, -0.4);
  const auto uval = mms::velocity(0.0, 0.3, -0.4);
  CHECK(xival[0] == uval[0]);
  CHECK(xival[1] == uval[1]);
}

TEST_CASE("hand-coded gradients match finite differences") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  const Scalar3 fields[2] = {{u1}, {u2}};
  for (int k = 0; k < 10; ++k) {
    const double t = dist(rng), x = dist(rng), y = dist(rng);
    const auto gu = mms::grad_velocity(t, x, y);
    CHECK(std::abs(fields[0].dx(t, x, y) - gu[0][0]) < 1e-9);
    CHECK(std::abs(fields[0].dy(t, x, y) - gu[0][1]) < 1e-9);
    CHECK(std::abs(fields[1].dx(t, x, y) - gu[1][0]) < 1e-9);
    CHECK(std::abs(fields[1].dy(t, x, y) - gu[1][1]) < 1e-9);

    const auto ge = mms::grad_displacement(t, x, -y);
    const Scalar3 e1{eta1}, e2{eta2};
    CHECK(std::abs(e1.dx(t, x, -y) - ge[0][0]) < 1e-9);
    CHECK(std::abs(e1.dy(t, x, -y) - ge[0][1]) < 1e-9);
    CHECK(std::abs(e2.dx(t, x, -y) - ge[1][0]) < 1e-9);
    CHECK(std::abs(e2.dy(t, x, -y) - ge[1][1]) < 1e-9);

    const auto gp = mms::grad_pore_pressure(t, x, -y);
    const Scalar3 ph{phi};
    CHECK(std::abs(ph.dx(t, x, -y) - gp[0]) < 1e-9);
    CHECK(std::abs(ph.dy(t, x, -y) - gp[1]) < 1e-9);
  }
}

TEST_CASE("divergence of the velocity equals the divergence source") {
  const Scalar3 f1{u1}, f2{u2};
  const double div = f1.dx(0.0, 0.3, 0.7) + f2.dy(0.0, 0.3, 0.7);
  CHECK(std::abs(div + 2.0 * kPi) < 1e-9);
  // analytic route: the closed-form gradient trace equals g_f at any point
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double t = dist(rng), x = dist(rng), y = dist(rng);
    const auto g = mms::grad_velocity(t, x, y);
    CHECK(std::abs(g[0][0] + g[1][1] - mms::divergence_source(t)) < 1e-13);
  }
}

TEST_CASE("strong-form residuals vanish at random interior points") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> dist(0.1, 0.9);
  const Scalar3 f_u1{u1}, f_u2{u2}, f_p{pf}, f_e1{eta1}, f_e2{eta2}, f_x1{xi1}, f_x2{xi2}, f_phi{phi};

  for (int k = 0; k < 20; ++k) {
    const double t = dist(rng);
    {
      const double x = dist(rng), y = dist(rng);  // fluid domain
      // momentum: rho_f du/dt = div sigma_f + F_f, with
      // div sigma_f = mu (lap u + grad div u) - grad p
      const double r1 = f_u1.dt(t, x, y) -
                        (2.0 * f_u1.dxx(t, x, y) + f_u1.dyy(t, x, y) + f_u2.dxy(t, x, y) -
                         f_p.dx(t, x, y)) -
                        mms::fluid_body_force(t, x, y)[0];
      const double r2 = f_u2.dt(t, x, y) -
                        (f_u2.dxx(t, x, y) + 2.0 * f_u2.dyy(t, x, y) + f_u1.dxy(t, x, y) -
                         f_p.dy(t, x, y)) -
                        mms::fluid_body_force(t, x, y)[1];
      CHECK(std::abs(r1) < 1e-8);
      CHECK(std::abs(r2) < 1e-8);
      const double rdiv = f_u1.dx(t, x, y) + f_u2.dy(t, x, y) - mms::divergence_source(t);
      CHECK(std::abs(rdiv) < 1e-8);
    }
    {
      const double x = dist(rng), y = -dist(rng);  // poroelastic domain
      // elasticity: rho_p dxi/dt = div sigma_p + F_e, with
      // div sigma_p = mu_p (lap eta + grad div eta) + lambda_p grad div eta - alpha grad phi
      const double r1 = f_x1.dt(t, x, y) -
                        (3.0 * f_e1.dxx(t, x, y) + f_e1.dyy(t, x, y) + 2.0 * f_e2.dxy(t, x, y) -
                         f_phi.dx(t, x, y)) -
                        mms::elastic_body_force(t, x, y)[0];
      const double r2 = f_x2.dt(t, x, y) -
                        (f_e2.dxx(t, x, y) + 3.0 * f_e2.dyy(t, x, y) + 2.0 * f_e1.dxy(t, x, y) -
                         f_phi.dy(t, x, y)) -
                        mms::elastic_body_force(t, x, y)[1];
      CHECK(std::abs(r1) < 1e-8);
      CHECK(std::abs(r2) < 1e-8);
      // Darcy: C0 dphi/dt + alpha div xi - lap phi = F_d
      const double rd = f_phi.dt(t, x, y) + f_x1.dx(t, x, y) + f_x2.dy(t, x, y) -
                        (f_phi.dxx(t, x, y) + f_phi.dyy(t, x, y)) - mms::darcy_source(t, x, y);
      CHECK(std::abs(rd) < 1e-8);
    }
  }
}

TEST_CASE("interface condition audit is reported") {
  for (double t : {0.0, 0.4, 1.0}) {
    const auto audit = mms::interface_condition_residuals(t);
    INFO("t = " << t << ": mass flux " << audit.mass_flux << ", tangential slip "
                << audit.tangential_slip << ", normal stress " << audit.normal_stress
                << ", stress balance " << audit.stress_balance);
    CHECK(std::isfinite(audit.mass_flux));
    CHECK(std::isfinite(audit.tangential_slip));
    CHECK(std::isfinite(audit.normal_stress));
    CHECK(std::isfinite(audit.stress_balance));
  }
}
