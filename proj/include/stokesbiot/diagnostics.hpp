#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stokesbiot/assembly.hpp"
#include "stokesbiot/mms.hpp"
#include "stokesbiot/subproblems.hpp"

namespace stokesbiot {

// ---------------------------------------------------------------------------
// Field error norms. The exact function is evaluated at quadrature points
// directly (no interpolation onto the discrete space).

template <class F>
double l2_error(const Mesh2D& mesh, const DofMap& dm, const Vector& coeffs, F&& exact, double t) {
  if (dm.components != 1) throw std::invalid_argument("l2_error: scalar dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  double acc = 0;
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(qr[q].xi, qr[q].eta);
      double vh = 0;
      for (int a = 0; a < qt.nb; ++a) vh += coeffs[cd[a]] * qt.vals[q][a];
      const double d = vh - exact(t, x[0], x[1]);
      acc += qr[q].w * g.det * d * d;
    }
  }
  return std::sqrt(acc);
}

template <class F>
double l2_error_vector(const Mesh2D& mesh, const DofMap& dm, const Vector& coeffs, F&& exact,
                       double t) {
  if (dm.components != 2) throw std::invalid_argument("l2_error_vector: vector dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  double acc = 0;
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(qr[q].xi, qr[q].eta);
      const std::array<double, 2> ve = exact(t, x[0], x[1]);
      double d0 = -ve[0], d1 = -ve[1];
      for (int a = 0; a < qt.nb; ++a) {
        d0 += coeffs[dm.vector_dof(0, cd[a])] * qt.vals[q][a];
        d1 += coeffs[dm.vector_dof(1, cd[a])] * qt.vals[q][a];
      }
      acc += qr[q].w * g.det * (d0 * d0 + d1 * d1);
    }
  }
  return std::sqrt(acc);
}

// Full H1 norm of the error, from exact value and gradient callables.
template <class F, class GradF>
double h1_error(const Mesh2D& mesh, const DofMap& dm, const Vector& coeffs, F&& exact,
                GradF&& exact_grad, double t) {
  if (dm.components != 1) throw std::invalid_argument("h1_error: scalar dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  double acc = 0;
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(qr[q].xi, qr[q].eta);
      const std::array<double, 2> ge = exact_grad(t, x[0], x[1]);
      double vh = -exact(t, x[0], x[1]);
      double gx = -ge[0], gy = -ge[1];
      double pg[6][2];
      for (int a = 0; a < qt.nb; ++a) g.physical_grad(qt.grads[q][a], pg[a]);
      for (int a = 0; a < qt.nb; ++a) {
        vh += coeffs[cd[a]] * qt.vals[q][a];
        gx += coeffs[cd[a]] * pg[a][0];
        gy += coeffs[cd[a]] * pg[a][1];
      }
      acc += qr[q].w * g.det * (vh * vh + gx * gx + gy * gy);
    }
  }
  return std::sqrt(acc);
}

template <class F, class GradF>
double h1_error_vector(const Mesh2D& mesh, const DofMap& dm, const Vector& coeffs, F&& exact,
                       GradF&& exact_grad, double t) {
  if (dm.components != 2) throw std::invalid_argument("h1_error_vector: vector dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  double acc = 0;
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(qr[q].xi, qr[q].eta);
      const std::array<double, 2> ve = exact(t, x[0], x[1]);
      const std::array<std::array<double, 2>, 2> ge = exact_grad(t, x[0], x[1]);
      double d[2] = {-ve[0], -ve[1]};
      double gd[2][2] = {{-ge[0][0], -ge[0][1]}, {-ge[1][0], -ge[1][1]}};
      double pg[6][2];
      for (int a = 0; a < qt.nb; ++a) g.physical_grad(qt.grads[q][a], pg[a]);
      for (int a = 0; a < qt.nb; ++a)
        for (int c = 0; c < 2; ++c) {
          const double ca = coeffs[dm.vector_dof(c, cd[a])];
          d[c] += ca * qt.vals[q][a];
          gd[c][0] += ca * pg[a][0];
          gd[c][1] += ca * pg[a][1];
        }
      acc += qr[q].w * g.det *
             (d[0] * d[0] + d[1] * d[1] + gd[0][0] * gd[0][0] + gd[0][1] * gd[0][1] +
              gd[1][0] * gd[1][0] + gd[1][1] * gd[1][1]);
    }
  }
  return std::sqrt(acc);
}

// Nodal interpolation onto the discrete space.
template <class F>
Vector interpolate_scalar(const DofMap& dm, F&& f, double t) {
  Vector v(dm.count);
  for (int i = 0; i < dm.count; ++i) v[i] = f(t, dm.node_coords[i][0], dm.node_coords[i][1]);
  return v;
}

template <class F>
Vector interpolate_vector(const DofMap& dm, F&& f, double t) {
  Vector v(dm.total());
  for (int i = 0; i < dm.count; ++i) {
    const std::array<double, 2> val = f(t, dm.node_coords[i][0], dm.node_coords[i][1]);
    v[dm.vector_dof(0, i)] = val[0];
    v[dm.vector_dof(1, i)] = val[1];
  }
  return v;
}

// ---------------------------------------------------------------------------
// Ritz projections. Each solves the time-independent problem defined by the
// same bilinear form as the corresponding subproblem (without mass terms),
// with the continuous fields' action on the right-hand side computed by
// quadrature on the exact functions.

struct StokesProjection {
  Vector u, p;
  double galerkin_residual;  // free-dof residual relative to the system scale
};

template <class UF, class GradUF, class PF>
StokesProjection ritz_project_stokes(const Discretization& disc, const PhysicalParams& params,
                                     UF&& u_fn, GradUF&& grad_u_fn, PF&& p_fn, double t) {
  const DofMap& vdm = disc.velocity_dm;
  const DofMap& qdm = disc.pressure_dm;
  const int nu = vdm.total(), np = qdm.total();
  const auto v_side = disc.velocity_side();
  const auto& nf = InterfaceGeometry::fluid_normal;
  const auto& tau = InterfaceGeometry::tangent;

  const SparseMatrix a_sym = assemble_sym_grad_stiffness(disc.fluid_mesh, vdm, params.mu_f);
  const SparseMatrix g_ff = assemble_interface_tangential(v_side, v_side, tau, params.gamma);
  const SparseMatrix n_ff = assemble_interface_normal(v_side, nf, v_side, nf, params.L);
  const SparseMatrix c = assemble_pressure_div(disc.fluid_mesh, vdm, qdm);

  std::vector<Triplet> trips;
  detail::add_block(trips, a_sym, 0, 0);
  detail::add_block(trips, g_ff, 0, 0);
  detail::add_block(trips, n_ff, 0, 0);
  detail::add_block(trips, SparseMatrix(c.transpose()), 0, nu, -1.0);
  detail::add_block(trips, c, nu, 0, 1.0);
  const SparseMatrix lhs = from_triplets(nu + np, nu + np, trips);

  Vector rhs(nu + np);
  rhs.head(nu) =
      assemble_sym_grad_load(disc.fluid_mesh, vdm, params.mu_f, grad_u_fn, t) +
      assemble_div_load(
          disc.fluid_mesh, vdm, -1.0, [&](double tt, double x, double y) { return p_fn(tt, x, y); }, t) +
      assemble_interface_vector_load(
          v_side, tau, params.gamma,
          [&](double tt, double x, double y) {
            const auto u = u_fn(tt, x, y);
            return u[0] * tau[0] + u[1] * tau[1];
          },
          t) +
      assemble_interface_vector_load(
          v_side, nf, params.L,
          [&](double tt, double x, double y) {
            const auto u = u_fn(tt, x, y);
            return u[0] * nf[0] + u[1] * nf[1];
          },
          t);
  rhs.tail(np) = assemble_load(
      disc.fluid_mesh, qdm,
      [&](double tt, double x, double y) {
        const auto g = grad_u_fn(tt, x, y);
        return g[0][0] + g[1][1];
      },
      t);

  std::vector<char> mask(nu + np, 0);
  for (int s : disc.velocity_bc) {
    mask[vdm.vector_dof(0, s)] = 1;
    mask[vdm.vector_dof(1, s)] = 1;
  }
  Vector g = Vector::Zero(nu + np);
  detail::fill_vector_bc(g, vdm, disc.velocity_bc, u_fn, t);

  Vector b = rhs;
  apply_dirichlet_rhs(lhs, mask, g, b);
  const Factorization fact(constrained_matrix(lhs, mask));
  const Vector x = fact.solve(b);

  const Vector r = lhs * x - rhs;
  double rmax = 0;
  for (int i = 0; i < r.size(); ++i)
    if (!mask[i]) rmax = std::max(rmax, std::abs(r[i]));
  const double scale = inf_norm(lhs) * x.cwiseAbs().maxCoeff() + 1.0;
  return {x.head(nu), x.tail(np), rmax / scale};
}

struct ScalarProjection {
  Vector coeffs;
  double galerkin_residual;
};

// Elasticity projection; the exterior Dirichlet constraints of the solver
// remove the rigid-body kernel.
template <class EtaF, class GradEtaF>
ScalarProjection ritz_project_elasticity(const Discretization& disc, const PhysicalParams& params,
                                         EtaF&& eta_fn, GradEtaF&& grad_eta_fn, double t) {
  const DofMap& sdm = disc.structure_dm;
  const int n = sdm.total();
  SparseMatrix lhs = assemble_sym_grad_stiffness(disc.poro_mesh, sdm, params.mu_p);
  lhs += assemble_div_div(disc.poro_mesh, sdm, params.lambda_p);

  Vector rhs = assemble_sym_grad_load(disc.poro_mesh, sdm, params.mu_p, grad_eta_fn, t) +
               assemble_div_load(
                   disc.poro_mesh, sdm, params.lambda_p,
                   [&](double tt, double x, double y) {
                     const auto g = grad_eta_fn(tt, x, y);
                     return g[0][0] + g[1][1];
                   },
                   t);

  std::vector<char> mask(n, 0);
  for (int s : disc.structure_bc) {
    mask[sdm.vector_dof(0, s)] = 1;
    mask[sdm.vector_dof(1, s)] = 1;
  }
  Vector g = Vector::Zero(n);
  detail::fill_vector_bc(g, sdm, disc.structure_bc, eta_fn, t);

  Vector b = rhs;
  apply_dirichlet_rhs(lhs, mask, g, b);
  const Factorization fact(constrained_matrix(lhs, mask));
  const Vector x = fact.solve(b);

  const Vector r = lhs * x - rhs;
  double rmax = 0;
  for (int i = 0; i < r.size(); ++i)
    if (!mask[i]) rmax = std::max(rmax, std::abs(r[i]));
  const double scale = inf_norm(lhs) * x.cwiseAbs().maxCoeff() + 1.0;
  return {x, rmax / scale};
}

// Pore-pressure projection; the (1/L) interface term fixes the additive
// gauge, so no essential constraints are applied.
template <class PhiF, class GradPhiF>
ScalarProjection ritz_project_darcy(const Discretization& disc, const PhysicalParams& params,
                                    PhiF&& phi_fn, GradPhiF&& grad_phi_fn, double t) {
  const DofMap& ddm = disc.darcy_dm;
  const auto phi_side = disc.darcy_side();
  SparseMatrix lhs = assemble_scalar_stiffness(disc.poro_mesh, ddm, params.K);
  lhs += assemble_interface_scalar(phi_side, phi_side, 1.0 / params.L);

  const Vector rhs = assemble_scalar_stiffness_load(disc.poro_mesh, ddm, params.K, grad_phi_fn, t) +
                     assemble_interface_scalar_load(phi_side, 1.0 / params.L, phi_fn, t);

  const Factorization fact(lhs);
  const Vector x = fact.solve(rhs);
  const Vector r = lhs * x - rhs;
  const double scale = inf_norm(lhs) * x.cwiseAbs().maxCoeff() + 1.0;
  return {x, r.cwiseAbs().maxCoeff() / scale};
}

// ---------------------------------------------------------------------------
// Discrete energy quantities. The formulas are evaluated on whatever fields
// the caller passes; for a homogeneous-data run the discrete fields coincide
// with the error fields and the per-step identity
//   X_{n+1}^2 - X_n^2 + Y_{n+1}^2 + Z_{n+1} = 0
// holds up to solver roundoff.

struct EnergyRecord {
  double X;        // energy after the step
  double Y;        // increments plus dissipation over the step
  double Z;        // mixed interface term
  double F_resid;  // X_{n+1}^2 - X_n^2 + Y_{n+1}^2 + Z_{n+1}
};

class EnergyMatrices {
 public:
  EnergyMatrices(const Discretization& disc, const PhysicalParams& params) {
    const auto v_side = disc.velocity_side();
    const auto s_side = disc.structure_side();
    const auto phi_side = disc.darcy_side();
    const auto& nf = InterfaceGeometry::fluid_normal;
    const auto& np = InterfaceGeometry::poro_normal;
    const auto& tau = InterfaceGeometry::tangent;

    m_u_ = assemble_mass(disc.fluid_mesh, disc.velocity_dm, params.rho_f);
    a_f_ = assemble_sym_grad_stiffness(disc.fluid_mesh, disc.velocity_dm, params.mu_f);
    m_xi_ = assemble_mass(disc.poro_mesh, disc.structure_dm, params.rho_p);
    a_p_ = assemble_sym_grad_stiffness(disc.poro_mesh, disc.structure_dm, params.mu_p);
    b_p_ = assemble_div_div(disc.poro_mesh, disc.structure_dm, params.lambda_p);
    m_phi_ = assemble_mass(disc.poro_mesh, disc.darcy_dm, params.C0);
    k_phi_ = assemble_scalar_stiffness(disc.poro_mesh, disc.darcy_dm, params.K);
    g_ff_ = assemble_interface_tangential(v_side, v_side, tau, params.gamma);
    g_pp_ = assemble_interface_tangential(s_side, s_side, tau, params.gamma);
    g_fp_ = assemble_interface_tangential(v_side, s_side, tau, params.gamma);
    n_ff_ = assemble_interface_normal(v_side, nf, v_side, nf, params.L);
    n_pp_ = assemble_interface_normal(s_side, np, s_side, np, 1.0);
    n_phiphi_ = assemble_interface_scalar(phi_side, phi_side, 1.0 / params.L);
    z_uphi_ = assemble_interface_normal(v_side, nf, phi_side, 1.0);  // <phi, u.n_f>
  }

  // X >= 0: kinetic and elastic energy plus dt-weighted interface terms.
  double energy_X(const State& s, double dt) const {
    const double x2 = qf(m_u_, s.u) + qf(m_xi_, s.xi) + qf(a_p_, s.eta) + qf(b_p_, s.eta) +
                      qf(m_phi_, s.phi) +
                      dt * (qf(g_ff_, s.u) + qf(g_pp_, s.xi) + qf(n_ff_, s.u) + qf(n_pp_, s.xi) +
                            qf(n_phiphi_, s.phi));
    return std::sqrt(std::max(x2, 0.0));
  }

  // Y >= 0: field increments, dissipation, and the cross-lagged tangential
  // and normal increment terms over one step (s = level n, prev = n-1).
  double energy_Y(const State& s, const State& prev, double dt) const {
    const Vector du = s.u - prev.u;
    const Vector dxi = s.xi - prev.xi;
    const Vector deta = s.eta - prev.eta;
    const Vector dphi = s.phi - prev.phi;
    double y2 = qf(m_u_, du) + qf(m_xi_, dxi) + qf(a_p_, deta) + qf(b_p_, deta) + qf(m_phi_, dphi);
    y2 += 2.0 * dt * qf(a_f_, s.u) + 2.0 * dt * qf(k_phi_, s.phi);
    y2 += dt * (qf(g_ff_, s.u) - 2.0 * s.u.dot(g_fp_ * prev.xi) + qf(g_pp_, prev.xi));
    y2 += dt * (qf(g_pp_, s.xi) - 2.0 * prev.u.dot(g_fp_ * s.xi) + qf(g_ff_, prev.u));
    y2 += dt * (qf(n_ff_, du) + qf(n_pp_, dxi) + qf(n_phiphi_, dphi));
    return std::sqrt(std::max(y2, 0.0));
  }

  // Mixed term pairing the lagged pore pressure and normal velocity traces.
  double energy_Z(const State& s, const State& prev, double dt) const {
    const Vector du = s.u - prev.u;
    const Vector dphi = s.phi - prev.phi;
    return 2.0 * dt * (du.dot(z_uphi_ * prev.phi) - prev.u.dot(z_uphi_ * dphi));
  }

  EnergyRecord record(const State& s, const State& prev, double dt) const {
    EnergyRecord r;
    r.X = energy_X(s, dt);
    r.Y = energy_Y(s, prev, dt);
    r.Z = energy_Z(s, prev, dt);
    const double xp = energy_X(prev, dt);
    r.F_resid = r.X * r.X - xp * xp + r.Y * r.Y + r.Z;
    return r;
  }

 private:
  static double qf(const SparseMatrix& a, const Vector& x) { return x.dot(a * x); }

  SparseMatrix m_u_, a_f_, m_xi_, a_p_, b_p_, m_phi_, k_phi_;
  SparseMatrix g_ff_, g_pp_, g_fp_, n_ff_, n_pp_, n_phiphi_, z_uphi_;
};

// Max relative identity residual over a zero-data trajectory.
inline double energy_identity_residual(const std::vector<State>& trajectory,
                                       const EnergyMatrices& em, double dt) {
  if (trajectory.size() < 2)
    throw std::invalid_argument("energy_identity_residual: need at least two states");
  double worst = 0;
  for (size_t k = 0; k + 1 < trajectory.size(); ++k) {
    const EnergyRecord r = em.record(trajectory[k + 1], trajectory[k], dt);
    const double xn = em.energy_X(trajectory[k], dt);
    worst = std::max(worst, std::abs(r.F_resid) / std::max(xn * xn, 1.0));
  }
  return worst;
}

// rate_i = log(e_i / e_{i+1}) / log(factor)
inline std::vector<double> convergence_rates(const std::vector<double>& errors, double factor = 2.0) {
  if (errors.size() < 2) throw std::invalid_argument("convergence_rates: need at least two errors");
  if (factor <= 1.0) throw std::invalid_argument("convergence_rates: factor must exceed 1");
  for (double e : errors)
    if (!(e > 0)) throw std::invalid_argument("convergence_rates: errors must be positive");
  std::vector<double> rates;
  rates.reserve(errors.size() - 1);
  for (size_t i = 0; i + 1 < errors.size(); ++i)
    rates.push_back(std::log(errors[i] / errors[i + 1]) / std::log(factor));
  return rates;
}

// Final-time L2 errors of the five fields against the manufactured solution.
struct ErrorReport {
  int n = 0;
  double dt = 0, h = 0, t = 0;
  double e_eta = 0, e_xi = 0, e_phi = 0, e_u = 0, e_p = 0;
};

inline ErrorReport compute_errors(const Discretization& disc, const State& s, double t) {
  ErrorReport r;
  r.n = disc.fluid_mesh.n;
  r.h = disc.fluid_mesh.h;
  r.t = t;
  r.e_eta = l2_error_vector(disc.poro_mesh, disc.structure_dm, s.eta,
                            [](double tt, double x, double y) { return mms::displacement(tt, x, y); }, t);
  r.e_xi = l2_error_vector(
      disc.poro_mesh, disc.structure_dm, s.xi,
      [](double tt, double x, double y) { return mms::structure_velocity(tt, x, y); }, t);
  r.e_phi = l2_error(disc.poro_mesh, disc.darcy_dm, s.phi,
                     [](double tt, double x, double y) { return mms::pore_pressure(tt, x, y); }, t);
  r.e_u = l2_error_vector(disc.fluid_mesh, disc.velocity_dm, s.u,
                          [](double tt, double x, double y) { return mms::velocity(tt, x, y); }, t);
  r.e_p = l2_error(disc.fluid_mesh, disc.pressure_dm, s.p,
                   [](double tt, double x, double y) { return mms::pressure(tt, x, y); }, t);
  return r;
}

}  // namespace stokesbiot
