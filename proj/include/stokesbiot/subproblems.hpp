#pragma once

#include <array>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stokesbiot/assembly.hpp"
#include "stokesbiot/dofmap.hpp"
#include "stokesbiot/linalg.hpp"
#include "stokesbiot/mesh.hpp"
#include "stokesbiot/mms.hpp"

namespace stokesbiot {

struct PhysicalParams {
  double rho_f = 1.0, mu_f = 1.0;
  double rho_p = 1.0, mu_p = 1.0, lambda_p = 1.0;
  double alpha = 1.0, C0 = 1.0;
  std::array<std::array<double, 2>, 2> K = {{{1.0, 0.0}, {0.0, 1.0}}};
  double gamma = 1.0;  // tangential slip penalty
  double L = 1.0;      // normal penalty
  double dt = 0.0;

  void validate() const {
    if (!(gamma > 0) || !(L > 0) || !(dt > 0))
      throw std::invalid_argument("PhysicalParams: gamma, L and dt must be positive");
    if (rho_f < 0 || mu_f < 0 || rho_p < 0 || mu_p < 0 || lambda_p < 0 || C0 < 0)
      throw std::invalid_argument("PhysicalParams: densities and moduli must be nonnegative");
    if (std::abs(K[0][1] - K[1][0]) > 1e-14 || K[0][0] <= 0 ||
        K[0][0] * K[1][1] - K[0][1] * K[1][0] <= 0)
      throw std::invalid_argument("PhysicalParams: K must be symmetric positive definite");
  }
};

// The five discrete fields at one time level as coefficient vectors.
struct State {
  Vector u;    // fluid velocity, P2 vector on the fluid mesh
  Vector p;    // fluid pressure, P1 on the fluid mesh
  Vector eta;  // displacement, P2 vector on the poro mesh
  Vector xi;   // structure velocity, P2 vector on the poro mesh
  Vector phi;  // pore pressure, P1 on the poro mesh
  double t = 0.0;
};

// Meshes, dof maps and interface pairings shared by both subproblems.
// Self-referencing (dof maps point at the meshes), hence pinned in memory.
struct Discretization {
  Mesh2D fluid_mesh;
  Mesh2D poro_mesh;
  DofMap velocity_dm;   // P2 vector, fluid
  DofMap pressure_dm;   // P1 scalar, fluid
  DofMap structure_dm;  // P2 vector, poro (displacement and velocity)
  DofMap darcy_dm;      // P1 scalar, poro
  std::vector<int> velocity_bc;   // scalar dofs on the exterior fluid boundary
  std::vector<int> structure_bc;  // scalar dofs on the exterior poro boundary
  std::vector<int> darcy_bc;

  explicit Discretization(int n)
      : fluid_mesh(build_rect_mesh(n, Region::Fluid)),
        poro_mesh(build_rect_mesh(n, Region::Poro)),
        velocity_dm(DofMap::build(fluid_mesh, 2, 2)),
        pressure_dm(DofMap::build(fluid_mesh, 1, 1)),
        structure_dm(DofMap::build(poro_mesh, 2, 2)),
        darcy_dm(DofMap::build(poro_mesh, 1, 1)),
        velocity_bc(tagged_scalar_dofs(velocity_dm, {EdgeTag::ExteriorFluid})),
        structure_bc(tagged_scalar_dofs(structure_dm, {EdgeTag::ExteriorPoro})),
        darcy_bc(tagged_scalar_dofs(darcy_dm, {EdgeTag::ExteriorPoro})) {}

  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;

  InterfaceSide velocity_side() const { return make_interface_side(fluid_mesh, velocity_dm); }
  InterfaceSide structure_side() const { return make_interface_side(poro_mesh, structure_dm); }
  InterfaceSide darcy_side() const { return make_interface_side(poro_mesh, darcy_dm); }

  State zero_state() const {
    State s;
    s.u = Vector::Zero(velocity_dm.total());
    s.p = Vector::Zero(pressure_dm.total());
    s.eta = Vector::Zero(structure_dm.total());
    s.xi = Vector::Zero(structure_dm.total());
    s.phi = Vector::Zero(darcy_dm.total());
    return s;
  }
};

// Forcing terms and Dirichlet data as functions of (t, x, y). Zero data for
// the stability runs, manufactured data for the convergence runs.
struct ProblemData {
  std::function<std::array<double, 2>(double, double, double)> fluid_force;
  std::function<double(double, double, double)> div_source;
  std::function<std::array<double, 2>(double, double, double)> elastic_force;
  std::function<double(double, double, double)> darcy_source;
  std::function<std::array<double, 2>(double, double, double)> velocity_dirichlet;
  std::function<std::array<double, 2>(double, double, double)> structure_velocity_dirichlet;
  std::function<double(double, double, double)> pore_pressure_dirichlet;

  static ProblemData zero() {
    ProblemData d;
    d.fluid_force = [](double, double, double) { return std::array<double, 2>{0.0, 0.0}; };
    d.div_source = [](double, double, double) { return 0.0; };
    d.elastic_force = d.fluid_force;
    d.darcy_source = d.div_source;
    d.velocity_dirichlet = d.fluid_force;
    d.structure_velocity_dirichlet = d.fluid_force;
    d.pore_pressure_dirichlet = d.div_source;
    return d;
  }

  static ProblemData manufactured() {
    ProblemData d;
    d.fluid_force = [](double t, double x, double y) { return mms::fluid_body_force(t, x, y); };
    d.div_source = [](double t, double, double) { return mms::divergence_source(t); };
    d.elastic_force = [](double t, double x, double y) { return mms::elastic_body_force(t, x, y); };
    d.darcy_source = [](double t, double x, double y) { return mms::darcy_source(t, x, y); };
    d.velocity_dirichlet = [](double t, double x, double y) { return mms::velocity(t, x, y); };
    d.structure_velocity_dirichlet = [](double t, double x, double y) {
      return mms::structure_velocity(t, x, y);
    };
    d.pore_pressure_dirichlet = [](double t, double x, double y) {
      return mms::pore_pressure(t, x, y);
    };
    return d;
  }
};

namespace detail {

inline void add_block(std::vector<Triplet>& trips, const SparseMatrix& m, int row_off, int col_off,
                      double scale = 1.0) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      trips.emplace_back(row_off + static_cast<int>(it.row()), col_off + static_cast<int>(it.col()),
                         scale * it.value());
}

// Boundary values for the constrained scalar dofs of a (possibly vector)
// field, written into the block-offset positions of g.
template <class F>
void fill_vector_bc(Vector& g, const DofMap& dm, const std::vector<int>& scalar_dofs, F&& fn,
                    double t, int offset = 0) {
  for (int s : scalar_dofs) {
    const auto& x = dm.node_coords[s];
    const std::array<double, 2> v = fn(t, x[0], x[1]);
    g[offset + dm.vector_dof(0, s)] = v[0];
    g[offset + dm.vector_dof(1, s)] = v[1];
  }
}

template <class F>
void fill_scalar_bc(Vector& g, const DofMap& dm, const std::vector<int>& scalar_dofs, F&& fn,
                    double t, int offset) {
  for (int s : scalar_dofs) {
    const auto& x = dm.node_coords[s];
    g[offset + s] = fn(t, x[0], x[1]);
  }
}

}  // namespace detail

// Discrete fluid subproblem over (u, p). The block operator is assembled and
// factorized once; every step reuses the factorization and only rebuilds the
// right-hand side from time-level-n data.
class FluidSystem {
 public:
  FluidSystem(const Discretization& disc, const PhysicalParams& params)
      : disc_(&disc), params_(params) {
    params.validate();
    const DofMap& vdm = disc.velocity_dm;
    const DofMap& qdm = disc.pressure_dm;
    nu_ = vdm.total();
    np_ = qdm.total();

    const auto v_side = disc.velocity_side();
    const auto s_side = disc.structure_side();
    const auto phi_side = disc.darcy_side();
    const auto& nf = InterfaceGeometry::fluid_normal;
    const auto& tau = InterfaceGeometry::tangent;

    mass_u_dt_ = assemble_mass(disc.fluid_mesh, vdm, params.rho_f);
    mass_u_dt_ *= 1.0 / params.dt;
    g_fp_ = assemble_interface_tangential(v_side, s_side, tau, params.gamma);
    n_ff_ = assemble_interface_normal(v_side, nf, v_side, nf, params.L);
    n_fphi_ = assemble_interface_normal(v_side, nf, phi_side, 1.0);

    const SparseMatrix a_sym = assemble_sym_grad_stiffness(disc.fluid_mesh, vdm, params.mu_f);
    const SparseMatrix g_ff = assemble_interface_tangential(v_side, v_side, tau, params.gamma);
    const SparseMatrix c = assemble_pressure_div(disc.fluid_mesh, vdm, qdm);

    std::vector<Triplet> trips;
    detail::add_block(trips, mass_u_dt_, 0, 0);
    detail::add_block(trips, a_sym, 0, 0);
    detail::add_block(trips, g_ff, 0, 0);
    detail::add_block(trips, n_ff_, 0, 0);
    detail::add_block(trips, SparseMatrix(c.transpose()), 0, nu_, -1.0);
    detail::add_block(trips, c, nu_, 0, 1.0);
    lhs_ = from_triplets(nu_ + np_, nu_ + np_, trips);

    mask_.assign(nu_ + np_, 0);
    for (int s : disc.velocity_bc) {
      mask_[vdm.vector_dof(0, s)] = 1;
      mask_[vdm.vector_dof(1, s)] = 1;
    }
    fact_ = std::make_unique<Factorization>(constrained_matrix(lhs_, mask_));
  }

  int velocity_size() const { return nu_; }
  int pressure_size() const { return np_; }
  const SparseMatrix& lhs() const { return lhs_; }
  const std::vector<char>& mask() const { return mask_; }

  Vector rhs(const State& prev, const ProblemData& data, double t_next) const {
    Vector b(nu_ + np_);
    b.head(nu_) = mass_u_dt_ * prev.u +
                  assemble_vector_load(disc_->fluid_mesh, disc_->velocity_dm, data.fluid_force, t_next) +
                  g_fp_ * prev.xi + n_ff_ * prev.u - n_fphi_ * prev.phi;
    b.tail(np_) = assemble_load(disc_->fluid_mesh, disc_->pressure_dm, data.div_source, t_next);
    return b;
  }

  Vector boundary_values(const ProblemData& data, double t_next) const {
    Vector g = Vector::Zero(nu_ + np_);
    detail::fill_vector_bc(g, disc_->velocity_dm, disc_->velocity_bc, data.velocity_dirichlet, t_next);
    return g;
  }

  std::pair<Vector, Vector> step(const State& prev, const ProblemData& data, double t_next) const {
    Vector b = rhs(prev, data, prev.t);
    apply_dirichlet_rhs(lhs_, mask_, boundary_values(data, prev.t), b);
    const Vector x = fact_->solve(b);
    return {x.head(nu_), x.tail(np_)};
  }

  // Residual of the unconstrained discrete equations over the free dofs,
  // relative to the natural scale of the system.
  double step_residual(const State& prev, const ProblemData& data, double t_next, const Vector& u_next,
                       const Vector& p_next) const {
    Vector x(nu_ + np_);
    x << u_next, p_next;
    const Vector r = lhs_ * x - rhs(prev, data, t_next);
    double rmax = 0;
    for (int i = 0; i < r.size(); ++i)
      if (!mask_[i]) rmax = std::max(rmax, std::abs(r[i]));
    const double scale = inf_norm(lhs_) * x.cwiseAbs().maxCoeff() + 1.0;
    return rmax / scale;
  }

 private:
  const Discretization* disc_;
  PhysicalParams params_;
  int nu_ = 0, np_ = 0;
  SparseMatrix lhs_;        // unconstrained block operator
  SparseMatrix mass_u_dt_;  // (rho_f / dt) M_u
  SparseMatrix g_fp_;       // gamma <P xi, P v>, fluid rows x poro cols
  SparseMatrix n_ff_;       // L <u.n_f, v.n_f>
  SparseMatrix n_fphi_;     // <phi, v.n_f>, fluid rows x poro phi cols
  std::vector<char> mask_;
  std::unique_ptr<Factorization> fact_;
};

// Discrete poroelastic subproblem over (xi, phi) after eliminating the
// displacement through eta^{n+1} = eta^n + dt xi^{n+1}.
class PoroSystem {
 public:
  PoroSystem(const Discretization& disc, const PhysicalParams& params)
      : disc_(&disc), params_(params) {
    params.validate();
    const DofMap& sdm = disc.structure_dm;
    const DofMap& ddm = disc.darcy_dm;
    ns_ = sdm.total();
    nphi_ = ddm.total();

    const auto v_side = disc.velocity_side();
    const auto s_side = disc.structure_side();
    const auto phi_side = disc.darcy_side();
    const auto& np = InterfaceGeometry::poro_normal;
    const auto& tau = InterfaceGeometry::tangent;

    mass_xi_dt_ = assemble_mass(disc.poro_mesh, sdm, params.rho_p);
    mass_xi_dt_ *= 1.0 / params.dt;
    mass_phi_dt_ = assemble_mass(disc.poro_mesh, ddm, params.C0);
    mass_phi_dt_ *= 1.0 / params.dt;
    a_eta_ = assemble_sym_grad_stiffness(disc.poro_mesh, sdm, params.mu_p);
    a_eta_ += assemble_div_div(disc.poro_mesh, sdm, params.lambda_p);
    g_pf_ = assemble_interface_tangential(s_side, v_side, tau, params.gamma);
    n_pp_ = assemble_interface_normal(s_side, np, s_side, np, 1.0);
    n_phiu_ = assemble_interface_normal(phi_side, v_side, np, 1.0);  // <u.n_p, psi>
    n_phiphi_L_ = assemble_interface_scalar(phi_side, phi_side, 1.0 / params.L);

    const SparseMatrix g_pp = assemble_interface_tangential(s_side, s_side, tau, params.gamma);
    const SparseMatrix n_xiphi = assemble_interface_normal(s_side, np, phi_side, 1.0);  // <phi, zeta.n_p>
    const SparseMatrix n_phixi = assemble_interface_normal(phi_side, s_side, np, 1.0);  // <xi.n_p, psi>
    const SparseMatrix c = assemble_pressure_div(disc.poro_mesh, sdm, ddm);
    const SparseMatrix k_phi = assemble_scalar_stiffness(disc.poro_mesh, ddm, params.K);

    std::vector<Triplet> trips;
    detail::add_block(trips, mass_xi_dt_, 0, 0);
    detail::add_block(trips, a_eta_, 0, 0, params.dt);
    detail::add_block(trips, g_pp, 0, 0);
    detail::add_block(trips, n_pp_, 0, 0);
    detail::add_block(trips, SparseMatrix(c.transpose()), 0, ns_, -params.alpha);
    detail::add_block(trips, n_xiphi, 0, ns_);
    detail::add_block(trips, c, ns_, 0, params.alpha);
    detail::add_block(trips, n_phixi, ns_, 0, -1.0);
    detail::add_block(trips, mass_phi_dt_, ns_, ns_);
    detail::add_block(trips, k_phi, ns_, ns_);
    detail::add_block(trips, n_phiphi_L_, ns_, ns_);
    lhs_ = from_triplets(ns_ + nphi_, ns_ + nphi_, trips);

    mask_.assign(ns_ + nphi_, 0);
    for (int s : disc.structure_bc) {
      mask_[sdm.vector_dof(0, s)] = 1;
      mask_[sdm.vector_dof(1, s)] = 1;
    }
    for (int s : disc.darcy_bc) mask_[ns_ + s] = 1;
    fact_ = std::make_unique<Factorization>(constrained_matrix(lhs_, mask_));
  }

  int structure_size() const { return ns_; }
  int darcy_size() const { return nphi_; }
  const SparseMatrix& lhs() const { return lhs_; }
  const std::vector<char>& mask() const { return mask_; }

  Vector rhs(const State& prev, const ProblemData& data, double t_next) const {
    Vector b(ns_ + nphi_);
    b.head(ns_) = mass_xi_dt_ * prev.xi - a_eta_ * prev.eta +
                  assemble_vector_load(disc_->poro_mesh, disc_->structure_dm, data.elastic_force, t_next) +
                  g_pf_ * prev.u + n_pp_ * prev.xi;
    b.tail(nphi_) = mass_phi_dt_ * prev.phi +
                    assemble_load(disc_->poro_mesh, disc_->darcy_dm, data.darcy_source, t_next) -
                    n_phiu_ * prev.u + n_phiphi_L_ * prev.phi;
    return b;
  }

  Vector boundary_values(const ProblemData& data, double t_next) const {
    Vector g = Vector::Zero(ns_ + nphi_);
    detail::fill_vector_bc(g, disc_->structure_dm, disc_->structure_bc,
                           data.structure_velocity_dirichlet, t_next);
    detail::fill_scalar_bc(g, disc_->darcy_dm, disc_->darcy_bc, data.pore_pressure_dirichlet, t_next,
                           ns_);
    return g;
  }

  // Returns (eta, xi, phi) at the next time level; the displacement follows
  // the update relation exactly, coefficient-wise.
  std::array<Vector, 3> step(const State& prev, const ProblemData& data, double t_next) const {
    Vector b = rhs(prev, data, prev.t);
    apply_dirichlet_rhs(lhs_, mask_, boundary_values(data, prev.t), b);
    const Vector x = fact_->solve(b);
    const Vector xi_next = x.head(ns_);
    const Vector phi_next = x.tail(nphi_);
    const Vector eta_next = prev.eta + params_.dt * xi_next;
    return {eta_next, xi_next, phi_next};
  }

  double step_residual(const State& prev, const ProblemData& data, double t_next,
                       const Vector& xi_next, const Vector& phi_next) const {
    Vector x(ns_ + nphi_);
    x << xi_next, phi_next;
    const Vector r = lhs_ * x - rhs(prev, data, t_next);
    double rmax = 0;
    for (int i = 0; i < r.size(); ++i)
      if (!mask_[i]) rmax = std::max(rmax, std::abs(r[i]));
    const double scale = inf_norm(lhs_) * x.cwiseAbs().maxCoeff() + 1.0;
    return rmax / scale;
  }

 private:
  const Discretization* disc_;
  PhysicalParams params_;
  int ns_ = 0, nphi_ = 0;
  SparseMatrix lhs_;
  SparseMatrix mass_xi_dt_;   // (rho_p / dt) M
  SparseMatrix mass_phi_dt_;  // (C0 / dt) M
  SparseMatrix a_eta_;        // 2 mu_p D:D + lambda_p div-div (unscaled)
  SparseMatrix g_pf_;         // gamma <P u, P zeta>, poro rows x fluid cols
  SparseMatrix n_pp_;         // <xi.n_p, zeta.n_p>
  SparseMatrix n_phiu_;       // <u.n_p, psi>, poro phi rows x fluid cols
  SparseMatrix n_phiphi_L_;   // (1/L) <phi, psi>
  std::vector<char> mask_;
  std::unique_ptr<Factorization> fact_;
};

}  // namespace stokesbiot
