#pragma once

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "stokesbiot/driver.hpp"

namespace stokesbiot {

namespace detail {

inline std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string fmt(const char* f, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Convergence studies: one manufactured-solution run per refinement level.

enum class StudyKind { Temporal, Spatial };

struct ErrorStudy {
  StudyKind kind;
  std::vector<ErrorReport> rows;

  std::vector<double> column(int which) const {
    std::vector<double> c;
    for (const auto& r : rows)
      c.push_back(which == 0   ? r.e_eta
                  : which == 1 ? r.e_xi
                  : which == 2 ? r.e_phi
                  : which == 3 ? r.e_u
                               : r.e_p);
    return c;
  }

  // Observed rates of the given column on the last refinement pair.
  double last_rate(int which) const {
    const auto rates = convergence_rates(column(which));
    return rates.back();
  }
};

// Temporal refinement with the paired parameters {dt, dx} = {0.05/n, 0.5/n}:
// the mesh has grid spacing 0.5/n (2n cells per unit length) and errors are
// evaluated at T.
inline ErrorStudy temporal_study(const std::vector<int>& ns, double T, PhysicalParams params,
                                 bool parallel = true, InitMode init = InitMode::Interpolation) {
  ErrorStudy study{StudyKind::Temporal, {}};
  for (int n : ns) {
    RunConfig config;
    config.n = 2 * n;
    config.dt = 0.05 / n;
    config.T = T;
    config.params = params;
    config.mms_case = MmsSelect::Manufactured;
    config.init = init;
    config.parallel = parallel;
    const Discretization disc(config.n);
    const RunSummary summary = run(disc, config);
    ErrorReport r = compute_errors(disc, summary.final_state, summary.final_state.t);
    r.n = n;  // the study parameter; the mesh size is recorded through h
    r.dt = config.dt;
    study.rows.push_back(r);
  }
  return study;
}

// Spatial refinement: fixed dt, h = 1/n, errors at the (short) final time.
inline ErrorStudy spatial_study(const std::vector<int>& ns, double dt, double T,
                                PhysicalParams params, bool parallel = true,
                                InitMode init = InitMode::Interpolation) {
  ErrorStudy study{StudyKind::Spatial, {}};
  for (int n : ns) {
    RunConfig config;
    config.n = n;
    config.dt = dt;
    config.T = T;
    config.params = params;
    config.mms_case = MmsSelect::Manufactured;
    config.init = init;
    config.parallel = parallel;
    const Discretization disc(n);
    const RunSummary summary = run(disc, config);
    ErrorReport r = compute_errors(disc, summary.final_state, summary.final_state.t);
    r.dt = dt;
    study.rows.push_back(r);
  }
  return study;
}

inline std::string error_csv(const std::vector<ErrorReport>& rows) {
  std::string out = "n,dt,h,e_eta,e_xi,e_phi,e_u,e_p\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + detail::fmt6(r.dt) + ',' + detail::fmt6(r.h) + ',' +
           detail::fmt6(r.e_eta) + ',' + detail::fmt6(r.e_xi) + ',' + detail::fmt6(r.e_phi) + ',' +
           detail::fmt6(r.e_u) + ',' + detail::fmt6(r.e_p) + '\n';
  }
  if (rows.size() >= 2) {
    std::vector<std::vector<double>> cols(5);
    for (const auto& r : rows) {
      cols[0].push_back(r.e_eta);
      cols[1].push_back(r.e_xi);
      cols[2].push_back(r.e_phi);
      cols[3].push_back(r.e_u);
      cols[4].push_back(r.e_p);
    }
    std::vector<std::vector<double>> rates;
    for (const auto& c : cols) rates.push_back(convergence_rates(c));
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
      out += "rate," + std::to_string(rows[i].n) + ':' + std::to_string(rows[i + 1].n) + ',';
      for (int c = 0; c < 5; ++c) out += ',' + detail::fmt6(rates[c][i]);
      out += '\n';
    }
  }
  return out;
}

// Aligned text table with per-column rates, mirroring the usual convergence
// table layout.
inline std::string error_table(const std::vector<ErrorReport>& rows) {
  static const char* names[5] = {"e_eta", "e_xi", "e_phi", "e_u", "e_p"};
  std::string out = "     n";
  for (const auto* name : names) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), " %10s %6s", name, "rate");
    out += buf;
  }
  out += '\n';
  std::vector<std::vector<double>> cols(5);
  for (const auto& r : rows) {
    cols[0].push_back(r.e_eta);
    cols[1].push_back(r.e_xi);
    cols[2].push_back(r.e_phi);
    cols[3].push_back(r.e_u);
    cols[4].push_back(r.e_p);
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%6d", rows[i].n);
    out += buf;
    for (int c = 0; c < 5; ++c) {
      if (i == 0)
        std::snprintf(buf, sizeof(buf), " %10.3e %6s", cols[c][i], "--");
      else
        std::snprintf(buf, sizeof(buf), " %10.3e %6.2f", cols[c][i],
                      std::log2(cols[c][i - 1] / cols[c][i]));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homogeneous-data energy stability study: zero forcing and boundary data,
// random interior initial state, per-step energy identity residual.

struct EnergyStudy {
  double X0 = 0;
  std::vector<EnergyRecord> records;
  double max_rel_residual = 0;
  bool monotone = true;  // X_{n+1}^2 <= X_n^2 + |Z_{n+1}| at every step
};

inline EnergyStudy energy_study(int n, double dt, int steps, unsigned seed, PhysicalParams params,
                                bool parallel = true) {
  const Discretization disc(n);
  params.dt = dt;
  params.validate();

  State s0 = disc.zero_state();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto randomize = [&](Vector& v) {
    for (int i = 0; i < v.size(); ++i) v[i] = dist(rng);
  };
  randomize(s0.u);
  randomize(s0.p);
  randomize(s0.eta);
  randomize(s0.xi);
  randomize(s0.phi);
  // Homogeneous essential conditions: zero the constrained dofs.
  for (int sdof : disc.velocity_bc) {
    s0.u[disc.velocity_dm.vector_dof(0, sdof)] = 0;
    s0.u[disc.velocity_dm.vector_dof(1, sdof)] = 0;
  }
  for (int sdof : disc.structure_bc) {
    s0.eta[disc.structure_dm.vector_dof(0, sdof)] = 0;
    s0.eta[disc.structure_dm.vector_dof(1, sdof)] = 0;
    s0.xi[disc.structure_dm.vector_dof(0, sdof)] = 0;
    s0.xi[disc.structure_dm.vector_dof(1, sdof)] = 0;
  }
  for (int sdof : disc.darcy_bc) s0.phi[sdof] = 0;

  RunConfig config;
  config.n = n;
  config.dt = dt;
  config.T = dt * steps;
  config.params = params;
  config.mms_case = MmsSelect::Zero;
  config.parallel = parallel;
  config.record_energy = true;

  const RunSummary summary = run(disc, config, &s0);

  EnergyStudy out;
  out.X0 = summary.X0;
  out.records = summary.energy;
  double x_prev = summary.X0;
  for (const auto& r : summary.energy) {
    out.max_rel_residual =
        std::max(out.max_rel_residual, std::abs(r.F_resid) / std::max(x_prev * x_prev, 1.0));
    if (r.X * r.X > x_prev * x_prev + std::abs(r.Z) + 1e-12 * std::max(x_prev * x_prev, 1.0))
      out.monotone = false;
    x_prev = r.X;
  }
  return out;
}

inline std::string energy_csv(const EnergyStudy& study) {
  std::string out = "step,X,Y,Z,identity_residual\n";
  out += "0," + detail::fmt6(study.X0) + ",,,\n";
  for (size_t k = 0; k < study.records.size(); ++k) {
    const auto& r = study.records[k];
    out += std::to_string(k + 1) + ',' + detail::fmt6(r.X) + ',' + detail::fmt6(r.Y) + ',' +
           detail::fmt6(r.Z) + ',' + detail::fmt6(r.F_resid) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ritz projection order study: H1 projection errors of the exact fields at a
// fixed time, plus discrete-function reproduction checks.

struct ProjectionRow {
  int n = 0;
  double h = 0;
  double h1_u = 0, h1_eta = 0, h1_phi = 0;
  double reproduction = 0;       // max coefficient error on polynomial fields
  double galerkin_residual = 0;  // worst of the three projections
};

struct ProjectionStudy {
  std::vector<ProjectionRow> rows;
  std::vector<double> rates_u, rates_eta, rates_phi;
};

inline ProjectionStudy projection_study(const std::vector<int>& ns, PhysicalParams params,
                                        double t = 0.35) {
  params.dt = 1.0;  // unused by the projections; keeps validate() happy
  ProjectionStudy study;
  for (int n : ns) {
    const Discretization disc(n);
    ProjectionRow row;
    row.n = n;
    row.h = disc.fluid_mesh.h;

    const auto stokes = ritz_project_stokes(
        disc, params, [](double tt, double x, double y) { return mms::velocity(tt, x, y); },
        [](double tt, double x, double y) { return mms::grad_velocity(tt, x, y); },
        [](double tt, double x, double y) { return mms::pressure(tt, x, y); }, t);
    const auto elast = ritz_project_elasticity(
        disc, params, [](double tt, double x, double y) { return mms::displacement(tt, x, y); },
        [](double tt, double x, double y) { return mms::grad_displacement(tt, x, y); }, t);
    const auto darcy = ritz_project_darcy(
        disc, params, [](double tt, double x, double y) { return mms::pore_pressure(tt, x, y); },
        [](double tt, double x, double y) { return mms::grad_pore_pressure(tt, x, y); }, t);

    row.h1_u = h1_error_vector(
        disc.fluid_mesh, disc.velocity_dm, stokes.u,
        [](double tt, double x, double y) { return mms::velocity(tt, x, y); },
        [](double tt, double x, double y) { return mms::grad_velocity(tt, x, y); }, t);
    row.h1_eta = h1_error_vector(
        disc.poro_mesh, disc.structure_dm, elast.coeffs,
        [](double tt, double x, double y) { return mms::displacement(tt, x, y); },
        [](double tt, double x, double y) { return mms::grad_displacement(tt, x, y); }, t);
    row.h1_phi = h1_error(
        disc.poro_mesh, disc.darcy_dm, darcy.coeffs,
        [](double tt, double x, double y) { return mms::pore_pressure(tt, x, y); },
        [](double tt, double x, double y) { return mms::grad_pore_pressure(tt, x, y); }, t);
    row.galerkin_residual =
        std::max({stokes.galerkin_residual, elast.galerkin_residual, darcy.galerkin_residual});

    // Reproduction: fields already in the discrete spaces come back exactly.
    auto lin_u = [](double, double x, double y) { return std::array<double, 2>{x, -y}; };
    auto lin_grad_u = [](double, double, double) {
      return std::array<std::array<double, 2>, 2>{{{1.0, 0.0}, {0.0, -1.0}}};
    };
    auto lin_p = [](double, double x, double) { return 1.0 + 2.0 * x; };
    auto lin_eta = [](double, double x, double y) { return std::array<double, 2>{x + y, x}; };
    auto lin_grad_eta = [](double, double, double) {
      return std::array<std::array<double, 2>, 2>{{{1.0, 1.0}, {1.0, 0.0}}};
    };
    auto lin_phi = [](double, double x, double y) { return 2.0 - x + 3.0 * y; };
    auto lin_grad_phi = [](double, double, double) { return std::array<double, 2>{-1.0, 3.0}; };

    const auto rs = ritz_project_stokes(disc, params, lin_u, lin_grad_u, lin_p, 0.0);
    const auto re = ritz_project_elasticity(disc, params, lin_eta, lin_grad_eta, 0.0);
    const auto rd = ritz_project_darcy(disc, params, lin_phi, lin_grad_phi, 0.0);
    const Vector iu = interpolate_vector(disc.velocity_dm, lin_u, 0.0);
    const Vector ip = interpolate_scalar(disc.pressure_dm, lin_p, 0.0);
    const Vector ie = interpolate_vector(disc.structure_dm, lin_eta, 0.0);
    const Vector id = interpolate_scalar(disc.darcy_dm, lin_phi, 0.0);
    row.reproduction = std::max({(rs.u - iu).cwiseAbs().maxCoeff(), (rs.p - ip).cwiseAbs().maxCoeff(),
                                 (re.coeffs - ie).cwiseAbs().maxCoeff(),
                                 (rd.coeffs - id).cwiseAbs().maxCoeff()});

    study.rows.push_back(row);
  }
  if (study.rows.size() >= 2) {
    std::vector<double> eu, ee, ep;
    for (const auto& r : study.rows) {
      eu.push_back(r.h1_u);
      ee.push_back(r.h1_eta);
      ep.push_back(r.h1_phi);
    }
    study.rates_u = convergence_rates(eu);
    study.rates_eta = convergence_rates(ee);
    study.rates_phi = convergence_rates(ep);
  }
  return study;
}

inline std::string projection_csv(const ProjectionStudy& study) {
  std::string out = "n,h,h1_u,h1_eta,h1_phi,reproduction,galerkin_residual\n";
  for (const auto& r : study.rows) {
    out += std::to_string(r.n) + ',' + detail::fmt6(r.h) + ',' + detail::fmt6(r.h1_u) + ',' +
           detail::fmt6(r.h1_eta) + ',' + detail::fmt6(r.h1_phi) + ',' +
           detail::fmt6(r.reproduction) + ',' + detail::fmt6(r.galerkin_residual) + '\n';
  }
  for (size_t i = 0; i + 1 < study.rows.size(); ++i) {
    out += "rate," + std::to_string(study.rows[i].n) + ':' + std::to_string(study.rows[i + 1].n) +
           ',' + detail::fmt6(study.rates_u[i]) + ',' + detail::fmt6(study.rates_eta[i]) + ',' +
           detail::fmt6(study.rates_phi[i]) + ",,\n";
  }
  return out;
}

}  // namespace stokesbiot
