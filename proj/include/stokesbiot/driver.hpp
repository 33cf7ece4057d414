#pragma once

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stokesbiot/diagnostics.hpp"
#include "stokesbiot/subproblems.hpp"

namespace stokesbiot {

enum class MmsSelect { Zero, Manufactured };
enum class InitMode { Interpolation, RitzProjection };

struct RunConfig {
  int n = 8;
  double dt = 0.0;
  double T = 0.0;
  PhysicalParams params;
  MmsSelect mms_case = MmsSelect::Manufactured;
  InitMode init = InitMode::Interpolation;
  bool parallel = true;
  bool record_energy = false;

  int step_count() const {
    const double ratio = T / dt;
    const long long n_steps = std::llround(ratio);
    if (n_steps < 1 || std::abs(ratio - static_cast<double>(n_steps)) > 1e-9)
      throw std::invalid_argument("RunConfig: T/dt must be a positive integer");
    return static_cast<int>(n_steps);
  }
};

// State at t = 0 from nodal interpolation (default) or from the Ritz
// projections of the exact fields.
inline State initialize(const Discretization& disc, const RunConfig& config) {
  if (config.mms_case == MmsSelect::Zero) return disc.zero_state();
  State s = disc.zero_state();
  s.t = 0.0;
  if (config.init == InitMode::Interpolation) {
    s.u = interpolate_vector(disc.velocity_dm,
                             [](double t, double x, double y) { return mms::velocity(t, x, y); }, 0.0);
    s.p = interpolate_scalar(disc.pressure_dm,
                             [](double t, double x, double y) { return mms::pressure(t, x, y); }, 0.0);
    s.eta = interpolate_vector(
        disc.structure_dm, [](double t, double x, double y) { return mms::displacement(t, x, y); },
        0.0);
    s.xi = interpolate_vector(
        disc.structure_dm,
        [](double t, double x, double y) { return mms::structure_velocity(t, x, y); }, 0.0);
    s.phi = interpolate_scalar(
        disc.darcy_dm, [](double t, double x, double y) { return mms::pore_pressure(t, x, y); }, 0.0);
    return s;
  }
  const auto stokes = ritz_project_stokes(
      disc, config.params, [](double t, double x, double y) { return mms::velocity(t, x, y); },
      [](double t, double x, double y) { return mms::grad_velocity(t, x, y); },
      [](double t, double x, double y) { return mms::pressure(t, x, y); }, 0.0);
  s.u = stokes.u;
  s.p = stokes.p;
  s.eta = ritz_project_elasticity(
              disc, config.params,
              [](double t, double x, double y) { return mms::displacement(t, x, y); },
              [](double t, double x, double y) { return mms::grad_displacement(t, x, y); }, 0.0)
              .coeffs;
  s.xi = ritz_project_elasticity(
             disc, config.params,
             [](double t, double x, double y) { return mms::structure_velocity(t, x, y); },
             [](double t, double x, double y) { return mms::grad_structure_velocity(t, x, y); }, 0.0)
             .coeffs;
  s.phi = ritz_project_darcy(
              disc, config.params,
              [](double t, double x, double y) { return mms::pore_pressure(t, x, y); },
              [](double t, double x, double y) { return mms::grad_pore_pressure(t, x, y); }, 0.0)
              .coeffs;
  return s;
}

// One time step: both subproblems read the same immutable previous state and
// may execute concurrently; results are identical either way.
inline State advance(const State& prev, const FluidSystem& fluid, const PoroSystem& poro,
                     const ProblemData& data, double dt, bool parallel) {
  const double t_next = prev.t + dt;
  State next;
  next.t = t_next;
  if (parallel) {
    std::pair<Vector, Vector> fluid_result;
    std::array<Vector, 3> poro_result;
    std::thread fluid_thread([&] { fluid_result = fluid.step(prev, data, t_next); });
    poro_result = poro.step(prev, data, t_next);
    fluid_thread.join();
    next.u = std::move(fluid_result.first);
    next.p = std::move(fluid_result.second);
    next.eta = std::move(poro_result[0]);
    next.xi = std::move(poro_result[1]);
    next.phi = std::move(poro_result[2]);
  } else {
    auto [u, p] = fluid.step(prev, data, t_next);
    auto [eta, xi, phi] = poro.step(prev, data, t_next);
    next.u = std::move(u);
    next.p = std::move(p);
    next.eta = std::move(eta);
    next.xi = std::move(xi);
    next.phi = std::move(phi);
  }
  return next;
}

struct RunSummary {
  State final_state;
  double X0 = 0;                      // energy of the initial state
  std::vector<EnergyRecord> energy;   // one record per step when enabled
};

inline RunSummary run(const Discretization& disc, const RunConfig& config_in,
                      const State* initial_override = nullptr) {
  RunConfig config = config_in;
  config.params.dt = config.dt;
  const int n_steps = config.step_count();

  const ProblemData data = (config.mms_case == MmsSelect::Zero) ? ProblemData::zero()
                                                                : ProblemData::manufactured();
  const FluidSystem fluid(disc, config.params);
  const PoroSystem poro(disc, config.params);

  State state = initial_override ? *initial_override : initialize(disc, config);

  RunSummary summary;
  std::unique_ptr<EnergyMatrices> em;
  if (config.record_energy) {
    em = std::make_unique<EnergyMatrices>(disc, config.params);
    summary.X0 = em->energy_X(state, config.dt);
  }
  for (int k = 0; k < n_steps; ++k) {
    State next = advance(state, fluid, poro, data, config.dt, config.parallel);
    if (em) summary.energy.push_back(em->record(next, state, config.dt));
    state = std::move(next);
  }
  summary.final_state = std::move(state);
  return summary;
}

}  // namespace stokesbiot
