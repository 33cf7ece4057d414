// Command-line driver: single runs, temporal/spatial convergence studies,
// the homogeneous energy-stability test, and projection-order tests.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stokesbiot/study.hpp"

namespace {

using namespace stokesbiot;

std::vector<int> parse_n_list(const std::string& arg) {
  std::vector<int> ns;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int v = std::stoi(tok);
    if (v < 1) throw CLI::ValidationError("--n entries must be positive");
    ns.push_back(v);
  }
  if (ns.empty()) throw CLI::ValidationError("--n must not be empty");
  return ns;
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
}

int run_main(int argc, char** argv) {
  CLI::App app{"Explicit loosely coupled Stokes-Biot solver and verification studies"};

  std::string mode;
  std::string n_arg = "8";
  double dt = 0.0;
  double T = 0.0;
  int steps = 20;
  double gamma = 1.0;
  double L = 1.0;
  bool parallel = true;
  std::string out_path;
  unsigned seed = 0;
  std::string init = "interp";

  app.add_option("--mode", mode, "single | temporal | spatial | energy | projections")->required();
  app.add_option("--n", n_arg, "mesh refinement(s), comma separated")->capture_default_str();
  app.add_option("--dt", dt, "time step (spatial/energy/single modes)");
  app.add_option("--T", T, "final time");
  app.add_option("--steps", steps, "number of steps (energy mode)")->capture_default_str();
  app.add_option("--gamma", gamma, "tangential slip penalty")->capture_default_str();
  app.add_option("--L", L, "normal penalty")->capture_default_str();
  app.add_option("--parallel", parallel, "solve the two subproblems concurrently")
      ->capture_default_str();
  app.add_option("--out", out_path, "CSV output path");
  app.add_option("--seed", seed, "seed for the random initial state (energy mode)")
      ->capture_default_str();
  app.add_option("--init", init, "initial data: interp | ritz")
      ->check(CLI::IsMember({"interp", "ritz"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  const std::vector<int> ns = parse_n_list(n_arg);
  PhysicalParams params;
  params.gamma = gamma;
  params.L = L;
  const InitMode init_mode = (init == "ritz") ? InitMode::RitzProjection : InitMode::Interpolation;

  if (mode == "temporal") {
    if (T == 0.0) T = 1.0;
    const ErrorStudy study = temporal_study(ns, T, params, parallel, init_mode);
    std::cout << error_table(study.rows);
    write_out(out_path, error_csv(study.rows));
  } else if (mode == "spatial") {
    if (dt == 0.0) dt = 1e-7;
    if (T == 0.0) T = 1e-4;
    const ErrorStudy study = spatial_study(ns, dt, T, params, parallel, init_mode);
    std::cout << error_table(study.rows);
    write_out(out_path, error_csv(study.rows));
  } else if (mode == "single") {
    if (T == 0.0) T = 1.0;
    if (dt == 0.0) dt = 0.05 / ns.front();
    RunConfig config;
    config.n = ns.front();
    config.dt = dt;
    config.T = T;
    config.params = params;
    config.init = init_mode;
    config.parallel = parallel;
    const Discretization disc(config.n);
    const RunSummary summary = run(disc, config);
    ErrorReport r = compute_errors(disc, summary.final_state, summary.final_state.t);
    r.dt = dt;
    std::cout << error_table({r});
    const auto audit = mms::interface_condition_residuals(T);
    std::printf("interface condition residuals at t = %g (reported, not enforced):\n", T);
    std::printf("  mass flux        %.3e\n", audit.mass_flux);
    std::printf("  tangential slip  %.3e\n", audit.tangential_slip);
    std::printf("  normal stress    %.3e\n", audit.normal_stress);
    std::printf("  stress balance   %.3e\n", audit.stress_balance);
    write_out(out_path, error_csv({r}));
  } else if (mode == "energy") {
    if (dt == 0.0) dt = 0.1;
    const EnergyStudy study = energy_study(ns.front(), dt, steps, seed, params, parallel);
    std::printf("n=%d dt=%g steps=%d seed=%u\n", ns.front(), dt, steps, seed);
    std::printf("max relative energy identity residual = %.3e\n", study.max_rel_residual);
    std::printf("X_{n+1}^2 <= X_n^2 + |Z_{n+1}| at every step: %s\n",
                study.monotone ? "yes" : "NO");
    std::printf("%s\n", study.max_rel_residual <= 1e-10 ? "PASS (<= 1e-10)" : "FAIL (> 1e-10)");
    write_out(out_path, energy_csv(study));
    if (study.max_rel_residual > 1e-10) return 1;
  } else if (mode == "projections") {
    std::vector<int> pns = (n_arg == "8") ? std::vector<int>{4, 8, 16, 32} : ns;
    const ProjectionStudy study = projection_study(pns, params);
    std::printf("%6s %12s %12s %12s %14s %14s\n", "n", "H1(u)", "H1(eta)", "H1(phi)", "reproduction",
                "galerkin");
    for (const auto& row : study.rows)
      std::printf("%6d %12.4e %12.4e %12.4e %14.3e %14.3e\n", row.n, row.h1_u, row.h1_eta,
                  row.h1_phi, row.reproduction, row.galerkin_residual);
    if (!study.rates_u.empty()) {
      std::printf("rates:");
      std::printf(" u =");
      for (double rr : study.rates_u) std::printf(" %.2f", rr);
      std::printf(", eta =");
      for (double rr : study.rates_eta) std::printf(" %.2f", rr);
      std::printf(", phi =");
      for (double rr : study.rates_phi) std::printf(" %.2f", rr);
      std::printf("\n");
    }
    write_out(out_path, projection_csv(study));
  } else {
    std::cerr << "unknown --mode '" << mode << "'\n\n" << app.help();
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
