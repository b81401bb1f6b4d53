// lzt: Landau-Zener tunneling-time toolkit.
//
// Subcommands
//   simulate  time series P(t), dP/dt as CSV (+ sidecar JSON summary)
//   tau       one-run JSON summary of the tunneling time
//   sweep     CSV table over a grid of sweeping rates
//   limits    closed-form limiting times as JSON
//   compare   tau and limits side by side
//
// Rates are given in units of delta^2/(2 hbar), so --alpha equals the
// quickness parameter eta.  --physical switches to user units; internally the
// run is normalized to delta = hbar = 1 and reported times are scaled back
// by hbar/delta.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lzt/asymptotics.hpp"
#include "lzt/io.hpp"
#include "lzt/probability.hpp"
#include "lzt/propagator.hpp"
#include "lzt/sweep.hpp"
#include "lzt/tunneling_time.hpp"

namespace {

struct RunOpts {
  double alpha_eta = 1.0;
  bool physical = false;
  double delta_phys = 1.0;
  double alpha_phys = 1.0;
  double hbar_phys = 1.0;
  std::string basis_str = "diabatic";
  lzt::IntegrationConfig cfg;

  lzt::Basis basis() const {
    return basis_str == "adiabatic" ? lzt::Basis::Adiabatic : lzt::Basis::Diabatic;
  }

  lzt::LzParams params() const {
    if (physical) {
      const lzt::LzParams user = lzt::LzParams::make(delta_phys, alpha_phys, hbar_phys);
      return lzt::LzParams::from_eta(user.eta());
    }
    if (!(alpha_eta > 0.0)) throw lzt::InvalidParams("--alpha must be positive");
    return lzt::LzParams::from_eta(alpha_eta);
  }

  double time_scale() const { return physical ? hbar_phys / delta_phys : 1.0; }
};

void add_common(CLI::App* cmd, RunOpts& o, bool conv_default) {
  o.cfg.convergence_check = conv_default;
  cmd->add_option("--alpha", o.alpha_eta, "sweeping rate in units of delta^2/(2 hbar) (= eta)");
  cmd->add_flag("--physical", o.physical, "interpret parameters in user units");
  cmd->add_option("--delta", o.delta_phys, "gap (with --physical)");
  cmd->add_option("--alpha-phys", o.alpha_phys, "sweeping rate (with --physical)");
  cmd->add_option("--hbar", o.hbar_phys, "reduced Planck constant (with --physical)");
  cmd->add_option("--window-factor", o.cfg.window_factor, "half window in characteristic times");
  cmd->add_option("--rel-tol", o.cfg.rel_tol, "integrator relative tolerance");
  cmd->add_option("--abs-tol", o.cfg.abs_tol, "integrator absolute tolerance");
  cmd->add_flag("--convergence-check,!--no-convergence-check", o.cfg.convergence_check,
                "verify the window by re-running at twice the size");
}

void scale_times(lzt::RunRecord& r, double s) {
  r.t_prime *= s;
  r.tau *= s;
  r.tau_vitanov *= s;
  r.tau_empirical *= s;
  r.tau_analytic_adiabatic *= s;
  r.tau_analytic_sudden *= s;
}

nlohmann::json limits_json(const lzt::LzParams& p, lzt::Basis basis, double scale) {
  return nlohmann::json{
      {"eta", p.eta()},
      {"alpha", p.eta()},
      {"basis", lzt::to_string(basis)},
      {"tau_adiabatic_limit", scale * lzt::limit_tau(basis, lzt::LimitKind::AdiabaticLimit, p)},
      {"tau_sudden_limit", scale * lzt::limit_tau(basis, lzt::LimitKind::SuddenLimit, p)},
      {"zeta_a_a", scale * lzt::vitanov_zeta_adiabatic(p)},
      {"tau_empirical", scale * lzt::empirical_time(p)}};
}

const char* error_name(const std::exception& e) {
  if (dynamic_cast<const lzt::InvalidParams*>(&e)) return "InvalidParams";
  if (dynamic_cast<const lzt::NormDriftExceeded*>(&e)) return "NormDriftExceeded";
  if (dynamic_cast<const lzt::WindowNotConverged*>(&e)) return "WindowNotConverged";
  if (dynamic_cast<const lzt::StepUnderflow*>(&e)) return "StepUnderflow";
  if (dynamic_cast<const lzt::WindowTooSmall*>(&e)) return "WindowTooSmall";
  if (dynamic_cast<const lzt::TailNotSettled*>(&e)) return "TailNotSettled";
  if (dynamic_cast<const lzt::NoCrossing*>(&e)) return "NoCrossing";
  if (dynamic_cast<const lzt::DegenerateS1*>(&e)) return "DegenerateS1";
  if (dynamic_cast<const lzt::ZeroSlope*>(&e)) return "ZeroSlope";
  if (dynamic_cast<const lzt::Error*>(&e)) return "Error";
  return "Exception";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw lzt::Error("cannot open output file: " + path);
  f << content;
  if (!f) throw lzt::Error("failed writing output file: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landau-Zener tunneling-time toolkit"};
  app.require_subcommand(1);

  RunOpts sim_o, tau_o, lim_o, cmp_o, sweep_o;
  std::string sim_out, sweep_out;
  std::string spacing_str = "log";
  double sweep_min = 0.1, sweep_max = 10.0;
  int sweep_points = 10;
  int jobs = 1;

  CLI::App* sim = app.add_subcommand("simulate", "write the P(t) time series as CSV");
  add_common(sim, sim_o, true);
  sim->add_option("--basis", sim_o.basis_str, "diabatic|adiabatic")
      ->check(CLI::IsMember({"diabatic", "adiabatic"}));
  sim->add_option("--out", sim_out, "output CSV path")->required();

  CLI::App* tau = app.add_subcommand("tau", "print the tunneling-time summary as JSON");
  add_common(tau, tau_o, true);
  tau->add_option("--basis", tau_o.basis_str, "diabatic|adiabatic")
      ->check(CLI::IsMember({"diabatic", "adiabatic"}));

  CLI::App* lim = app.add_subcommand("limits", "print closed-form limiting times as JSON");
  add_common(lim, lim_o, true);
  lim->add_option("--basis", lim_o.basis_str, "diabatic|adiabatic")
      ->check(CLI::IsMember({"diabatic", "adiabatic"}));

  CLI::App* cmp = app.add_subcommand("compare", "tau and limits side by side");
  add_common(cmp, cmp_o, true);
  cmp->add_option("--basis", cmp_o.basis_str, "diabatic|adiabatic")
      ->check(CLI::IsMember({"diabatic", "adiabatic"}));

  // Sweeps default to no convergence check: near eta ~ 1 the doubled-window
  // comparison resolves start-transient differences above 1e-6 that are far
  // below anything tau depends on, and a hard error there would poison the
  // kink region of every sweep.
  CLI::App* swp = app.add_subcommand("sweep", "tunneling times over a grid of rates");
  add_common(swp, sweep_o, false);
  swp->add_option("--basis", sweep_o.basis_str, "diabatic|adiabatic")
      ->check(CLI::IsMember({"diabatic", "adiabatic"}));
  swp->add_option("--alpha-min", sweep_min, "grid start (eta units)")->required();
  swp->add_option("--alpha-max", sweep_max, "grid end (eta units)")->required();
  swp->add_option("--points", sweep_points, "number of grid points");
  swp->add_option("--spacing", spacing_str, "log|linear")
      ->check(CLI::IsMember({"log", "linear"}));
  swp->add_option("--jobs", jobs, "worker threads");
  swp->add_option("--out", sweep_out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      const lzt::LzParams prm = sim_o.params();
      auto traj = std::make_shared<const lzt::Trajectory>(lzt::propagate(prm, sim_o.cfg));
      const lzt::ProbabilityCurve curve = lzt::probability_curve(traj, sim_o.basis());
      write_file(sim_out, lzt::curve_csv(curve, 2000, sim_o.time_scale()));
      lzt::RunRecord rec = lzt::make_run_record(curve);
      scale_times(rec, sim_o.time_scale());
      write_file(sim_out + ".json", lzt::to_json(rec).dump(2) + "\n");
    } else if (tau->parsed()) {
      lzt::RunRecord rec = lzt::run_record(tau_o.params(), tau_o.basis(), tau_o.cfg);
      scale_times(rec, tau_o.time_scale());
      std::cout << lzt::to_json(rec).dump(2) << "\n";
    } else if (lim->parsed()) {
      std::cout << limits_json(lim_o.params(), lim_o.basis(), lim_o.time_scale()).dump(2)
                << "\n";
    } else if (cmp->parsed()) {
      lzt::RunRecord rec = lzt::run_record(cmp_o.params(), cmp_o.basis(), cmp_o.cfg);
      scale_times(rec, cmp_o.time_scale());
      nlohmann::json out{{"run", lzt::to_json(rec)},
                         {"limits", limits_json(cmp_o.params(), cmp_o.basis(),
                                                cmp_o.time_scale())}};
      std::cout << out.dump(2) << "\n";
    } else if (swp->parsed()) {
      lzt::SweepSpec spec;
      spec.alpha_min = sweep_min;
      spec.alpha_max = sweep_max;
      spec.points = sweep_points;
      spec.spacing = spacing_str == "linear" ? lzt::Spacing::Linear : lzt::Spacing::Log;
      spec.basis = sweep_o.basis();
      const auto rows = lzt::run_sweep(spec, sweep_o.cfg, jobs);
      write_file(sweep_out, lzt::sweep_csv(rows, spec.basis));
    }
  } catch (const std::exception& e) {
    std::cout << lzt::error_json(error_name(e), e.what()).dump(2) << "\n";
    return 1;
  }
  return 0;
}
