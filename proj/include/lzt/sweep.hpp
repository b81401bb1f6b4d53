#pragma once

#include <atomic>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lzt/asymptotics.hpp"
#include "lzt/errors.hpp"
#include "lzt/model.hpp"
#include "lzt/probability.hpp"
#include "lzt/propagator.hpp"
#include "lzt/tunneling_time.hpp"

namespace lzt {

enum class Spacing { Log, Linear };

/// Sweep over the rate alpha expressed in units of delta^2/(2 hbar), i.e. the
/// grid values equal eta, matching the axis convention of the paper's figures.
struct SweepSpec {
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  int points = 0;
  Spacing spacing = Spacing::Log;
  Basis basis = Basis::Diabatic;

  void validate() const {
    if (!(alpha_min > 0.0) || !(alpha_min < alpha_max)) {
      throw InvalidParams("SweepSpec: need 0 < alpha_min < alpha_max");
    }
    if (points < 2) throw InvalidParams("SweepSpec: need at least 2 points");
  }
};

/// Flat summary of one run, as serialized by the CLI.
struct RunRecord {
  double eta = 0.0;
  double alpha = 0.0;  // in delta^2/(2 hbar) units; numerically equals eta
  Basis basis = Basis::Diabatic;
  double t_prime = 0.0;
  double tau = 0.0;
  double tau_vitanov = 0.0;
  double tau_empirical = 0.0;
  double tau_analytic_adiabatic = 0.0;
  double tau_analytic_sudden = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double p_infinity = 0.0;
  int crossing_count = 0;
  bool s2_negative = false;
};

inline ProbabilityCurve probability_curve(std::shared_ptr<const Trajectory> traj, Basis basis) {
  return basis == Basis::Diabatic ? diabatic_curve(std::move(traj))
                                  : adiabatic_curve(std::move(traj));
}

inline RunRecord make_run_record(const ProbabilityCurve& curve) {
  const LzParams& prm = curve.params;
  const Basis basis = curve.basis;
  const TunnelingTimeReport rep = tunneling_time(curve);

  RunRecord r;
  r.eta = prm.eta();
  r.alpha = prm.eta();
  r.basis = basis;
  r.t_prime = rep.t_prime;
  r.tau = rep.tau;
  r.tau_vitanov = rep.tau_vitanov;
  r.tau_empirical = rep.tau_empirical;
  r.tau_analytic_adiabatic = limit_tau(basis, LimitKind::AdiabaticLimit, prm);
  r.tau_analytic_sudden = limit_tau(basis, LimitKind::SuddenLimit, prm);
  r.s1 = rep.s1;
  r.s2 = rep.s2;
  r.p_infinity = curve.p_infinity;
  r.crossing_count = rep.diagnostics.crossing_count;
  r.s2_negative = rep.diagnostics.s2_negative;
  return r;
}

/// One full pipeline run: propagate, project, time.
inline RunRecord run_record(const LzParams& prm, Basis basis, const IntegrationConfig& cfg) {
  auto traj = std::make_shared<const Trajectory>(propagate(prm, cfg));
  return make_run_record(probability_curve(std::move(traj), basis));
}

inline std::vector<double> sweep_grid(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  const int n = spec.points;
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    grid[static_cast<std::size_t>(i)] =
        spec.spacing == Spacing::Log
            ? spec.alpha_min * std::pow(spec.alpha_max / spec.alpha_min, f)
            : spec.alpha_min + f * (spec.alpha_max - spec.alpha_min);
  }
  grid.front() = spec.alpha_min;
  grid.back() = spec.alpha_max;
  return grid;
}

struct SweepRow {
  double alpha = 0.0;  // grid value (eta units)
  std::optional<RunRecord> record;
  std::string error;  // empty on success
};

/// Evaluate the sweep; rows are independent pure computations, so they are
/// distributed over `jobs` workers and collected by index.  Output does not
/// depend on the worker count.  Per-row failures land in the error field.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, const IntegrationConfig& cfg,
                                       int jobs = 1) {
  const std::vector<double> grid = sweep_grid(spec);
  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      rows[i].alpha = grid[i];
      try {
        rows[i].record = run_record(LzParams::from_eta(grid[i]), spec.basis, cfg);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };

  const int n_workers = std::max(1, std::min<int>(jobs, static_cast<int>(grid.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace lzt
