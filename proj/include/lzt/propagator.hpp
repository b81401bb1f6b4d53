#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "lzt/detail/step_kernel.hpp"
#include "lzt/errors.hpp"
#include "lzt/model.hpp"

namespace lzt {

struct IntegrationConfig {
  double window_factor = 20.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_norm_drift = 1e-9;
  bool convergence_check = true;

  void validate() const {
    if (!(window_factor >= 5.0)) {
      throw InvalidParams("IntegrationConfig: window_factor must be >= 5");
    }
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw InvalidParams("IntegrationConfig: tolerances must be positive");
    }
    if (!(max_norm_drift > rel_tol)) {
      throw InvalidParams("IntegrationConfig: max_norm_drift must exceed rel_tol");
    }
  }
};

/// Symmetric window covering both characteristic time scales of the crossing,
/// the adiabatic-limit scale delta/alpha and the sudden-limit scale
/// sqrt(hbar/alpha), with margin window_factor.
inline std::pair<double, double> integration_window(const LzParams& p,
                                                    const IntegrationConfig& cfg) {
  const double scale = std::max(p.delta / p.alpha, std::sqrt(p.hbar / p.alpha));
  return {-cfg.window_factor * scale, cfg.window_factor * scale};
}

/// Lower instantaneous eigenstate at the window start.  Starting here instead
/// of the bare (1,0) suppresses the O(delta/(alpha |t_start|)) transient a
/// truncated window would otherwise inject.
inline Amplitudes initial_state(const LzParams& p, double t_start) {
  if (!(t_start < 0.0)) throw WindowTooSmall("initial_state: t_start must be negative");
  if (p.alpha * std::abs(t_start) < 10.0 * p.delta) {
    throw WindowTooSmall("initial_state: alpha*|t_start| < 10*delta, window too small");
  }
  return lower_eigenstate(p, t_start);
}

namespace detail {

// Adaptive driver.  Controls the step on the kernel's conservative local
// error estimate with exponent 1/7; per-step rotations are exactly unitary,
// so norm drift stays at the rounding level regardless of step count.
// Calls sink(t, y) after every accepted step.  h may run backward (t1 < t0).
template <class Sink>
Amplitudes integrate_adaptive(const LzParams& prm, const IntegrationConfig& cfg,
                              double t0, double t1, Amplitudes y, Sink&& sink,
                              double* max_defect_out = nullptr) {
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  const double tol = cfg.abs_tol + cfg.rel_tol;  // state norm is ~1
  const double eps = std::numeric_limits<double>::epsilon();
  double max_defect = 0.0;

  if (span == 0.0) {
    if (max_defect_out) *max_defect_out = 0.0;
    return y;
  }

  // Interior barrier at t = 0 so that P(0) and P'(0) need no interpolation.
  const bool zero_inside = (t0 * t1 < 0.0);

  auto rot_cap = [&](double t) {
    const double r = std::hypot(prm.alpha * t, prm.delta);
    return r > 0.0 ? 0.9 * prm.hbar / r : span;
  };
  const double sweep_cap = std::sqrt(prm.hbar / prm.alpha);

  double t = t0;
  double h = std::min({rot_cap(t0), sweep_cap, span});
  bool zero_pending = zero_inside;

  while (t != t1) {
    h = std::min({h, rot_cap(t), sweep_cap});
    // land exactly on the next barrier
    double target = t + dir * h;
    bool hit_zero = false, hit_end = false;
    if (zero_pending && dir * target >= 0.0) {
      target = 0.0;
      hit_zero = true;
    }
    if (dir * (target - t1) >= 0.0) {
      target = t1;
      hit_end = true;
      hit_zero = false;
    }
    const double h_used = target - t;

    if (std::abs(h_used) < 64.0 * eps * std::max(std::abs(t), 1e-3 * span)) {
      throw StepUnderflow("integrate_adaptive: step size collapsed");
    }

    const StepTerms terms = step_terms(prm, t, h_used);
    const double est = terms.error_estimate();
    if (est > tol) {
      h = std::abs(h_used) * std::max(0.25, 0.85 * std::pow(tol / est, 1.0 / 7.0));
      continue;
    }

    y = apply_rotation(terms.total(), y);
    t = target;
    if (hit_zero) zero_pending = false;

    const double defect = std::abs(y.norm_sq() - 1.0);
    max_defect = std::max(max_defect, defect);
    if (defect > cfg.max_norm_drift) {
      throw NormDriftExceeded("integrate_adaptive: norm drift exceeded limit");
    }
    sink(t, y);
    if (hit_end) break;

    const double grow = est > 0.0 ? 0.85 * std::pow(tol / est, 1.0 / 7.0) : 4.0;
    h = std::abs(h_used) * std::clamp(grow, 0.25, 4.0);
  }

  if (max_defect_out) *max_defect_out = max_defect;
  return y;
}

}  // namespace detail

/// Endpoint-only adaptive evolution of an arbitrary state between arbitrary
/// times (either direction).
inline Amplitudes evolve(const LzParams& prm, const IntegrationConfig& cfg,
                         double t0, double t1, const Amplitudes& y0) {
  return detail::integrate_adaptive(prm, cfg, t0, t1, y0, [](double, const Amplitudes&) {});
}

/// Dense solution of the Schrodinger equation over the integration window.
/// Samples are the accepted step endpoints; queries between samples re-expand
/// the flow map over the partial step, so interpolated states are unitary and
/// carry the same local accuracy as the integration itself.
class Trajectory {
 public:
  Trajectory(const LzParams& prm, double t_start, double t_end)
      : params_(prm), t_start_(t_start), t_end_(t_end) {}

  const LzParams& params() const { return params_; }
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t size() const { return ts_.size(); }
  const std::vector<double>& times() const { return ts_; }
  const Amplitudes& state(std::size_t i) const { return ys_[i]; }
  double max_norm_defect() const { return max_defect_; }

  Amplitudes at(double t) const {
    if (t < t_start_ || t > t_end_) {
      throw InvalidParams("Trajectory::at: query outside integration window");
    }
    auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    std::size_t k = (it == ts_.begin()) ? 0 : static_cast<std::size_t>(it - ts_.begin()) - 1;
    if (k >= ts_.size() - 1) k = ts_.size() - 2;
    if (t == ts_[k]) return ys_[k];
    if (t == ts_[k + 1]) return ys_[k + 1];
    return detail::advance(params_, ts_[k], t - ts_[k], ys_[k]);
  }

  /// d/dt (a, b) evaluated through the equation of motion at the interpolated
  /// state; at sample points this is exactly -(i/hbar) H(t) (a, b).
  Amplitudes derivative(double t) const { return schrod_rhs(params_, t, at(t)); }

  void push(double t, const Amplitudes& y) {
    ts_.push_back(t);
    ys_.push_back(y);
  }
  void set_max_norm_defect(double d) { max_defect_ = d; }

 private:
  LzParams params_;
  double t_start_, t_end_;
  double max_defect_ = 0.0;
  std::vector<double> ts_;
  std::vector<Amplitudes> ys_;
};

/// Full pipeline entry point: window choice, asymptotic initial condition,
/// adaptive integration, and (optionally) the doubled-window convergence
/// check, which recomputes P_d at this run's t_end starting from twice the
/// distance and requires agreement to 1e-6.
inline Trajectory propagate(const LzParams& prm, const IntegrationConfig& cfg = {}) {
  cfg.validate();
  if (!(prm.alpha > 0.0) || !(prm.hbar > 0.0) || prm.delta < 0.0) {
    throw InvalidParams("propagate: need alpha > 0, hbar > 0, delta >= 0");
  }

  const auto [t_start, t_end] = integration_window(prm, cfg);
  Amplitudes y0 = initial_state(prm, t_start);

  Trajectory traj(prm, t_start, t_end);
  traj.push(t_start, y0);
  double defect = 0.0;
  detail::integrate_adaptive(
      prm, cfg, t_start, t_end, y0,
      [&traj](double t, const Amplitudes& y) { traj.push(t, y); }, &defect);
  traj.set_max_norm_defect(defect);

  if (cfg.convergence_check) {
    const double p_main = std::norm(traj.at(t_end).b);
    const Amplitudes y2 = initial_state(prm, 2.0 * t_start);
    const Amplitudes yf = evolve(prm, cfg, 2.0 * t_start, t_end, y2);
    if (std::abs(std::norm(yf.b) - p_main) >= 1e-6) {
      throw WindowNotConverged(
          "propagate: doubling the window changed P_d(t_end) by >= 1e-6");
    }
  }
  return traj;
}

}  // namespace lzt
