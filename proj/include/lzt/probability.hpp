#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "lzt/errors.hpp"
#include "lzt/model.hpp"
#include "lzt/propagator.hpp"

namespace lzt {

/// Tunneling probability P(t) in a fixed basis, with its derivative obtained
/// analytically through the equations of motion (never a finite difference),
/// the closed-form asymptote P(inf), and the resolved maximum over t <= 0.
struct ProbabilityCurve {
  Basis basis = Basis::Diabatic;
  LzParams params;
  double t_start = 0.0;
  double t_end = 0.0;
  std::function<double(double)> p;
  std::function<double(double)> dp_dt;
  std::vector<double> sample_times;  // scan grid for extremum/root bracketing
  double p_infinity = 0.0;
  double p0 = 0.0;
  double p_max_neg = 0.0;
  double t_at_max_neg = 0.0;
};

namespace detail {

/// Golden-section maximization on [lo, hi] down to time resolution tol_t.
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol_t) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol_t) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

/// Locate max of curve.p over t <= 0: grid argmax, then golden refinement of
/// the bracketing triple.  Boundary values (t_start, 0) compete as candidates.
inline void resolve_max_neg(ProbabilityCurve& c) {
  const auto& ts = c.sample_times;
  std::size_t best = 0;
  double pbest = -1.0;
  std::vector<double> pvals;
  pvals.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size() && ts[i] <= 0.0; ++i) {
    pvals.push_back(c.p(ts[i]));
    if (pvals[i] > pbest) {
      pbest = pvals[i];
      best = i;
    }
  }
  const std::size_t n_neg = pvals.size();
  double lo = best > 0 ? ts[best - 1] : ts[0];
  double hi = best + 1 < n_neg ? ts[best + 1] : ts[n_neg - 1];
  hi = std::min(hi, 0.0);
  const double tol_t = 1e-10 * (c.t_end - c.t_start);
  auto [tm, pm] = golden_max(c.p, lo, hi, tol_t);
  c.t_at_max_neg = tm;
  c.p_max_neg = pm;
  if (pbest > c.p_max_neg) {
    c.p_max_neg = pbest;
    c.t_at_max_neg = ts[best];
  }
  if (c.p0 > c.p_max_neg) {  // t = 0 is always a candidate
    c.p_max_neg = c.p0;
    c.t_at_max_neg = 0.0;
  }
}

}  // namespace detail

/// Assemble a curve from arbitrary callables and finalize p0/p_max_neg.
/// The grid must span [t_start, t_end] and contain t = 0.
inline ProbabilityCurve make_probability_curve(Basis basis, const LzParams& prm,
                                               double t_start, double t_end,
                                               std::function<double(double)> p,
                                               std::function<double(double)> dp_dt,
                                               double p_infinity,
                                               std::vector<double> grid) {
  ProbabilityCurve c;
  c.basis = basis;
  c.params = prm;
  c.t_start = t_start;
  c.t_end = t_end;
  c.p = std::move(p);
  c.dp_dt = std::move(dp_dt);
  c.p_infinity = p_infinity;
  c.sample_times = std::move(grid);
  c.p0 = c.p(0.0);
  detail::resolve_max_neg(c);
  return c;
}

/// P_d(t) = |b(t)|^2 with dP_d/dt = (delta/hbar) Im(b* a).
inline ProbabilityCurve diabatic_curve(std::shared_ptr<const Trajectory> traj) {
  const LzParams prm = traj->params();
  auto p = [traj](double t) { return std::norm(traj->at(t).b); };
  auto dp = [traj, prm](double t) {
    const Amplitudes y = traj->at(t);
    return (prm.delta / prm.hbar) * std::imag(std::conj(y.b) * y.a);
  };
  return make_probability_curve(Basis::Diabatic, prm, traj->t_start(), traj->t_end(),
                                std::move(p), std::move(dp),
                                lz_asymptote(prm, Basis::Diabatic), traj->times());
}

/// P_a(t) = |<phi_up(t), (a,b)>|^2 against the instantaneous upper eigenstate;
/// the derivative combines the equation of motion with the closed-form
/// d/dt of the eigenstate components.
inline ProbabilityCurve adiabatic_curve(std::shared_ptr<const Trajectory> traj) {
  const LzParams prm = traj->params();
  auto overlap = [prm](double t, const Amplitudes& y) {
    const AdiabaticFrame f = adiabatic_frame(prm, t);
    return f.c1 * y.a + f.c2 * y.b;
  };
  auto p = [traj, overlap](double t) { return std::norm(overlap(t, traj->at(t))); };
  auto dp = [traj, prm, overlap](double t) {
    const Amplitudes y = traj->at(t);
    const AdiabaticFrame f = adiabatic_frame(prm, t);
    const Amplitudes ydot = schrod_rhs(prm, t, y);
    const Complex z = f.c1 * y.a + f.c2 * y.b;
    const Complex zdot = f.c1_dot * y.a + f.c2_dot * y.b + f.c1 * ydot.a + f.c2 * ydot.b;
    return 2.0 * std::real(std::conj(z) * zdot);
  };
  return make_probability_curve(Basis::Adiabatic, prm, traj->t_start(), traj->t_end(),
                                std::move(p), std::move(dp),
                                lz_asymptote(prm, Basis::Adiabatic), traj->times());
}

/// Time average of p over the trailing segment [t_end - T_osc, t_end] with
/// T_osc = 4 pi hbar / (alpha t_end), the local phase-oscillation period.
/// Consistency check against the closed-form asymptote only; throws
/// TailNotSettled when the last two segment averages disagree by > 1e-4.
inline double numeric_tail_asymptote(const ProbabilityCurve& curve) {
  const double t_end = curve.t_end;
  const double t_osc = 4.0 * M_PI * curve.params.hbar / (curve.params.alpha * t_end);
  if (!(t_osc > 0.0) || 2.0 * t_osc > t_end - curve.t_start) {
    throw TailNotSettled("numeric_tail_asymptote: window too short for tail segments");
  }
  auto segment_mean = [&](double a, double b) {
    constexpr int n = 512;  // Simpson, n even
    const double h = (b - a) / n;
    double acc = curve.p(a) + curve.p(b);
    for (int i = 1; i < n; ++i) acc += curve.p(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0 / (b - a);
  };
  const double m1 = segment_mean(t_end - t_osc, t_end);
  const double m2 = segment_mean(t_end - 2.0 * t_osc, t_end - t_osc);
  if (std::abs(m1 - m2) > 1e-4) {
    throw TailNotSettled("numeric_tail_asymptote: trailing segment averages differ by > 1e-4");
  }
  return m1;
}

}  // namespace lzt
