#pragma once

#include <cmath>
#include <utility>

#include "lzt/errors.hpp"
#include "lzt/probability.hpp"

namespace lzt {

struct TunnelingDiagnostics {
  int crossing_count = 0;
  bool s2_negative = false;
};

/// Everything the tunneling-time definition produces for one run:
/// the half-width time t', the areas S1 = P(0) and S2 = P(inf) - P(0),
/// tau = |t'| (1 + |S2/S1|), plus the two comparison times.
struct TunnelingTimeReport {
  Basis basis = Basis::Diabatic;
  LzParams params;
  double t_prime = 0.0;
  double p_max_neg = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double tau = 0.0;
  double tau_vitanov = 0.0;
  double tau_empirical = 0.0;
  TunnelingDiagnostics diagnostics;
};

/// Solve P(t') = p_max_neg / 2 for t' < 0.  All sign changes on the sample
/// grid left of the argmax are counted; the crossing closest to the argmax
/// (the leading edge of the principal rise) is bisected to
/// |dt| <= 1e-10 |t_start| and returned.
inline std::pair<double, int> half_width_time(const ProbabilityCurve& curve) {
  if (!(curve.p_max_neg > 0.0)) {
    throw NoCrossing("half_width_time: p_max_neg is not positive");
  }
  const double target = 0.5 * curve.p_max_neg;
  auto f = [&](double t) { return curve.p(t) - target; };

  // scan nodes: samples in [t_start, t_at_max_neg], then the argmax itself
  int crossings = 0;
  double lo = 0.0, hi = 0.0;
  bool have = false;
  double t_prev = curve.t_start;
  double f_prev = f(t_prev);
  auto consider = [&](double t_node) {
    const double f_node = f(t_node);
    if ((f_prev < 0.0 && f_node >= 0.0) || (f_prev > 0.0 && f_node <= 0.0)) {
      ++crossings;
      lo = t_prev;
      hi = t_node;
      have = true;
    }
    t_prev = t_node;
    f_prev = f_node;
  };
  for (double t : curve.sample_times) {
    if (t <= curve.t_start) continue;
    if (t >= curve.t_at_max_neg) break;
    consider(t);
  }
  consider(curve.t_at_max_neg);

  if (!have) {
    throw NoCrossing("half_width_time: P never crosses p_max_neg/2 left of the maximum");
  }

  const double tol_t = 1e-10 * std::abs(curve.t_start);
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol_t; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), crossings};
}

/// S1 and S2 in the telescoped forms S1 = P(0), S2 = P(inf) - P(0);
/// no quadrature of dP/dt is involved.
inline std::pair<double, double> areas(const ProbabilityCurve& curve) {
  if (curve.p0 <= 1e-300) {
    throw DegenerateS1("areas: P(0) vanishes, S2/S1 undefined");
  }
  return {curve.p0, curve.p_infinity - curve.p0};
}

/// Vitanov's definition tau = P(inf) / P'(0).
inline double vitanov_time(const ProbabilityCurve& curve) {
  const double slope = curve.dp_dt(0.0);
  if (std::abs(slope) <= 1e-300) {
    throw ZeroSlope("vitanov_time: P'(0) vanishes");
  }
  return curve.p_infinity / slope;
}

/// Interpolation formula sqrt(delta^2/alpha^2 + 2 hbar/alpha) bridging the
/// adiabatic- and sudden-limit scalings.
inline double empirical_time(const LzParams& p) {
  const double r = p.delta / p.alpha;
  return std::sqrt(r * r + 2.0 * p.hbar / p.alpha);
}

inline TunnelingTimeReport tunneling_time(const ProbabilityCurve& curve) {
  TunnelingTimeReport rep;
  rep.basis = curve.basis;
  rep.params = curve.params;
  auto [t_prime, crossings] = half_width_time(curve);
  auto [s1, s2] = areas(curve);
  rep.t_prime = t_prime;
  rep.p_max_neg = curve.p_max_neg;
  rep.s1 = s1;
  rep.s2 = s2;
  rep.tau = std::abs(t_prime) * (1.0 + std::abs(s2 / s1));
  rep.tau_vitanov = vitanov_time(curve);
  rep.tau_empirical = empirical_time(curve.params);
  rep.diagnostics.crossing_count = crossings;
  rep.diagnostics.s2_negative = s2 < 0.0;
  return rep;
}

}  // namespace lzt
