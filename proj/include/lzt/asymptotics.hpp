#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "lzt/errors.hpp"
#include "lzt/model.hpp"

namespace lzt {

enum class LimitKind { AdiabaticLimit, SuddenLimit };

/// Dimensionless time y = t / sqrt(hbar/alpha) used by the sudden-limit forms.
using ScaledTime = double;

struct FresnelCS {
  double c = 0.0;
  double s = 0.0;
};

namespace detail {

// Fresnel integrals E(x) = C(x) + i S(x) = int_0^x exp(i pi u^2/2) du.
//
// On [0, 50] the value is produced from a precomputed anchor table: the
// integrand f = exp(i pi x^2/2) obeys f^(n+1)(a) = i pi (a f^(n) + n f^(n-1)),
// so E extends from an anchor by a Taylor series whose terms are generated on
// the fly.  Anchor spacing shrinks like 1/x to keep pi*x*step bounded, which
// caps the series length at ~30 terms everywhere.  Beyond x = 50 the classic
// asymptotic auxiliary expansion is fully converged at double precision.

inline std::complex<double> fresnel_taylor(std::complex<double> e_a, double a, double dx) {
  // E(a + dx) from anchor value E(a); integrand derivatives by recurrence.
  const std::complex<double> ipi{0.0, M_PI};
  std::complex<double> f_prev{0.0, 0.0};
  std::complex<double> f_cur = std::exp(ipi * (0.5 * a * a));
  std::complex<double> term = f_cur * dx;  // f^(0) dx / 1!
  std::complex<double> sum = term;
  double factor = dx;
  for (int n = 1; n < 64; ++n) {
    const std::complex<double> f_next = ipi * (a * f_cur + static_cast<double>(n - 1) * f_prev);
    f_prev = f_cur;
    f_cur = f_next;
    factor *= dx / (n + 1);
    term = f_cur * factor;
    sum += term;
    if (std::abs(term) < 1e-18 && n > 4) break;
  }
  return e_a + sum;
}

struct FresnelTable {
  std::vector<double> x;
  std::vector<std::complex<double>> e;

  FresnelTable() {
    double a = 0.0;
    std::complex<double> val{0.0, 0.0};
    x.push_back(a);
    e.push_back(val);
    while (a < 50.0) {
      double step = std::min(0.5, 2.5 / (M_PI * std::max(a, 1.0)));
      if (a + step > 50.0) step = 50.0 - a;
      val = fresnel_taylor(val, a, step);
      a += step;
      x.push_back(a);
      e.push_back(val);
    }
  }
};

inline FresnelCS fresnel_asymptotic(double x) {
  // C = 1/2 + f sin - g cos, S = 1/2 - f cos - g sin at argument pi x^2 / 2.
  const double pix2 = M_PI * x * x;
  double f = 0.0, g = 0.0, tf = 1.0, tg = 1.0;
  for (int k = 0;; ++k) {
    if (k > 0) {
      const double s = (4.0 * k - 1.0) * (4.0 * k - 3.0) / (pix2 * pix2);
      tf *= -s;
      const double sg = (4.0 * k + 1.0) * (4.0 * k - 1.0) / (pix2 * pix2);
      tg *= -sg;
    }
    f += tf;
    g += tg;
    if (std::abs(tf) < 1e-18 && std::abs(tg) < 1e-18) break;
    if (k > 40) break;
  }
  f /= M_PI * x;
  g /= M_PI * x * pix2;
  const double arg = 0.5 * pix2;
  const double sn = std::sin(arg), cs = std::cos(arg);
  return FresnelCS{0.5 + f * sn - g * cs, 0.5 - f * cs - g * sn};
}

}  // namespace detail

/// Fresnel integrals C(x) = int_0^x cos(pi u^2/2) du, S likewise with sin.
/// Both are odd; accuracy ~1e-14 on |x| <= 50, asymptotic beyond.
inline FresnelCS fresnel(double x) {
  const double ax = std::abs(x);
  FresnelCS r;
  if (ax <= 50.0) {
    static const detail::FresnelTable table;
    // nearest anchor
    const auto it = std::lower_bound(table.x.begin(), table.x.end(), ax);
    std::size_t k = static_cast<std::size_t>(it - table.x.begin());
    if (k == table.x.size() || (k > 0 && ax - table.x[k - 1] < table.x[k] - ax)) --k;
    const std::complex<double> v = detail::fresnel_taylor(table.e[k], table.x[k], ax - table.x[k]);
    r = FresnelCS{v.real(), v.imag()};
  } else {
    r = detail::fresnel_asymptotic(ax);
  }
  if (x < 0.0) {
    r.c = -r.c;
    r.s = -r.s;
  }
  return r;
}

/// b_1(y) = int_{-inf}^{y} exp(-i x^2/2) dx in closed Fresnel form.
inline std::complex<double> b1(ScaledTime y) {
  const FresnelCS f = fresnel(y / std::sqrt(M_PI));
  const double sp = std::sqrt(M_PI);
  return std::complex<double>{sp * (0.5 + f.c), -sp * (0.5 + f.s)};
}

/// Adiabatic-limit P_d(t): 1/2 + alpha t / (2 sqrt(alpha^2 t^2 + delta^2)).
inline double curve_adiabatic_diabatic(const LzParams& p, double t) {
  const double g = p.alpha * t;
  return 0.5 + 0.5 * g / std::hypot(g, p.delta);
}

/// Adiabatic-limit P_a(t): alpha^2 hbar^2 delta^2 / (4 (alpha^2 t^2 + delta^2)^3).
inline double curve_adiabatic_adiabatic(const LzParams& p, double t) {
  const double r = std::hypot(p.alpha * t, p.delta);
  const double w = p.alpha * p.hbar * p.delta / (2.0 * r * r * r);
  return w * w;
}

/// Sudden-limit P_d as a function of scaled time: |b_1(y)|^2 / (2 eta).
inline double curve_sudden_diabatic(double eta, ScaledTime y) {
  if (!(eta > 0.0)) throw InvalidParams("curve_sudden_diabatic: eta must be positive");
  const FresnelCS f = fresnel(y / std::sqrt(M_PI));
  const double cc = 0.5 + f.c, ss = 0.5 + f.s;
  return (M_PI / (2.0 * eta)) * (cc * cc + ss * ss);
}

/// First-order sudden-limit P_a(y); the trailing O(1/eta) terms do not vanish
/// as y -> -inf, where the expression tends to 1/(2 eta).
inline double curve_sudden_adiabatic(double eta, ScaledTime y) {
  if (!(eta > 0.0)) throw InvalidParams("curve_sudden_adiabatic: eta must be positive");
  const double root = std::sqrt(y * y + 2.0 / eta);
  const double lead = 0.5 * y / root;
  const FresnelCS f = fresnel(y / std::sqrt(M_PI));
  const double sine_integral = std::sqrt(M_PI) * (0.5 + f.s);
  const double cross = std::cos(0.5 * y * y) * sine_integral /
                       std::sqrt(eta * (eta * y * y + 2.0));
  return 0.5 + lead - cross + (0.5 / eta) * (0.5 - lead);
}

/// Dominant two-term simplification of the above, identical to the
/// adiabatic-limit diabatic curve expressed in scaled time.
inline double curve_sudden_adiabatic_two_term(double eta, ScaledTime y) {
  if (!(eta > 0.0)) throw InvalidParams("curve_sudden_adiabatic_two_term: eta must be positive");
  return 0.5 + 0.5 * y / std::sqrt(y * y + 2.0 / eta);
}

/// Negative root of [1/2 + C(y/sqrt(pi))]^2 + [1/2 + S(y/sqrt(pi))]^2 = 1/4,
/// i.e. the half-width time of the sudden-limit diabatic curve in scaled
/// units.  Recomputed at first use rather than hard-coded ( ~ -0.62407; the
/// quadruple is tau = 4|root| ~ 2.4963).
inline double sudden_half_width_root() {
  static const double root = [] {
    auto f = [](double y) {
      const FresnelCS r = fresnel(y / std::sqrt(M_PI));
      const double cc = 0.5 + r.c, ss = 0.5 + r.s;
      return cc * cc + ss * ss - 0.25;
    };
    double lo = -1.5, hi = -0.1;  // f(lo) < 0 < f(hi)
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

/// Closed-form limiting tunneling times, Basis x LimitKind.
inline double limit_tau(Basis basis, LimitKind limit, const LzParams& p) {
  const double ratio = p.delta / p.alpha;
  if (limit == LimitKind::AdiabaticLimit) {
    return basis == Basis::Diabatic
               ? (2.0 * std::sqrt(3.0) / 3.0) * ratio
               : 2.0 * std::sqrt(std::cbrt(2.0) - 1.0) * ratio;
  }
  return basis == Basis::Diabatic
             ? 4.0 * std::abs(sudden_half_width_root()) * std::sqrt(p.hbar / p.alpha)
             : (2.0 * std::sqrt(3.0) / 3.0) * ratio;
}

/// Vitanov's closed-form adiabatic-basis time sqrt(2) delta / sqrt(alpha hbar)
/// * exp(-pi delta^2 / (4 alpha hbar)); vanishes at the adiabatic limit, which
/// is the failure the paper's definition corrects.
inline double vitanov_zeta_adiabatic(const LzParams& p) {
  const double x = p.delta * p.delta / (p.alpha * p.hbar);
  return std::sqrt(2.0 * x) * std::exp(-0.25 * M_PI * x);
}

}  // namespace lzt
