#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "lzt/errors.hpp"

namespace lzt {

using Complex = std::complex<double>;

/// Physical configuration of the two-level crossing: gap `delta`, sweep rate
/// `alpha`, and the value of the reduced Planck constant in the chosen unit
/// system.  The quickness parameter eta = 2*hbar*alpha/delta^2 is always
/// recomputed from the other three.
struct LzParams {
  double delta = 1.0;
  double alpha = 1.0;
  double hbar = 1.0;

  double eta() const { return 2.0 * hbar * alpha / (delta * delta); }

  /// Validating factory; rejects non-positive entries.
  static LzParams make(double delta, double alpha, double hbar = 1.0) {
    if (!(delta > 0.0) || !(alpha > 0.0) || !(hbar > 0.0)) {
      throw InvalidParams("LzParams: delta, alpha and hbar must be positive");
    }
    return LzParams{delta, alpha, hbar};
  }

  /// Natural-unit configuration (delta = hbar = 1) with the requested
  /// quickness; alpha expressed in units of delta^2/(2 hbar) equals eta.
  static LzParams from_eta(double eta) {
    if (!(eta > 0.0)) throw InvalidParams("LzParams: eta must be positive");
    return LzParams{1.0, eta / 2.0, 1.0};
  }
};

/// Diabatic-basis state vector (a, b).
struct Amplitudes {
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};

  double norm_sq() const { return std::norm(a) + std::norm(b); }
};

enum class Basis { Diabatic, Adiabatic };

inline std::string to_string(Basis b) {
  return b == Basis::Diabatic ? "diabatic" : "adiabatic";
}

/// Real symmetric traceless 2x2 matrix [[diag, off], [off, -diag]].
struct Hamiltonian2 {
  double diag = 0.0;  // gamma/2 = alpha*t/2
  double off = 0.0;   // delta/2

  double upper_eigenvalue() const { return std::hypot(diag, off); }
  double lower_eigenvalue() const { return -upper_eigenvalue(); }
};

inline Hamiltonian2 hamiltonian(const LzParams& p, double t) {
  return Hamiltonian2{0.5 * p.alpha * t, 0.5 * p.delta};
}

/// Right-hand side of i hbar d/dt (a,b) = H (a,b).
inline Amplitudes schrod_rhs(const LzParams& p, double t, const Amplitudes& y) {
  const Hamiltonian2 h = hamiltonian(p, t);
  const Complex minus_i_over_hbar{0.0, -1.0 / p.hbar};
  return Amplitudes{minus_i_over_hbar * (h.diag * y.a + h.off * y.b),
                    minus_i_over_hbar * (h.off * y.a - h.diag * y.b)};
}

/// Instantaneous eigenbasis data at time t.  c1, c2 are the components of the
/// upper eigenstate in the paper's real non-negative convention; the lower
/// eigenstate is (c2, -c1).  The time derivatives follow from
/// d(theta)/dt = -delta*alpha/r^2 with tan(theta) = delta/gamma.
struct AdiabaticFrame {
  double c1 = 0.0;
  double c2 = 0.0;
  double r = 0.0;  // sqrt(gamma^2 + delta^2)
  double c1_dot = 0.0;
  double c2_dot = 0.0;
};

inline AdiabaticFrame adiabatic_frame(const LzParams& p, double t) {
  const double gamma = p.alpha * t;
  const double r = std::hypot(gamma, p.delta);
  if (r == 0.0) {
    throw InvalidParams("adiabatic_frame: eigenbasis undefined at gamma = delta = 0");
  }
  AdiabaticFrame f;
  f.r = r;
  // Evaluate the large component from the half-angle formula and recover the
  // small one from c1*c2 = delta/(2 r); avoids cancellation at |gamma| >> delta.
  if (gamma >= 0.0) {
    f.c1 = std::sqrt(0.5 * (1.0 + gamma / r));
    f.c2 = (p.delta == 0.0) ? 0.0 : p.delta / (2.0 * r * f.c1);
  } else {
    f.c2 = std::sqrt(0.5 * (1.0 - gamma / r));
    f.c1 = (p.delta == 0.0) ? 0.0 : p.delta / (2.0 * r * f.c2);
  }
  const double theta_dot = -p.delta * p.alpha / (r * r);
  f.c1_dot = -0.5 * theta_dot * f.c2;
  f.c2_dot = 0.5 * theta_dot * f.c1;
  return f;
}

/// Eigenvector of hamiltonian(p, t) with eigenvalue +sqrt(gamma^2+delta^2)/2.
inline Amplitudes upper_eigenstate(const LzParams& p, double t) {
  const AdiabaticFrame f = adiabatic_frame(p, t);
  return Amplitudes{Complex{f.c1, 0.0}, Complex{f.c2, 0.0}};
}

/// Orthogonal complement of the upper eigenstate, first component >= 0.
/// Tends to (1, 0) as t -> -inf, realizing the a(-inf) = 1 initial condition.
inline Amplitudes lower_eigenstate(const LzParams& p, double t) {
  const AdiabaticFrame f = adiabatic_frame(p, t);
  return Amplitudes{Complex{f.c2, 0.0}, Complex{-f.c1, 0.0}};
}

/// Closed-form t -> +inf transition probability.  Diabatic basis:
/// 1 - exp(-pi/eta); adiabatic basis: exp(-pi/eta).  The two sum to one.
inline double lz_asymptote(const LzParams& p, Basis basis) {
  const double survival = std::exp(-M_PI / p.eta());
  return basis == Basis::Diabatic ? 1.0 - survival : survival;
}

}  // namespace lzt
