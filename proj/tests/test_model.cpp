#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lzt/model.hpp"

using namespace lzt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("LzParams validation and eta") {
  const LzParams p = LzParams::make(2.0, 3.0, 1.5);
  CHECK(p.eta() == 2.0 * 1.5 * 3.0 / 4.0);
  CHECK_THROWS_AS(LzParams::make(0.0, 1.0, 1.0), InvalidParams);
  CHECK_THROWS_AS(LzParams::make(1.0, -1.0, 1.0), InvalidParams);
  CHECK_THROWS_AS(LzParams::make(1.0, 1.0, 0.0), InvalidParams);
  CHECK_THROWS_AS(LzParams::from_eta(0.0), InvalidParams);

  const LzParams q = LzParams::from_eta(0.37);
  CHECK_THAT(q.eta(), WithinRel(0.37, 1e-15));
  CHECK(q.delta == 1.0);
  CHECK(q.hbar == 1.0);
}

TEST_CASE("hamiltonian matrix elements") {
  const Hamiltonian2 h0 = hamiltonian(LzParams{1.0, 1.0, 1.0}, 0.0);
  CHECK(h0.diag == 0.0);
  CHECK(h0.off == 0.5);

  const Hamiltonian2 h1 = hamiltonian(LzParams{1.0, 2.0, 1.0}, 3.0);
  CHECK(h1.diag == 3.0);
  CHECK(h1.off == 0.5);
}

TEST_CASE("hamiltonian eigenvalues are +-sqrt(gamma^2+delta^2)/2") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const LzParams p{std::exp(u(rng)), std::exp(u(rng)), 1.0};
    const double t = u(rng);
    const Hamiltonian2 h = hamiltonian(p, t);
    const double g = p.alpha * t;
    CHECK_THAT(h.upper_eigenvalue(), WithinRel(0.5 * std::hypot(g, p.delta), 1e-14));
    CHECK(h.lower_eigenvalue() == -h.upper_eigenvalue());
  }
}

TEST_CASE("upper eigenstate special points") {
  const LzParams p{1.0, 1.0, 1.0};
  const Amplitudes v0 = upper_eigenstate(p, 0.0);
  CHECK_THAT(v0.a.real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(v0.b.real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));

  const Amplitudes vm = upper_eigenstate(p, -1e9);
  CHECK(std::abs(vm.a) < 1e-9);
  CHECK_THAT(vm.b.real(), WithinAbs(1.0, 1e-12));

  const Amplitudes vp = upper_eigenstate(p, 1e9);
  CHECK_THAT(vp.a.real(), WithinAbs(1.0, 1e-12));
  CHECK(std::abs(vp.b) < 1e-9);
}

TEST_CASE("eigenstate residual over 12 decades of gamma/delta") {
  const LzParams p{1.0, 1.0, 1.0};
  for (double g = -1e6; std::abs(g) >= 1e-6; g /= -10.0) {  // alternate signs
    const double t = g / p.alpha;
    const Hamiltonian2 h = hamiltonian(p, t);
    const AdiabaticFrame f = adiabatic_frame(p, t);
    const double lambda = h.upper_eigenvalue();
    const double r1 = h.diag * f.c1 + h.off * f.c2 - lambda * f.c1;
    const double r2 = h.off * f.c1 - h.diag * f.c2 - lambda * f.c2;
    CHECK(std::hypot(r1, r2) / lambda < 1e-12);
    CHECK_THAT(f.c1 * f.c1 + f.c2 * f.c2, WithinAbs(1.0, 1e-14));
    CHECK(f.c1 >= 0.0);
    CHECK(f.c2 >= 0.0);
  }
}

TEST_CASE("eigenstate components are continuous in t") {
  const LzParams p{1.0, 0.7, 1.0};
  const double dt = 1e-6 * p.delta / p.alpha;
  for (double t = -30.0; t <= 30.0; t += 0.37) {
    const AdiabaticFrame f0 = adiabatic_frame(p, t);
    const AdiabaticFrame f1 = adiabatic_frame(p, t + dt);
    const double dv = std::hypot(f1.c1 - f0.c1, f1.c2 - f0.c2);
    CHECK(dv <= 1e-4);
  }
}

TEST_CASE("eigenstate derivative formulas match finite differences") {
  const LzParams p{1.3, 0.9, 0.8};
  for (double t : {-11.0, -2.0, -0.1, 0.0, 0.4, 3.0, 25.0}) {
    const AdiabaticFrame f = adiabatic_frame(p, t);
    const double h = 1e-6;
    const AdiabaticFrame fp = adiabatic_frame(p, t + h);
    const AdiabaticFrame fm = adiabatic_frame(p, t - h);
    CHECK_THAT(f.c1_dot, WithinAbs((fp.c1 - fm.c1) / (2.0 * h), 1e-8));
    CHECK_THAT(f.c2_dot, WithinAbs((fp.c2 - fm.c2) / (2.0 * h), 1e-8));
  }
}

TEST_CASE("lower eigenstate: orthogonality and asymptotic initial condition") {
  const LzParams p{1.0, 1.0, 1.0};

  const Amplitudes lo = lower_eigenstate(p, -2000.0);
  CHECK_THAT(lo.a.real(), WithinAbs(0.999999968750005, 1e-12));
  CHECK_THAT(lo.b.real(), WithinAbs(-0.0002499999766, 1e-10));
  CHECK_THAT(std::abs(lo.b), WithinRel(p.delta / (2.0 * 2000.0), 1e-4));

  for (double t : {-2000.0, -3.0, 0.0, 5.0, 800.0}) {
    const Amplitudes up = upper_eigenstate(p, t);
    const Amplitudes dn = lower_eigenstate(p, t);
    const double dot = up.a.real() * dn.a.real() + up.b.real() * dn.b.real();
    CHECK(std::abs(dot) < 1e-15);
    CHECK(dn.a.real() >= 0.0);
  }

  const Amplitudes far = lower_eigenstate(p, -1e9);
  CHECK_THAT(far.a.real(), WithinAbs(1.0, 1e-12));
  CHECK(std::abs(far.b) < 1e-8);
}

TEST_CASE("lz asymptote closed forms") {
  const LzParams pi_params = LzParams::from_eta(M_PI);
  CHECK_THAT(lz_asymptote(pi_params, Basis::Diabatic),
             WithinAbs(1.0 - std::exp(-1.0), 1e-14));

  const LzParams unit = LzParams::from_eta(1.0);
  CHECK_THAT(lz_asymptote(unit, Basis::Adiabatic), WithinAbs(0.0432139182637722, 1e-14));

  CHECK(lz_asymptote(LzParams::from_eta(1e-6), Basis::Adiabatic) == 0.0);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const LzParams p = LzParams::from_eta(std::exp(u(rng)));
    CHECK_THAT(lz_asymptote(p, Basis::Diabatic) + lz_asymptote(p, Basis::Adiabatic),
               WithinAbs(1.0, 1e-15));
  }
}

TEST_CASE("schrod_rhs is -(i/hbar) H y") {
  const LzParams p{1.1, 0.6, 1.4};
  const Amplitudes y{{0.3, -0.2}, {0.5, 0.7}};
  const double t = 1.7;
  const Hamiltonian2 h = hamiltonian(p, t);
  const Complex i_inv{0.0, -1.0 / p.hbar};
  const Amplitudes d = schrod_rhs(p, t, y);
  CHECK(std::abs(d.a - i_inv * (h.diag * y.a + h.off * y.b)) < 1e-16);
  CHECK(std::abs(d.b - i_inv * (h.off * y.a - h.diag * y.b)) < 1e-16);
}
