#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lzt/asymptotics.hpp"
#include "test_helpers.hpp"

using namespace lzt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("fresnel against adaptive-quadrature oracle", "[oracle]") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const FresnelCS f = fresnel(x);
    const double c_ref = lzt_test::integrate(
        [](double t) { return std::cos(0.5 * M_PI * t * t); }, 0.0, x);
    const double s_ref = lzt_test::integrate(
        [](double t) { return std::sin(0.5 * M_PI * t * t); }, 0.0, x);
    worst = std::max({worst, std::abs(f.c - c_ref), std::abs(f.s - s_ref)});
  }
  INFO("worst |fresnel - quadrature| = " << worst);
  CHECK(worst <= 1e-12);
}

TEST_CASE("fresnel frozen values and limits") {
  CHECK(fresnel(0.0).c == 0.0);
  CHECK(fresnel(0.0).s == 0.0);

  // computed with 30-digit arithmetic before freezing
  CHECK_THAT(fresnel(1.0).c, WithinAbs(0.77989340037682283, 1e-14));
  CHECK_THAT(fresnel(1.0).s, WithinAbs(0.43825914739035477, 1e-14));
  CHECK_THAT(fresnel(2.5).c, WithinAbs(0.45741300964177705, 1e-14));
  CHECK_THAT(fresnel(2.5).s, WithinAbs(0.61918175581959294, 1e-14));
  CHECK_THAT(fresnel(10.5).c, WithinAbs(0.48848000730270921, 1e-14));
  CHECK_THAT(fresnel(10.5).s, WithinAbs(0.52804040799812976, 1e-14));
  CHECK_THAT(fresnel(49.5).c, WithinAbs(0.49753992505125972, 1e-13));
  CHECK_THAT(fresnel(49.5).s, WithinAbs(0.50594132926122657, 1e-13));

  // asymptotic branch and the standard limit
  CHECK_THAT(fresnel(77.3).c, WithinAbs(0.49630195972947218, 1e-13));
  CHECK_THAT(fresnel(1e6).c, WithinAbs(0.5, 1e-6));
  CHECK_THAT(fresnel(1e6).s, WithinAbs(0.5, 1e-6));

  // matched accuracy at the method switch point
  const FresnelCS below = fresnel(50.0 - 1e-9);
  const FresnelCS above = fresnel(50.0 + 1e-9);
  CHECK(std::abs(below.c - above.c) < 1e-11);
  CHECK(std::abs(below.s - above.s) < 1e-11);
}

TEST_CASE("fresnel is odd") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 60.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    const FresnelCS fp = fresnel(x);
    const FresnelCS fn = fresnel(-x);
    CHECK(fn.c == -fp.c);
    CHECK(fn.s == -fp.s);
  }
}

TEST_CASE("b1 closed form") {
  const std::complex<double> at0 = b1(0.0);
  CHECK_THAT(at0.real(), WithinAbs(std::sqrt(M_PI) / 2.0, 1e-14));
  CHECK_THAT(at0.imag(), WithinAbs(-std::sqrt(M_PI) / 2.0, 1e-14));
  CHECK_THAT(std::norm(at0), WithinAbs(M_PI / 2.0, 1e-13));

  CHECK(std::abs(b1(-200.0)) < 1e-2);
  CHECK(std::abs(b1(-2000.0)) < 1e-3);

  // b1(+inf) = sqrt(2 pi) e^{-i pi/4}
  const std::complex<double> far = b1(1e5);
  CHECK_THAT(std::norm(far), WithinAbs(2.0 * M_PI, 1e-3));
  CHECK_THAT(std::arg(far), WithinAbs(-M_PI / 4.0, 1e-4));
}

TEST_CASE("adiabatic-limit diabatic curve") {
  const LzParams p{1.0, 1.0, 1.0};
  CHECK(curve_adiabatic_diabatic(p, 0.0) == 0.5);
  CHECK_THAT(curve_adiabatic_diabatic(p, -1.0 / std::sqrt(3.0)), WithinAbs(0.25, 1e-15));
  CHECK_THAT(curve_adiabatic_diabatic(p, 1e12), WithinAbs(1.0, 1e-12));
  CHECK_THAT(curve_adiabatic_diabatic(p, -1e12), WithinAbs(0.0, 1e-24));
}

TEST_CASE("adiabatic-limit adiabatic curve") {
  const LzParams p = LzParams::from_eta(0.1);
  const double eta = p.eta();
  CHECK_THAT(curve_adiabatic_adiabatic(p, 0.0), WithinRel(eta * eta / 16.0, 1e-13));

  const double t_half = std::sqrt(std::cbrt(2.0) - 1.0) * p.delta / p.alpha;
  CHECK_THAT(curve_adiabatic_adiabatic(p, t_half),
             WithinRel(0.5 * curve_adiabatic_adiabatic(p, 0.0), 1e-12));
  CHECK_THAT(curve_adiabatic_adiabatic(p, -t_half),
             WithinRel(0.5 * curve_adiabatic_adiabatic(p, 0.0), 1e-12));

  // t^-6 tail
  const double ratio = curve_adiabatic_adiabatic(p, 10.0 * p.delta / p.alpha) /
                       curve_adiabatic_adiabatic(p, 20.0 * p.delta / p.alpha);
  CHECK_THAT(ratio, WithinRel(64.0, 0.02));
}

TEST_CASE("sudden-limit diabatic curve") {
  for (double eta : {50.0, 200.0}) {
    CHECK_THAT(curve_sudden_diabatic(eta, 0.0), WithinRel(M_PI / (4.0 * eta), 1e-14));
    CHECK_THAT(curve_sudden_diabatic(eta, 1e5), WithinRel(M_PI / eta, 1e-3));
    // printed half-width point: P(-0.6241) = pi/(8 eta) to 4 digits
    CHECK_THAT(curve_sudden_diabatic(eta, -0.6241) * 8.0 * eta / M_PI,
               WithinAbs(1.0, 1e-3));
  }
  // equals |b1|^2/(2 eta)
  for (double y : {-3.0, -0.5, 0.0, 1.0, 7.0}) {
    CHECK_THAT(curve_sudden_diabatic(100.0, y),
               WithinRel(std::norm(b1(y)) / 200.0, 1e-13));
  }
}

TEST_CASE("sudden-limit curve approaches the LZ formula as O(1/eta^2)") {
  auto gap = [](double eta) {
    return std::abs(curve_sudden_diabatic(eta, 1e4) - (1.0 - std::exp(-M_PI / eta)));
  };
  const double g50 = gap(50.0), g100 = gap(100.0), g200 = gap(200.0);
  CHECK(g50 / g100 > 3.5);
  CHECK(g100 / g200 > 3.5);
  CHECK(g50 / g100 < 4.5);
}

TEST_CASE("sudden half-width root is recomputed, matches printed constants") {
  const double root = sudden_half_width_root();
  CHECK_THAT(root, WithinAbs(-0.62406636008481973, 1e-12));
  CHECK_THAT(std::abs(root), WithinAbs(0.6241, 5e-5));           // 4 digits
  CHECK_THAT(4.0 * std::abs(root), WithinAbs(2.4964, 5e-4));     // 4 sig digits

  // it actually solves the half-width condition
  const FresnelCS f = fresnel(root / std::sqrt(M_PI));
  const double cc = 0.5 + f.c, ss = 0.5 + f.s;
  CHECK_THAT(cc * cc + ss * ss, WithinAbs(0.25, 1e-12));
}

TEST_CASE("first-order sudden-limit adiabatic curve") {
  const double eta = 100.0;
  // frozen from 30-digit evaluation of the closed form
  CHECK_THAT(curve_sudden_adiabatic(eta, 0.0), WithinAbs(0.439834293134, 1e-10));
  // the first-order expansion leaves a 1/(2 eta) residue at y -> -inf
  CHECK_THAT(curve_sudden_adiabatic(eta, -1e4), WithinAbs(1.0 / (2.0 * eta), 1e-8));
  CHECK(curve_sudden_adiabatic_two_term(eta, 0.0) == 0.5);
}

TEST_CASE("two-term sudden adiabatic curve is the adiabatic-limit diabatic curve") {
  for (double eta : {50.0, 100.0}) {
    const LzParams p = LzParams::from_eta(eta);
    const double tu = std::sqrt(p.hbar / p.alpha);
    for (double y = -10.0; y <= 10.0; y += 0.08333) {
      const double lhs = curve_sudden_adiabatic_two_term(eta, y);
      const double rhs = curve_adiabatic_diabatic(p, y * tu);
      CHECK(std::abs(lhs - rhs) <= 1e-15);
    }
  }
}

TEST_CASE("limiting tunneling times") {
  const LzParams slow = LzParams::make(1.0, 0.01, 1.0);
  CHECK_THAT(limit_tau(Basis::Diabatic, LimitKind::AdiabaticLimit, slow),
             WithinAbs(115.47005383792515, 1e-9));
  CHECK_THAT(limit_tau(Basis::Adiabatic, LimitKind::AdiabaticLimit, slow),
             WithinAbs(101.96490570679172, 1e-9));

  const LzParams fast = LzParams::make(1.0, 100.0, 1.0);
  CHECK_THAT(limit_tau(Basis::Diabatic, LimitKind::SuddenLimit, fast),
             WithinAbs(0.24964, 5e-5));
  CHECK_THAT(limit_tau(Basis::Diabatic, LimitKind::SuddenLimit, fast),
             WithinRel(0.4 * std::abs(sudden_half_width_root()), 1e-14));
  CHECK_THAT(limit_tau(Basis::Adiabatic, LimitKind::SuddenLimit, fast),
             WithinAbs(2.0 * std::sqrt(3.0) / 3.0 / 100.0, 1e-14));
}

TEST_CASE("vitanov zeta in the adiabatic basis") {
  // eta = 2 in natural units: sqrt(2) e^{-pi/4}
  CHECK_THAT(vitanov_zeta_adiabatic(LzParams::from_eta(2.0)),
             WithinAbs(0.644793883889669, 1e-12));
  CHECK_THAT(vitanov_zeta_adiabatic(LzParams::from_eta(2.0 / M_PI)),
             WithinAbs(0.212574541825397, 1e-12));
  // vanishes at the adiabatic limit
  CHECK(vitanov_zeta_adiabatic(LzParams::from_eta(0.01)) < 1e-60);
}
