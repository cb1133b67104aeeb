#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "tlmagnus/errors.hpp"
#include "tlmagnus/models.hpp"
#include "tlmagnus/specfun.hpp"

using namespace tlm;

namespace {

// Midpoint sum of the semi-infinite J integral in s on [0, s_max].
double brute_J(double gamma, double s_max, double ds) {
  double sum = 0.0;
  for (double s = 0.5 * ds; s < s_max; s += ds) sum += std::cos(gamma * (std::sinh(2 * s) + 2 * s)) / std::cosh(s);
  return sum * ds;
}

// Iterated trapezoid sums of C2 on a uniform grid in s = asinh(x).
double brute_C2(double gamma, double s_max, double ds) {
  auto v = [gamma](double s) {
    return cplx{0.0, 0.5} * std::exp(cplx{0.0, gamma * (std::sinh(2 * s) + 2 * s)}) / std::cosh(s);
  };
  cplx inner{};
  double outer = 0.0;
  cplx prev = v(-s_max);
  double prev_rate = 0.0;
  for (double s = -s_max + ds; s <= s_max; s += ds) {
    const cplx cur = v(s);
    inner += 0.5 * ds * (prev + cur);
    const double rate = (cur * std::conj(inner)).imag();
    outer += 0.5 * ds * (prev_rate + rate);
    prev = cur;
    prev_rate = rate;
  }
  return outer;
}

double oracle_eps(double delta, double g, ShapeKind shape = ShapeKind::Cos) {
  return rabi_quasienergy({delta, g, shape}, parse_method("oracle")).epsilon;
}

}  // namespace

TEST_CASE("lz_exact") {
  const auto sudden = lz_exact({0.0});
  CHECK(sudden.probability == 1.0);
  CHECK(*sudden.stokes == doctest::Approx(kPi / 4));
  CHECK(lz_exact({0.25}).probability == doctest::Approx(0.207880).epsilon(1e-6));
  CHECK(*lz_exact({1.0}).stokes == doctest::Approx(0.087038).epsilon(1e-5));
  CHECK_THROWS_AS(lz_exact({-1.0}), ParameterOutOfRange);
}

TEST_CASE("lz_J against a brute-force sum") {
  CHECK(lz_J(0.0) == doctest::Approx(kPi / 2));
  CHECK(std::abs(lz_J(5.0)) < lz_J(0.1));
  // tail beyond s = 5 is below 1/(4 gamma cosh^3 5) ~ 6e-7
  CHECK(std::abs(lz_J(1.0) - brute_J(1.0, 5.0, 1e-6)) < 2e-6);
}

TEST_CASE("lz_C2 against a brute-force iterated sum") {
  CHECK(lz_C2(0.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(lz_C2(1.0, 1e-8) - brute_C2(1.0, 5.0, 2e-6)) < 1e-5);
}

TEST_CASE("lz_magnus probabilities") {
  const auto first = lz_magnus({0.0}, 1);
  CHECK(first.probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(first.stokes.has_value());
  CHECK(lz_magnus({0.3}, 2).stokes.has_value());
  for (double gamma : {0.05, 0.2, 0.5, 1.0}) {
    CHECK(std::abs(lz_magnus({gamma}, 3).probability - lz_exact({gamma}).probability) <= 5e-3);
  }
  // lower orders are accurate at both ends of the gamma range
  auto err1 = [](double gamma) { return std::abs(lz_magnus({gamma}, 1).probability - lz_exact({gamma}).probability); };
  // first order misses P by about pi * gamma near the sudden limit
  CHECK(err1(1e-2) == doctest::Approx(kPi * 1e-2).epsilon(0.15));
  CHECK(err1(1e-3) < err1(1e-2));
  CHECK(err1(1e-3) < err1(0.5));
  CHECK(err1(3.0) < err1(0.5));
  CHECK_THROWS_AS(lz_magnus({0.5}, 4), ValidationError);
}

TEST_CASE("lz second-order Stokes phase approaches pi/4 in the sudden limit") {
  double prev = 1.0;
  for (double gamma : {1e-5, 1e-6, 1e-7}) {
    const double dev = std::abs(*lz_magnus({gamma}, 2, 1e-3 * gamma).stokes - kPi / 4);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-3);
  // within 0.03 pi of the exact phase at both ends
  for (double gamma : {0.05, 0.1, 1.5, 2.0}) {
    CHECK(std::abs(*lz_magnus({gamma}, 2).stokes - *lz_exact({gamma}).stokes) < 0.03 * kPi);
  }
}

TEST_CASE("lz PT symmetry of the adiabatic-picture coefficients") {
  CHECK(lz_symmetry_report({0.5}, 1).all_pass());
  const auto third = lz_symmetry_report({0.5}, 3);
  CHECK(third.all_pass());
  CHECK(third.checks.size() == 2);
  CHECK_FALSE(lz_symmetry_report({0.5}, 3, 0.3).all_pass());
}

TEST_CASE("parse_method") {
  const MethodInfo m = parse_method("magnus:adiabatic:2:half");
  CHECK(m.kind == MethodKind::Magnus);
  CHECK(m.picture == PictureKind::Adiabatic);
  CHECK(m.order == 2);
  CHECK(m.mode == PeriodMode::HalfPeriod);
  CHECK(m.label() == "magnus:adiabatic:2:half");
  CHECK(parse_method("zma").kind == MethodKind::ZMA);
  CHECK(parse_method("zma:region1:full").mode == PeriodMode::FullPeriod);
  CHECK(parse_method("oracle").kind == MethodKind::OracleODE);
  CHECK(parse_method("heun").kind == MethodKind::Exact);
  for (const char* bad : {"", "magnus", "magnus:region4:2:half", "magnus:region1:x:half", "magnus:region1:0:half",
                          "magnus:region1:2:quarter", "oracle:1", "rk4"}) {
    CHECK_THROWS_AS(parse_method(bad), ConfigError);
  }
}

TEST_CASE("rabi static limit in every method") {
  for (const char* method : {"oracle", "heun", "zma", "zma:region1:half", "magnus:region1:1:half",
                             "magnus:region1:2:full", "magnus:region2:1:half", "magnus:region2:1:full",
                             "magnus:adiabatic:2:half", "magnus:adiabatic:2:full"}) {
    CAPTURE(method);
    CHECK(quasienergy_distance(rabi_quasienergy({0.6, 0.0}, parse_method(method)).epsilon, 0.3) < 1e-10);
  }
}

TEST_CASE("rabi region-II first order is the Bessel result") {
  for (double g : {0.5, 1.3, 2.4, 4.0}) {
    const double delta = 0.1;
    const auto r = rabi_quasienergy({delta, g}, parse_method("magnus:region2:1:full"));
    CHECK(r.epsilon == doctest::Approx(0.5 * delta * bessel_j0(g)).epsilon(1e-9));
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->certified);
  }
}

TEST_CASE("rabi Magnus routes agree with the oracle in their regions") {
  CHECK(std::abs(rabi_quasienergy({1.0, 1.0}, parse_method("magnus:region1:3:half")).epsilon - oracle_eps(1.0, 1.0)) < 2e-3);
  CHECK(quasienergy_distance(rabi_quasienergy({0.3, 0.4}, parse_method("magnus:region1:4:full")).epsilon,
                             oracle_eps(0.3, 0.4)) < 1e-4);
  CHECK(std::abs(rabi_quasienergy({0.3, 2.0}, parse_method("magnus:region2:3:half")).epsilon - oracle_eps(0.3, 2.0)) < 1e-3);
  CHECK(std::abs(rabi_quasienergy({5.0, 5.0}, parse_method("magnus:adiabatic:2:half")).epsilon - oracle_eps(5.0, 5.0)) < 1e-3);
  CHECK(quasienergy_distance(rabi_quasienergy({5.0, 5.0}, parse_method("magnus:adiabatic:3:full")).epsilon,
                             oracle_eps(5.0, 5.0)) < 1e-3);
  // sin drive: the region-II half-period route goes through the parity trace
  CHECK(std::abs(rabi_quasienergy({0.3, 2.0, ShapeKind::Sin}, parse_method("magnus:region2:3:half")).epsilon -
                 oracle_eps(0.3, 2.0, ShapeKind::Sin)) < 1e-3);
  CHECK(std::abs(rabi_quasienergy({0.7, 0.5, ShapeKind::Sin}, parse_method("magnus:region1:3:half")).epsilon -
                 oracle_eps(0.7, 0.5, ShapeKind::Sin)) < 1e-3);
}

TEST_CASE("rabi sign relations and certificates") {
  const double e = rabi_quasienergy({1.0, 1.0}, parse_method("magnus:region1:3:half")).epsilon;
  CHECK(rabi_quasienergy({-1.0, 1.0}, parse_method("magnus:region1:3:half")).epsilon == doctest::Approx(-e));
  CHECK(rabi_quasienergy({1.0, -1.0}, parse_method("magnus:region1:3:half")).epsilon == doctest::Approx(e));
  const auto out = rabi_quasienergy({1.2, 2.0}, parse_method("magnus:region2:2:full"));
  REQUIRE(out.certificate.has_value());
  CHECK_FALSE(out.certificate->certified);
  CHECK(out.certificate->margin == doctest::Approx(1.2 * kPi).epsilon(1e-9));
}

TEST_CASE("rabi_exact_heun") {
  CHECK(rabi_exact_heun({0.6, 0.0}).epsilon == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rabi_exact_heun({1.4, 0.0}).epsilon == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rabi_exact_heun({0.8, 1.0}).epsilon == doctest::Approx(rabi_exact_heun({0.8, -1.0}).epsilon).epsilon(1e-14));
  const std::vector<std::array<double, 3>> table{
      {0.8, 1.0, 0.6985014}, {1.3, 0.7, 0.73204691}, {0.5, 1.8, 0.22014554}, {1.7, 1.2, 0.05021629}};
  for (const auto& [delta, g, sine] : table) {
    const double eps = rabi_exact_heun({delta, g}).epsilon;
    CHECK(std::sin(kPi * eps) == doctest::Approx(sine).epsilon(1e-6));
    CHECK(std::abs(eps - oracle_eps(delta, g)) < 1e-6);
  }
  CHECK_THROWS_AS(rabi_exact_heun({1.0, 1.0, ShapeKind::Sin}), ValidationError);
}

TEST_CASE("rabi_symmetry_check") {
  const auto rep = rabi_symmetry_check({1.0, 1.0});
  CHECK(rep.all_pass());
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CHECK(c.applicable);
    CHECK(c.distance < c.threshold);
  }
  const auto sin_rep = rabi_symmetry_check({1.0, 1.0, ShapeKind::Sin});
  CHECK(sin_rep.all_pass());
  for (const auto& c : sin_rep.checks) {
    if (c.name == "region2_c_vanish") {
      CHECK_FALSE(c.applicable);
      CHECK(c.distance > 1e-6);
    }
  }
}

TEST_CASE("Bloch-Siegert shift needs second order") {
  auto locate = [](int order) {
    const MethodInfo m = parse_method("magnus:region1:" + std::to_string(order) + ":half");
    return locate_boundary_gap([&](double d) { return rabi_quasienergy({d, 1.0}, m).epsilon; }, 0.6, 1.6, 1e-6).location;
  };
  CHECK(std::abs(locate(2) - locate(1)) > 1e-3);
}

TEST_CASE("non-zero slope at the coincidental crossing") {
  const double h = 1e-3;
  auto slope = [h](double delta) { return quasienergy_distance(oracle_eps(delta, h), oracle_eps(delta, 0.0)) / h; };
  CHECK(slope(1.0) > 0.01);
  CHECK(slope(0.9) < 1e-3);
  CHECK(slope(1.1) < 1e-3);
}
