#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "tlmagnus/errors.hpp"
#include "tlmagnus/floquet.hpp"
#include "tlmagnus/oracle.hpp"
#include "tlmagnus/specfun.hpp"

using namespace tlm;

namespace {
cplx coeff_a(const AngleAxis& r) { return r.theta() * cplx{r.axis().x, -r.axis().y}; }
double coeff_c(const AngleAxis& r) { return r.theta() * r.axis().z; }
}  // namespace

TEST_CASE("bz_fold") {
  CHECK(bz_fold(0.6) == doctest::Approx(-0.4));
  CHECK(bz_fold(-0.5) == -0.5);
  CHECK(bz_fold(1.0) == 0.0);
  CHECK(bz_fold(0.5) == -0.5);
  CHECK(bz_fold_counted(2.7).folds == 3);
  for (double x = -3.3; x < 3.3; x += 0.173) {
    CHECK(bz_fold(bz_fold(x)) == bz_fold(x));
    CHECK(bz_fold(x) >= -0.5);
    CHECK(bz_fold(x) < 0.5);
  }
  CHECK(quasienergy_distance(0.3, -0.3) == 0.0);
  CHECK(quasienergy_distance(0.49, -0.49) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(quasienergy_distance(0.1, 0.2) == doctest::Approx(0.1));
}

TEST_CASE("closed quasienergy formulas: static limits") {
  CHECK(eps_full_region1(0.0, 0.0, 0.6).epsilon == doctest::Approx(0.3));
  CHECK(eps_full_region1(0.9, 0.2, 0.0).epsilon == doctest::Approx(0.9 / (2 * kPi)));
  CHECK(eps_half_region1(0.0, 0.0, 0.6).epsilon == doctest::Approx(0.3));
  CHECK(eps_half_region1(0.0, 0.0, 1.4).epsilon == doctest::Approx(0.3));  // asin branch of 0.7
  CHECK(eps_half_region2(cplx{}, 0.0).epsilon == 0.0);
  const double g = 1.3;
  const double delta = 0.1;
  const cplx a1 = 0.5 * delta * kPi * cplx{bessel_j0(g), struve_h0(g)};
  const double th = std::abs(a1);
  CHECK(eps_half_region2(a1, th).epsilon == doctest::Approx(std::asin(a1.real() * std::sin(th) / th) / kPi));
  CHECK(eps_adiabatic(0.6 * kPi / 2, 0.0, 0.0).epsilon == doctest::Approx(0.3));
  const double m = std::sqrt(2.0);
  const double phi_pi = 0.5 * m * incomplete_elliptic_e(kPi, 0.5);
  CHECK(eps_adiabatic(phi_pi, 0.0, 0.0).epsilon == doctest::Approx(-0.392).epsilon(1e-3));
}

TEST_CASE("inverse trig overshoot handling") {
  auto r = eps_half_region2(cplx{1.0 + 5e-10, 0.0}, 0.0);
  CHECK(r.clamped);
  CHECK(r.epsilon == -0.5);
  CHECK_THROWS_AS(eps_half_region2(cplx{1.01, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(eps_full_region1(0.0, 2.0, 0.5), DomainError);
}

TEST_CASE("GP trace formula") {
  CHECK(eps_from_gp_trace(SU2Matrix::identity(), ParityOp::z()) == 0.0);
  CHECK(eps_from_gp_trace(cplx{0, -1} * pauli::Z, ParityOp::z()) == doctest::Approx(0.5));
  CHECK(eps_from_gp_trace(cplx{0, 1} * pauli::Z, ParityOp::z()) == doctest::Approx(-0.5));
  // center crossing iff theta = 0 or n . n_P = 0
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vec3 n = testing::random_unit(rng);
    const Vec3 perp = cross(n, kAxisZ) / cross(n, kAxisZ).norm();
    CHECK(std::abs(eps_from_gp_trace(to_matrix(AngleAxis{1.1, perp}), ParityOp::z())) < 1e-15);
    CHECK(std::abs(eps_from_gp_trace(to_matrix(AngleAxis{1.1, n}), ParityOp::z())) > 1e-3);
  }
}

TEST_CASE("GP identity and trace consistency on oracle propagators") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int i = 0; i < 6; ++i) {
    const DriveSpec spec = DriveSpec::cosine(u(rng), u(rng));
    const SU2Matrix half = physical_propagator(spec, 0, kPi);
    const SU2Matrix full = physical_propagator(spec, 0, 2 * kPi);
    CHECK(gp_identity_check(half, full, ParityOp::z()) < 1e-8);
    // eigenphase of P U(pi): eigenvalues are -i e^{+-i eps pi}... compare sin(eps pi) via the trace
    const double eps = eps_from_gp_trace(half, ParityOp::z());
    const cplx tr = (ParityOp::z().matrix() * half).trace();
    CHECK(std::abs(std::sin(eps * kPi) - (-tr.imag() / 2.0)) < 1e-10);
    CHECK(quasienergy_distance(eps, quasienergy_numeric(spec).epsilon) < 1e-9);
  }
  // broken half-period antisymmetry
  const auto shape = std::make_shared<const SampledShape>([] {
    std::vector<double> t;
    for (int i = 0; i <= 2000; ++i) t.push_back(2 * kPi * i / 2000.0);
    return t;
  }(), [] {
    std::vector<double> f;
    for (int i = 0; i <= 2000; ++i) f.push_back(std::cos(2 * kPi * i / 2000.0) + 0.6 * std::cos(4 * kPi * i / 2000.0));
    return f;
  }());
  DriveSpec broken{1.0, 1.0, ShapeKind::Sampled, 1.0, shape};
  const SU2Matrix half = physical_propagator(broken, 0, kPi);
  const SU2Matrix full = physical_propagator(broken, 0, 2 * kPi);
  CHECK(gp_identity_check(half, full, ParityOp::z()) > 1e-2);
}

TEST_CASE("classify_crossing") {
  CHECK(classify_crossing(SU2Matrix::identity()) == CrossingKind::ExactCenter);
  CHECK(classify_crossing(cplx{-1.0} * pauli::I) == CrossingKind::ExactBoundary);
  CHECK(classify_crossing(to_matrix(AngleAxis{0.3, kAxisZ})) == CrossingKind::None);
}

TEST_CASE("formula identity with exact half-period interaction propagators") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.1, 2.5);
  for (int i = 0; i < 8; ++i) {
    const DriveSpec spec = DriveSpec::cosine(u(rng), u(rng));
    const double exact = quasienergy_numeric(spec, 1e-13).epsilon;
    const SU2Matrix half = physical_propagator(spec, 0, kPi, 1e-13);

    const AngleAxis r1 = principal_log(to_picture(build_region1(spec, 0, kPi), half));
    CHECK(quasienergy_distance(eps_half_region1(r1.theta(), coeff_c(r1), spec.delta).epsilon, exact) < 1e-8);

    const AngleAxis r2 = principal_log(to_picture(build_region2(spec, 0, kPi), half));
    CHECK(quasienergy_distance(eps_half_region2(coeff_a(r2), r2.theta()).epsilon, exact) < 1e-8);

    const auto ad = build_adiabatic(spec, 0.0, 0.0, kPi);
    const AngleAxis ra = principal_log(to_picture(ad.context, half));
    CHECK(quasienergy_distance(eps_adiabatic(ad.frame.phi(kPi), ra.theta(), coeff_c(ra)).epsilon, exact) < 1e-8);

    const SU2Matrix full = physical_propagator(spec, 0, 2 * kPi, 1e-13);
    const AngleAxis rf = principal_log(to_picture(build_region1(spec, 0, 2 * kPi), full));
    CHECK(quasienergy_distance(eps_full_region1(rf.theta(), coeff_c(rf), spec.delta).epsilon, exact) < 1e-8);
  }
}

TEST_CASE("Shirley averaged transition probability") {
  CHECK(avg_transition_probability([](double) { return 0.2; }, 1.0) == doctest::Approx(0.5));
  CHECK(avg_transition_probability([](double d) { return 0.5 * d - 0.5; }, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(avg_transition_probability([](double d) { return bz_fold(0.5 * d); }, 0.4) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(avg_transition_probability([](double d) { return bz_fold(0.5 * d); }, 1.0, 1e-3), CrossingInStencil);
}

TEST_CASE("gap and crossing search helpers") {
  auto parabola = [](double x) { return 0.5 - 0.01 - (x - 3.0) * (x - 3.0); };
  const auto gap = locate_boundary_gap(parabola, 2.5, 3.5);
  CHECK(gap.location == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(gap.gap == doctest::Approx(0.02).epsilon(1e-9));
  const auto roots = locate_center_crossings([](double x) { return 0.1 * std::sin(x); }, 1.0, 10.0, 50);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(roots[2] == doctest::Approx(3 * kPi).epsilon(1e-9));
}
