#include "tlmagnus/su2.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tlmagnus/errors.hpp"

namespace tlm {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kAntipodeWindow = 1e-12;

// At theta = pi both n and -n give -I; pick n_x >= 0, then n_y >= 0, then n_z >= 0.
Vec3 antipode_sign_convention(Vec3 n) {
  constexpr double eps = 1e-15;
  bool flip = false;
  if (std::abs(n.x) > eps) {
    flip = n.x < 0;
  } else if (std::abs(n.y) > eps) {
    flip = n.y < 0;
  } else {
    flip = n.z < 0;
  }
  return flip ? -n : n;
}

}  // namespace

AngleAxis::AngleAxis(double theta, Vec3 axis) {
  if (!std::isfinite(theta)) throw ValidationError("AngleAxis: non-finite angle");
  if (std::abs(theta) < kDegenerateAngle) {
    theta_ = std::abs(theta);
    return;  // identity, placeholder axis
  }
  const double len = axis.norm();
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw ValidationError("AngleAxis: zero or non-finite axis with nonzero angle");
  }
  Vec3 n = axis / len;
  if (theta < 0.0) {
    theta = -theta;
    n = -n;
  }
  theta_ = theta;
  axis_ = n;
  degenerate_ = false;
}

AngleAxis AngleAxis::canonical() const {
  if (degenerate_) {
    AngleAxis r = *this;
    r.theta_ = std::fmod(theta_, kTwoPi);
    if (r.theta_ > kPi) {
      r.theta_ = kTwoPi - r.theta_;
      r.folded_ = true;
    }
    return r;
  }
  double theta = theta_;
  Vec3 n = axis_;
  bool folded = folded_;
  if (theta >= kTwoPi) {
    theta = std::fmod(theta, kTwoPi);
    folded = true;
  }
  if (theta > kPi) {
    theta = kTwoPi - theta;
    n = -n;
    folded = true;
  }
  AngleAxis r;
  r.folded_ = folded;
  if (theta < kDegenerateAngle) {
    r.theta_ = theta;
    return r;
  }
  if (kPi - theta < kAntipodeWindow) n = antipode_sign_convention(n);
  r.theta_ = theta;
  r.axis_ = n;
  r.degenerate_ = false;
  return r;
}

AngleAxis AngleAxis::from_components(double cos_theta, Vec3 sin_axis) {
  const double s = sin_axis.norm();
  AngleAxis r;
  r.theta_ = std::atan2(s, cos_theta);
  if (s <= kDegenerateAngle) {
    // theta near 0 or pi; the axis cannot be resolved from the components.
    r.axis_ = kAxisZ;
    r.degenerate_ = true;
    return r;
  }
  Vec3 n = sin_axis / s;
  if (kPi - r.theta_ < kAntipodeWindow) n = antipode_sign_convention(n);
  r.axis_ = n;
  r.degenerate_ = false;
  return r;
}

double SU2Matrix::frobenius_norm() const {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

double SU2Matrix::special_unitary_defect() const {
  const double unit = (adjoint() * (*this) - identity()).frobenius_norm();
  return std::max(unit, std::abs(det() - 1.0));
}

double frobenius_distance(const SU2Matrix& l, const SU2Matrix& r) {
  return (l - r).frobenius_norm();
}

cplx MagnusCoefficients::summed_A() const { return summed_A(order); }
double MagnusCoefficients::summed_C() const { return summed_C(order); }

cplx MagnusCoefficients::summed_A(int n) const {
  const auto k = static_cast<std::size_t>(std::clamp(n, 0, static_cast<int>(A.size())));
  return std::accumulate(A.begin(), A.begin() + static_cast<std::ptrdiff_t>(k), cplx{});
}

double MagnusCoefficients::summed_C(int n) const {
  const auto k = static_cast<std::size_t>(std::clamp(n, 0, static_cast<int>(C.size())));
  return std::accumulate(C.begin(), C.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
}

AngleAxis from_magnus_coeffs(cplx A, double C) {
  const double theta = std::sqrt(std::norm(A) + C * C);
  if (theta < kDegenerateAngle) return AngleAxis{};
  return AngleAxis{theta, Vec3{A.real(), -A.imag(), C} / theta};
}

AngleAxis from_magnus_coeffs(const MagnusCoefficients& m) {
  return from_magnus_coeffs(m.summed_A(), m.summed_C());
}

SU2Matrix exp_rotation(Vec3 v) {
  const double theta = v.norm();
  const double c = std::cos(theta);
  // sin(theta)/theta, stable at the origin
  const double sinc = theta < 1e-8 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
  const Vec3 s = sinc * v;
  const cplx i{0.0, 1.0};
  return {c - i * s.z, -i * s.x - s.y, -i * s.x + s.y, c + i * s.z};
}

SU2Matrix to_matrix(const AngleAxis& r) { return exp_rotation(r.rotation_vector()); }

AngleAxis compose_bch(const AngleAxis& first, const AngleAxis& second) {
  const double c0 = std::cos(first.theta());
  const double s0 = std::sin(first.theta());
  const double c1 = std::cos(second.theta());
  const double s1 = std::sin(second.theta());
  const Vec3& n0 = first.axis();
  const Vec3& n1 = second.axis();
  const double cos_theta = c0 * c1 - s0 * s1 * dot(n0, n1);
  const Vec3 sin_axis = (s0 * c1) * n0 + (c0 * s1) * n1 + (s0 * s1) * cross(n0, n1);
  return AngleAxis::from_components(cos_theta, sin_axis);
}

AngleAxis principal_log(const SU2Matrix& m) {
  const double defect = m.special_unitary_defect();
  if (!(defect <= 1e-10)) {
    throw NotSpecialUnitary("principal_log: matrix is not special unitary (defect " +
                            std::to_string(defect) + ")");
  }
  const double cos_theta = 0.5 * (m.a + m.d).real();
  const Vec3 sin_axis{-0.5 * (m.b + m.c).imag(), 0.5 * (m.c - m.b).real(),
                      0.5 * (m.d - m.a).imag()};
  return AngleAxis::from_components(cos_theta, sin_axis);
}

AngleAxis hadamard_conjugate(const AngleAxis& r) {
  if (r.degenerate()) return r;
  const Vec3& n = r.axis();
  return AngleAxis{r.theta(), Vec3{n.z, -n.y, n.x}};
}

SU2Matrix hadamard_conjugate(const SU2Matrix& m) {
  // H = (X + Z)/sqrt2, H M H
  const SU2Matrix h = cplx{1.0 / std::sqrt(2.0)} * (pauli::X + pauli::Z);
  return h * m * h;
}

double distance(const AngleAxis& l, const AngleAxis& r) {
  return frobenius_distance(to_matrix(l), to_matrix(r));
}

}  // namespace tlm
