#include "tlmagnus/floquet.hpp"

#include <cmath>
#include <string>

#include "tlmagnus/errors.hpp"

namespace tlm {

namespace {

constexpr double kOvershoot = 1e-9;

double clamp_unit(double x, bool& clamped, const char* where) {
  if (!std::isfinite(x)) throw DomainError(std::string(where) + ": non-finite argument");
  if (std::abs(x) <= 1.0) return x;
  if (std::abs(x) - 1.0 > kOvershoot) {
    throw DomainError(std::string(where) + ": inverse-trig argument " + std::to_string(x) + " outside [-1, 1]");
  }
  clamped = true;
  return std::copysign(1.0, x);
}

double sinc(double theta) {
  return std::abs(theta) < 1e-8 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
}

QuasienergyResult make_result(double raw, bool clamped) {
  QuasienergyResult r;
  const Folded f = bz_fold_counted(raw);
  r.raw = raw;
  r.epsilon = f.value;
  r.folds = f.folds;
  r.clamped = clamped;
  return r;
}

}  // namespace

ParityOp::ParityOp(Vec3 axis) : n_(axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw ValidationError("ParityOp: axis must be a unit vector");
}

SU2Matrix ParityOp::matrix() const {
  return cplx{n_.x} * pauli::X + cplx{n_.y} * pauli::Y + cplx{n_.z} * pauli::Z;
}

std::string to_string(MethodKind k) {
  switch (k) {
    case MethodKind::Exact: return "exact";
    case MethodKind::OracleODE: return "oracle";
    case MethodKind::Magnus: return "magnus";
    case MethodKind::ZMA: return "zma";
  }
  return "?";
}

std::string to_string(PeriodMode m) { return m == PeriodMode::HalfPeriod ? "half" : "full"; }

std::string to_string(CrossingKind c) {
  switch (c) {
    case CrossingKind::None: return "None";
    case CrossingKind::ExactCenter: return "ExactCenter";
    case CrossingKind::ExactBoundary: return "ExactBoundary";
    case CrossingKind::Avoided: return "Avoided";
  }
  return "?";
}

std::string MethodInfo::label() const {
  switch (kind) {
    case MethodKind::Magnus:
      return "magnus:" + to_string(picture) + ":" + std::to_string(order) + ":" + to_string(mode);
    case MethodKind::ZMA: return "zma:" + to_string(picture) + ":" + to_string(mode);
    default: return to_string(kind);
  }
}

Folded bz_fold_counted(double raw) {
  const double n = std::floor(raw + 0.5);
  double v = raw - n;
  if (v >= 0.5) v -= 1.0;  // rounding guard
  return {v, static_cast<long>(n)};
}

double bz_fold(double raw) { return bz_fold_counted(raw).value; }

double quasienergy_distance(double a, double b) {
  return std::min(std::abs(bz_fold(a - b)), std::abs(bz_fold(a + b)));
}

QuasienergyResult eps_full_region1(double theta_i, double c_i, double delta) {
  bool clamped = false;
  const double arg = std::cos(kPi * delta) * std::cos(theta_i) - c_i * std::sin(kPi * delta) * sinc(theta_i);
  const double x = clamp_unit(arg, clamped, "eps_full_region1");
  return make_result(std::acos(x) / (2.0 * kPi), clamped);
}

QuasienergyResult eps_half_region1(double theta_i, double c_i, double delta) {
  bool clamped = false;
  const double arg = std::sin(0.5 * kPi * delta) * std::cos(theta_i) + c_i * std::cos(0.5 * kPi * delta) * sinc(theta_i);
  const double x = clamp_unit(arg, clamped, "eps_half_region1");
  return make_result(std::asin(x) / kPi, clamped);
}

QuasienergyResult eps_half_region2(cplx a_i, double theta_i) {
  bool clamped = false;
  const double arg = a_i.real() * sinc(theta_i);
  const double x = clamp_unit(arg, clamped, "eps_half_region2");
  return make_result(std::asin(x) / kPi, clamped);
}

QuasienergyResult eps_adiabatic(double phi_pi, double theta_a, double c_a) {
  if (theta_a == 0.0 && c_a == 0.0) {
    // zeroth order: the plain adiabatic phase
    return make_result(phi_pi / kPi, false);
  }
  bool clamped = false;
  const double arg = std::sin(phi_pi) * std::cos(theta_a) + c_a * std::cos(phi_pi) * sinc(theta_a);
  const double x = clamp_unit(arg, clamped, "eps_adiabatic");
  return make_result(std::asin(x) / kPi, clamped);
}

QuasienergyResult eps_full_adiabatic(double phi_period, double theta_a, double c_a) {
  bool clamped = false;
  const double arg = std::cos(phi_period) * std::cos(theta_a) - c_a * std::sin(phi_period) * sinc(theta_a);
  const double x = clamp_unit(arg, clamped, "eps_full_adiabatic");
  return make_result(std::acos(x) / (2.0 * kPi), clamped);
}

double eps_from_gp_trace(const SU2Matrix& u_half, const ParityOp& p) {
  const AngleAxis log = principal_log(u_half);
  const double s = dot(log.axis(), p.axis()) * std::sin(log.theta());
  const cplx trace = (p.matrix() * u_half).trace();
  const double mismatch = std::abs(trace + cplx{0.0, 2.0 * s});
  if (mismatch > 1e-8) {
    throw GPViolation("eps_from_gp_trace: tr[P U(pi)] check failed by " + std::to_string(mismatch));
  }
  bool clamped = false;
  return std::asin(clamp_unit(s, clamped, "eps_from_gp_trace")) / kPi;
}

double gp_identity_check(const SU2Matrix& u_half, const SU2Matrix& u_full, const ParityOp& p) {
  const SU2Matrix pu = p.matrix() * u_half;
  return frobenius_distance(u_full, pu * pu);
}

CrossingKind classify_crossing(const SU2Matrix& u_full, double tol) {
  if (frobenius_distance(u_full, SU2Matrix::identity()) < tol) return CrossingKind::ExactCenter;
  if (frobenius_distance(u_full, cplx{-1.0} * SU2Matrix::identity()) < tol) return CrossingKind::ExactBoundary;
  return CrossingKind::None;
}

double avg_transition_probability(const std::function<double(double)>& eps_of_delta, double delta, double h) {
  if (!(h > 0.0)) throw ValidationError("avg_transition_probability: step must be positive");
  const double e0 = eps_of_delta(delta);
  auto slope = [&](double step) {
    const double ep = eps_of_delta(delta + step);
    const double em = eps_of_delta(delta - step);
    if (std::abs(ep - e0) > 0.25 || std::abs(em - e0) > 0.25) {
      throw CrossingInStencil("avg_transition_probability: folded branch jumps near delta = " + std::to_string(delta));
    }
    return (ep - em) / (2.0 * step);
  };
  const double coarse = slope(h);
  const double fine = slope(0.5 * h);
  const double d = (4.0 * fine - coarse) / 3.0;
  return 0.5 * (1.0 - 4.0 * d * d);
}

GapEstimate locate_boundary_gap(const std::function<double(double)>& eps, double lo, double hi, double xtol) {
  auto h = [&](double x) { return 1.0 - 2.0 * std::abs(eps(x)); };
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = h(c);
  double fd = h(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = h(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, h(x)};
}

std::vector<double> locate_center_crossings(const std::function<double(double)>& eps, double lo, double hi,
                                            int samples, double xtol) {
  if (samples < 2) throw ValidationError("locate_center_crossings: need at least two samples");
  std::vector<double> roots;
  double x_prev = lo;
  double e_prev = eps(lo);
  for (int i = 1; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    const double e = eps(x);
    const bool near_center = std::abs(e) < 0.25 && std::abs(e_prev) < 0.25;
    if (near_center && (e == 0.0 || (e > 0.0) != (e_prev > 0.0))) {
      double a = x_prev;
      double b = x;
      double fa = e_prev;
      while (b - a > xtol) {
        const double m = 0.5 * (a + b);
        const double fm = eps(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x_prev = x;
    e_prev = e;
  }
  return roots;
}

}  // namespace tlm
