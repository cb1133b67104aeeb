#include "tlmagnus/specfun.hpp"

#include <cmath>
#include <numbers>

#include "tlmagnus/errors.hpp"
#include "tlmagnus/quadrature.hpp"

namespace tlm {

namespace {

constexpr double kPi = std::numbers::pi;

double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)) && k > 4) break;
  }
  return sum;
}

// Hankel expansion: J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi), terms used while decreasing.
double j0_asymptotic(double x) {
  double p = 1.0;
  double q = 0.0;
  double t = 1.0;  // prod_{j<=k} (2j-1)^2 / (k! (8x)^k)
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = t * odd * odd / (k * 8.0 * x);
    if (next > t) break;
    t = next;
    const int m = k / 2;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * t;
    } else {
      q -= sign * t;
    }
    if (t < 1e-17) break;
  }
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (!std::isfinite(x)) return 0.0;
  return x <= 12.0 ? j0_series(x) : j0_asymptotic(x);
}

double struve_h0(double x) {
  const double ax = std::abs(x);
  const double sign = x < 0 ? -1.0 : 1.0;
  if (ax <= 8.0) {
    // sum_k (-1)^k (x/2)^{2k+1} / Gamma(k+3/2)^2
    const double half = 0.5 * ax;
    double term = half / std::pow(std::tgamma(1.5), 2);
    double sum = term;
    for (int k = 1; k < 200; ++k) {
      const double g = k + 0.5;
      term *= -half * half / (g * g);
      sum += term;
      if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
    }
    return sign * sum;
  }
  auto integrand = [ax](double t) { return std::sin(ax * std::cos(t)); };
  const auto r = quad::integrate_adaptive<double>(integrand, 0.0, 0.5 * kPi, 1e-13, 0.0, 400000,
                                                  static_cast<int>(ax / 4.0) + 1);
  return sign * (2.0 / kPi) * r.value;
}

double incomplete_elliptic_e(double phi, double m_param) {
  if (!(m_param >= 0.0 && m_param <= 1.0)) {
    throw ParameterOutOfRange("incomplete_elliptic_e: parameter m must lie in [0, 1]");
  }
  if (!std::isfinite(phi)) throw ParameterOutOfRange("incomplete_elliptic_e: non-finite amplitude");
  auto integrand = [m_param](double r) {
    const double s = std::sin(r);
    return std::sqrt(std::max(0.0, 1.0 - m_param * s * s));
  };
  auto segment = [&](double lo, double hi) {
    return quad::integrate_adaptive<double>(integrand, lo, hi, 1e-14, 0.0).value;
  };
  // E(phi + pi) = E(phi) + 2 E(pi/2): reduce to |r| <= pi/2.
  const double periods = std::round(phi / kPi);
  const double r = phi - periods * kPi;
  double out = r >= 0 ? segment(0.0, r) : -segment(r, 0.0);
  if (periods != 0.0) out += 2.0 * periods * segment(0.0, 0.5 * kPi);
  return out;
}

double gamma_arg_one_minus_i(double gamma) {
  if (!std::isfinite(gamma)) throw ParameterOutOfRange("gamma_arg_one_minus_i: non-finite argument");
  if (gamma == 0.0) return 0.0;
  if (gamma < 0.0) return -gamma_arg_one_minus_i(-gamma);
  constexpr double euler_gamma = std::numbers::egamma;
  // Explicit terms up to K, Euler-Maclaurin for the rest.
  const long K = std::max<long>(256, static_cast<long>(std::ceil(64.0 * gamma)));
  double sum = 0.0;
  for (long k = K; k >= 1; --k) {
    const double r = gamma / static_cast<double>(k);
    sum += r - std::atan(r);
  }
  // Tail: sum_{k>K} f(k) with f(k) = g/k - atan(g/k) via Euler-Maclaurin on f.
  auto f = [gamma](double k) { return gamma / k - std::atan(gamma / k); };
  // Antiderivative F(k) = g ln k - k atan(g/k) - (g/2) ln(k^2 + g^2), F(inf) = -g.
  auto F = [gamma](double k) {
    return gamma * std::log(k) - k * std::atan(gamma / k) - 0.5 * gamma * std::log(k * k + gamma * gamma);
  };
  const double Kd = static_cast<double>(K);
  const double d1 = -gamma * gamma * gamma / (Kd * Kd * (Kd * Kd + gamma * gamma));
  const double tail = (-gamma - F(Kd)) - 0.5 * f(Kd) - d1 / 12.0;
  return euler_gamma * gamma - (sum + tail);
}

std::complex<double> heun_c(const HeunParams& hp) {
  using C = std::complex<double>;
  if (!(std::abs(hp.z) < 1.0)) throw ParameterOutOfRange("heun_c: |z| must be < 1");
  const C r = 0.5 * hp.mu0;
  const C s = -0.5 * hp.mu1;
  const C a = hp.a;
  // Calibrated accessory-parameter shift of the local series.
  const C kappa = hp.b0 + 0.5 + 2.0 * r * s + r + s - a * r;
  const C lambda = hp.b1 + a * (r + s);
  C prev{0.0, 0.0};
  C cur{1.0, 0.0};
  C sum = cur;
  double zp = 1.0;
  int quiet = 0;
  for (int n = 0; n < 10000; ++n) {
    const double nd = n;
    const C denom = (nd + 1.0) * (nd + 1.0 + 2.0 * r);
    if (std::abs(denom) == 0.0) throw SeriesNotConverged("heun_c: singular recurrence denominator");
    const C next = (cur * (nd * (nd - 1.0) - a * nd + (1.0 + 2.0 * r) * nd + (1.0 + 2.0 * s) * nd + kappa) +
                    prev * (a * (nd - 1.0) + lambda)) /
                   denom;
    prev = cur;
    cur = next;
    zp *= hp.z;
    const C term = cur * zp;
    sum += term;
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) break;
    // two successive negligible increments
    quiet = std::abs(term) < 1e-15 * std::max(1.0, std::abs(sum)) ? quiet + 1 : 0;
    if (quiet >= 2 && n > 8) return sum;
  }
  throw SeriesNotConverged("heun_c: series did not converge within 10000 terms");
}

}  // namespace tlm
