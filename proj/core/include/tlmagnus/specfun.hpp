#pragma once

#include <complex>

namespace tlm {

// Parameters of the local confluent Heun series around z = 0.
struct HeunParams {
  std::complex<double> mu0;
  std::complex<double> mu1;
  std::complex<double> b0;
  std::complex<double> b1;
  std::complex<double> a;
  double z = 0.5;
};

double bessel_j0(double x);
double struve_h0(double x);
// E(phi | m) = int_0^phi sqrt(1 - m sin^2 r) dr, parameter convention, m in [0, 1].
double incomplete_elliptic_e(double phi, double m_param);
// arg Gamma(1 - i gamma), continuous branch starting at 0.
double gamma_arg_one_minus_i(double gamma);
// Sum of the confluent Heun power series at p.z (value 1 at z = 0).
std::complex<double> heun_c(const HeunParams& p);

}  // namespace tlm
