#pragma once

#include <optional>
#include <string>

#include "tlmagnus/floquet.hpp"
#include "tlmagnus/magnus.hpp"
#include "tlmagnus/oracle.hpp"
#include "tlmagnus/pictures.hpp"

namespace tlm {

// Landau-Zener sweep H = (v t / 2) sigma_x + (Delta / 2) sigma_z in the
// adiabatic picture, in the dimensionless time x = v t / Delta.
struct LzParams {
  double gamma = 0.0;  // Delta^2 / (4 v); 0 is the sudden limit

  void validate() const;
  // g(x) = x sqrt(1 + x^2) + asinh(x); the dynamical phase is gamma * g(x).
  static double phase_function(double x);
};

struct LzTruncation {
  double x_cut = 0.0;       // |x| <= x_cut is integrated
  double u_cut = 0.0;       // atan(x_cut)
  double tail_bound = 0.0;  // bound on the omitted first-order tail
};

// Cut chosen so the integration-by-parts tail bound 1 / (4 gamma (1 + X^2)^{3/2}) meets tol.
LzTruncation lz_truncation(const LzParams& p, double tol, double max_cut = 1e7);

// Adiabatic-picture coupling (i/2) exp(2 i [gamma g(x) + phase_origin]) dx / (1 + x^2) on
// [-x_cut, x_cut]; for gamma = 0 the constant i/2 in u = atan(x) on [-pi/2, pi/2].
ScalarDrive lz_adiabatic_drive(const LzParams& p, double tol, double phase_origin = 0.0);

struct LzResult {
  double probability = 0.0;
  std::optional<double> stokes;  // absent at first order
  double tail_bound = 0.0;
};

LzResult lz_exact(const LzParams& p);
// int_0^inf cos[gamma (sinh 2s + 2s)] / cosh s ds = |A_1(+inf)|.
double lz_J(double gamma, double tol = 1e-8);
double lz_C2(double gamma, double tol = 1e-7);
// Orders 1..3 from the closed-form coefficients at t = +inf.
LzResult lz_magnus(const LzParams& p, int order, double tol = 1e-7);
// |Re A_n(+inf)| for the computed odd orders; violated when the phase origin is moved off zero.
SymmetryReport lz_symmetry_report(const LzParams& p, int order, double phase_origin = 0.0, double tol = 1e-7);

struct RabiPoint {
  double delta = 0.0;
  double g = 0.0;
  ShapeKind shape = ShapeKind::Cos;

  // Nonnegative canonical drive; signs are restored by the symmetry relations.
  DriveSpec canonical_drive() const;
};

// "magnus:<region1|region2|adiabatic>:<order>:<half|full>", "zma[:<picture>:<half|full>]",
// "oracle", "heun". Throws ConfigError.
MethodInfo parse_method(const std::string& text);

// Magnus or ZMA quasienergy through the chosen picture; out-of-region use is allowed and
// flagged by the attached convergence certificate. Oracle and Exact kinds are forwarded.
QuasienergyResult rabi_quasienergy(const RabiPoint& pt, const MethodInfo& method);
// (1/pi) asin[sqrt2 Delta Re(e^{ig} eta+ eta-)] from two confluent Heun series at z = 1/2.
QuasienergyResult rabi_exact_heun(const RabiPoint& pt);
// Evenness in g and oddness in Delta of the oracle quasienergy, and C_n(pi) = 0 in the
// region-II picture for the cos drive (reported but not enforced for other shapes).
SymmetryReport rabi_symmetry_check(const RabiPoint& pt, int max_order = 4);

}  // namespace tlm
