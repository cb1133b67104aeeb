#pragma once

#include <functional>
#include <optional>
#include <string>

#include "tlmagnus/magnus.hpp"
#include "tlmagnus/pictures.hpp"
#include "tlmagnus/su2.hpp"

namespace tlm {

// P = n_P . sigma: Hermitian, unitary, det -1.
class ParityOp {
 public:
  explicit ParityOp(Vec3 axis);
  static ParityOp x() { return ParityOp{kAxisX}; }
  static ParityOp z() { return ParityOp{kAxisZ}; }
  const Vec3& axis() const { return n_; }
  SU2Matrix matrix() const;

 private:
  Vec3 n_;
};

enum class MethodKind { Exact, OracleODE, Magnus, ZMA };
enum class PeriodMode { HalfPeriod, FullPeriod };
enum class CrossingKind { None, ExactCenter, ExactBoundary, Avoided };

std::string to_string(MethodKind k);
std::string to_string(PeriodMode m);
std::string to_string(CrossingKind c);

struct MethodInfo {
  MethodKind kind = MethodKind::Magnus;
  int order = 0;
  PictureKind picture = PictureKind::RegionI;
  PeriodMode mode = PeriodMode::HalfPeriod;
  std::string label() const;  // e.g. "magnus:region1:3:half"
};

struct Crossing {
  CrossingKind kind = CrossingKind::None;
  double gap = 0.0;  // avoided-crossing gap estimate when known
};

struct QuasienergyResult {
  double epsilon = 0.0;  // folded into [-1/2, 1/2), units of omega
  double raw = 0.0;      // before folding
  long folds = 0;        // integer removed by folding
  bool clamped = false;  // inverse trig argument clamped from noise overshoot
  MethodInfo method;
  Crossing crossing;
  std::optional<ConvergenceCertificate> certificate;
};

struct Folded {
  double value = 0.0;
  long folds = 0;
};

// raw mod 1 into [-1/2, 1/2).
Folded bz_fold_counted(double raw);
double bz_fold(double raw);

// Distance between quasienergies modulo 1 and up to the +-eps pairing.
double quasienergy_distance(double a, double b);

QuasienergyResult eps_full_region1(double theta_i, double c_i, double delta);
QuasienergyResult eps_half_region1(double theta_i, double c_i, double delta);
QuasienergyResult eps_half_region2(cplx a_i, double theta_i);
QuasienergyResult eps_adiabatic(double phi_pi, double theta_a, double c_a);
// cos(2 pi eps) = cos(phi) cos(theta) - sin(phi) sin(theta) n_z over a full period.
QuasienergyResult eps_full_adiabatic(double phi_period, double theta_a, double c_a);

// sin(eps pi) = (n . n_P) sin(theta) from the half-period propagator.
double eps_from_gp_trace(const SU2Matrix& u_half, const ParityOp& p);
// || U(2pi) - (P U(pi))^2 ||_F
double gp_identity_check(const SU2Matrix& u_half, const SU2Matrix& u_full, const ParityOp& p);
CrossingKind classify_crossing(const SU2Matrix& u_full, double tol = 1e-6);

// P_bar = (1/2)[1 - 4 (d eps / d delta)^2] by central differences with step
// halving. Throws CrossingInStencil when the folded branch jumps in the stencil.
double avg_transition_probability(const std::function<double(double)>& eps_of_delta, double delta,
                                  double h = 1e-3);

struct GapEstimate {
  double location = 0.0;
  double gap = 0.0;  // 1 - 2|eps| at the minimum, the distance to the mirrored branch
};

// Golden-section minimum of 1 - 2|eps(x)| on [lo, hi].
GapEstimate locate_boundary_gap(const std::function<double(double)>& eps, double lo, double hi,
                                double xtol = 1e-7);

// Sign changes of eps on a uniform scan of [lo, hi], refined by bisection.
// Jumps across the zone boundary (|eps| near 1/2 on both sides) are skipped.
std::vector<double> locate_center_crossings(const std::function<double(double)>& eps, double lo, double hi,
                                            int samples, double xtol = 1e-10);

}  // namespace tlm
