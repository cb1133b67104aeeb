#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tlmagnus/floquet.hpp"
#include "tlmagnus/pictures.hpp"
#include "tlmagnus/su2.hpp"

namespace tlm {

// H = A sigma+ + A* sigma- + C sigma_z at one instant.
struct HamiltonianSample {
  cplx A;
  double C = 0.0;
};

struct PropagatorRequest {
  std::function<HamiltonianSample(double)> hamiltonian;
  double t0 = 0.0;
  double t1 = 0.0;  // t1 < t0 integrates backwards
  double tolerance = 1e-12;
  std::vector<double> breakpoints;  // derivative discontinuities of the Hamiltonian; never stepped across
};

struct PropagationStats {
  long accepted_steps = 0;
  long rejected_steps = 0;
  double error_estimate = 0.0;  // accumulated local error estimates
};

// U(t1, t0) solving i dU/dt = H U, U(t0) = I. Gauss-Legendre collocation
// (order 8) with step doubling; each accepted step is projected back onto SU(2).
SU2Matrix propagate(const PropagatorRequest& req, PropagationStats* stats = nullptr);

// Physical H = (delta/2) sigma_z + (f(t)/2) sigma_x as a propagator request.
PropagatorRequest physical_request(double delta, std::function<double(double)> f, double t0, double t1,
                                   double tolerance = 1e-12);

// Nearest SU(2) element of the form [[a, -b*], [b, a*]].
SU2Matrix project_su2(const SU2Matrix& m);

// Physical propagator of a drive (delta may be negative here).
SU2Matrix physical_propagator(const DriveSpec& spec, double t0, double t1, double tolerance = 1e-12);

// eps = theta(U(2 pi)) / (2 pi) from the one-period propagator, in [0, 1/2]
// before folding; crossing classified from U(2 pi).
QuasienergyResult quasienergy_numeric(const DriveSpec& spec, double tolerance = 1e-12);

// Signed eps from sin(eps pi) = (n . z) sin(theta) of U(pi); needs
// f(t + pi) = -f(t).
QuasienergyResult quasienergy_numeric_gp(const DriveSpec& spec, double tolerance = 1e-12);

struct SymmetryCheck {
  std::string name;
  bool applicable = true;
  double distance = 0.0;
  double threshold = 1e-8;
  bool pass() const { return !applicable || distance < threshold; }
};

struct SymmetryReport {
  std::vector<SymmetryCheck> checks;
  bool all_pass() const;
};

struct SymmetryOptions {
  double window = 10.0;      // PT checks on [-window, window]
  double tolerance = 1e-12;  // propagator tolerance
  double threshold = 1e-8;
  bool force_all = false;    // run checks even when the shape lacks the symmetry
};

// PT: U*(-t) = P U(t) P and Re A of log U(T, -T) = 0 with P = sigma_z (odd drives);
// GP: U(2 pi) = [P U(pi)]^2 (periodic drives).
SymmetryReport symmetry_verify(const DriveSpec& spec, const SymmetryOptions& opts = {});

}  // namespace tlm
