#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "tlmagnus/su2.hpp"

namespace tlm {

enum class Smoothness { Analytic, Sampled };

// Complex scalar of H = v sigma+ + v* sigma- on [t0, t1].
struct ScalarDrive {
  std::function<cplx(double)> v;
  double t0 = 0.0;
  double t1 = 0.0;
  Smoothness smoothness = Smoothness::Analytic;
  // Interior points where v may be non-smooth; used as panel boundaries.
  std::vector<double> kinks;
};

struct ClosedForms {
  cplx a1;
  double c2 = 0.0;
  cplx a3;
};

// int_{t0}^t v, adaptive Gauss-Kronrod.
cplx closed_form_a1(const ScalarDrive& d, double t, double abs_tol = 1e-10);
// int dt1 int^{t1} dt2 Im[v(t1) v*(t2)] over the ordered simplex.
double closed_form_c2(const ScalarDrive& d, double t, double abs_tol = 1e-8);
// (2i/3) int int int [Im(v2 v3*) v1 + Im(v2 v1*) v3], t1 > t2 > t3.
cplx closed_form_a3(const ScalarDrive& d, double t, double abs_tol = 1e-7);
// All three on one shared grid.
ClosedForms closed_forms(const ScalarDrive& d, double t, double abs_tol = 1e-8);

struct RecursionOptions {
  double tol = 1e-8;           // Richardson tolerance, scaled by max(1, |A_1|)
  int nodes_per_panel = 16;
  double resolution_tol = 1e-13;  // Legendre tail tolerance for the automatic grid
  std::size_t max_panels = 400000;
};

// Per-order A_n, C_n at d.t1 from the commutator-free su(2) recursion on a
// composite Gauss grid. grid_points = 0 picks the grid from the resolution of v.
// Throws GridTooCoarse when halving the panels moves any coefficient by more
// than 10 * tol * max(1, |A_1|).
MagnusCoefficients recursive_magnus(const ScalarDrive& d, int order, std::size_t grid_points = 0,
                                    const RecursionOptions& opts = {});

// Bernoulli numbers B_0..B_12 with B_1 = -1/2.
double bernoulli(int j);

struct ConvergenceCertificate {
  double margin = 0.0;  // int |v|
  bool certified = false;  // margin < pi
};

ConvergenceCertificate convergence_margin(const ScalarDrive& d);

// exp(-i Omega) from the truncated sums of m (first `order` orders; all when < 0).
SU2Matrix magnus_propagator(const MagnusCoefficients& m, int order = -1);

}  // namespace tlm
