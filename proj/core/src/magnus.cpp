#include "tlmagnus/magnus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tlmagnus/errors.hpp"
#include "tlmagnus/quadrature.hpp"

namespace tlm {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kClosedFormNodes = 20;
constexpr int kMaxRefinements = 5;

void check_drive(const ScalarDrive& d, double t) {
  if (!d.v) throw ValidationError("ScalarDrive: missing v(t)");
  if (!(d.t1 >= d.t0)) throw ValidationError("ScalarDrive: t1 < t0");
  if (!(t >= d.t0 && t <= d.t1)) throw ValidationError("evaluation time outside [t0, t1]");
}

std::vector<double> initial_breaks(const ScalarDrive& d, double t) {
  std::vector<double> b{d.t0};
  for (double k : d.kinks)
    if (k > d.t0 && k < t) b.push_back(k);
  b.push_back(t);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

quad::PanelGrid resolved_grid(const ScalarDrive& d, double t, int p, double tail_tol,
                              std::size_t max_panels) {
  return quad::PanelGrid::adaptive(d.v, initial_breaks(d, t), p, tail_tol, max_panels);
}

ClosedForms closed_on_grid(const quad::PanelGrid& g, const std::vector<cplx>& v) {
  const std::size_t n = v.size();
  const std::vector<cplx> a1 = g.cumulative(v);
  std::vector<double> c2_rate(n);
  std::vector<cplx> k_rate(n);
  std::vector<cplx> l_rate(n);
  for (std::size_t i = 0; i < n; ++i) {
    c2_rate[i] = std::imag(v[i] * std::conj(a1[i]));
    k_rate[i] = v[i] * a1[i];
    l_rate[i] = std::conj(v[i]) * a1[i];
  }
  const std::vector<double> c2 = g.cumulative(c2_rate);
  const std::vector<cplx> k = g.cumulative(k_rate);
  const std::vector<cplx> l = g.cumulative(l_rate);
  std::vector<cplx> a3_rate(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Im(v2 v3*) v1 term: v * C2; Im(v2 v1*) v3 term: (v* K - v L) / 2i
    a3_rate[i] = v[i] * c2[i] + (std::conj(v[i]) * k[i] - v[i] * l[i]) / (2.0 * kI);
  }
  ClosedForms out;
  out.a1 = g.integral(v);
  out.c2 = g.integral(c2_rate);
  out.a3 = (2.0 * kI / 3.0) * g.integral(a3_rate);
  return out;
}

// Refines until two successive grids agree; returns the finer result.
template <class Extract>
ClosedForms converged_closed_forms(const ScalarDrive& d, double t, double abs_tol, Extract err) {
  if (t == d.t0) return {};
  quad::PanelGrid g = resolved_grid(d, t, kClosedFormNodes, 1e-14, 400000);
  ClosedForms coarse = closed_on_grid(g, g.sample(d.v));
  for (int level = 0; level < kMaxRefinements; ++level) {
    g = g.refined();
    ClosedForms fine = closed_on_grid(g, g.sample(d.v));
    if (err(coarse, fine) <= abs_tol) return fine;
    coarse = fine;
  }
  throw QuadratureFailure("closed-form Magnus quadrature did not reach tolerance " + std::to_string(abs_tol));
}

}  // namespace

cplx closed_form_a1(const ScalarDrive& d, double t, double abs_tol) {
  check_drive(d, t);
  if (t == d.t0) return {};
  const quad::PanelGrid g = resolved_grid(d, t, 16, 1e-12, 400000);
  const auto& br = g.breakpoints();
  const double span = t - d.t0;
  cplx sum{};
  for (std::size_t m = 0; m + 1 < br.size(); ++m) {
    const double share = abs_tol * (br[m + 1] - br[m]) / span;
    sum += quad::integrate_adaptive<cplx>(d.v, br[m], br[m + 1], share, 0.0, 200000).value;
  }
  return sum;
}

double closed_form_c2(const ScalarDrive& d, double t, double abs_tol) {
  check_drive(d, t);
  return converged_closed_forms(d, t, abs_tol, [](const ClosedForms& a, const ClosedForms& b) {
           return std::abs(a.c2 - b.c2);
         }).c2;
}

cplx closed_form_a3(const ScalarDrive& d, double t, double abs_tol) {
  check_drive(d, t);
  return converged_closed_forms(d, t, abs_tol, [](const ClosedForms& a, const ClosedForms& b) {
           return std::abs(a.a3 - b.a3);
         }).a3;
}

ClosedForms closed_forms(const ScalarDrive& d, double t, double abs_tol) {
  check_drive(d, t);
  return converged_closed_forms(d, t, abs_tol, [](const ClosedForms& a, const ClosedForms& b) {
    return std::max({std::abs(a.a1 - b.a1), std::abs(a.c2 - b.c2), std::abs(a.a3 - b.a3)});
  });
}

double bernoulli(int j) {
  static constexpr std::array<double, 13> table{1.0,          -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0,
                                                1.0 / 42.0,   0.0,  -1.0 / 30.0, 0.0, 5.0 / 66.0, 0.0,
                                                -691.0 / 2730.0};
  if (j < 0 || j >= static_cast<int>(table.size())) throw ValidationError("bernoulli: index out of table");
  return table[static_cast<std::size_t>(j)];
}

namespace {

struct RecursionResult {
  std::vector<cplx> A;
  std::vector<double> C;
};

// a_n^(j), c_n^(j) tables; A_n = sum_j B_j/j! int a_n^(j).
RecursionResult run_recursion(const quad::PanelGrid& g, const std::vector<cplx>& v, int order) {
  const std::size_t n_pts = v.size();
  const auto N = static_cast<std::size_t>(order);
  // a[n][j], c[n][j] for 1 <= n <= N, 0 <= j <= n-1 (index n directly)
  std::vector<std::vector<std::vector<cplx>>> a(N + 1);
  std::vector<std::vector<std::vector<double>>> c(N + 1);
  std::vector<std::vector<cplx>> A_cum(N + 1);
  std::vector<std::vector<double>> C_cum(N + 1);
  RecursionResult out;

  a[1].push_back(v);
  c[1].emplace_back(n_pts, 0.0);
  A_cum[1] = g.cumulative(v);
  C_cum[1].assign(n_pts, 0.0);
  out.A.push_back(g.integral(v));
  out.C.push_back(0.0);

  double factorial = 1.0;
  std::vector<double> weight(N + 1);
  for (std::size_t j = 0; j <= N; ++j) {
    if (j > 0) factorial *= static_cast<double>(j);
    weight[j] = j <= 12 ? bernoulli(static_cast<int>(j)) / factorial : 0.0;
  }

  for (std::size_t n = 2; n <= N; ++n) {
    a[n].assign(n, std::vector<cplx>(n_pts));
    c[n].assign(n, std::vector<double>(n_pts, 0.0));
    std::vector<cplx> a_rate(n_pts);
    std::vector<double> c_rate(n_pts, 0.0);
    for (std::size_t j = 1; j <= n - 1; ++j) {
      auto& an = a[n][j];
      auto& cn = c[n][j];
      for (std::size_t m = 1; m <= n - j; ++m) {
        const std::size_t k = n - m;  // lower table index, k >= j
        if (j - 1 >= a[k].size()) continue;
        const auto& ak = a[k][j - 1];
        const auto& ck = c[k][j - 1];
        const auto& Am = A_cum[m];
        const auto& Cm = C_cum[m];
        for (std::size_t i = 0; i < n_pts; ++i) {
          an[i] += 2.0 * kI * (Am[i] * ck[i] - Cm[i] * ak[i]);
          cn[i] += 2.0 * std::imag(Am[i] * std::conj(ak[i]));
        }
      }
      if (weight[j] != 0.0) {
        for (std::size_t i = 0; i < n_pts; ++i) {
          a_rate[i] += weight[j] * an[i];
          c_rate[i] += weight[j] * cn[i];
        }
      }
    }
    A_cum[n] = g.cumulative(a_rate);
    C_cum[n] = g.cumulative(c_rate);
    out.A.push_back(g.integral(a_rate));
    out.C.push_back(g.integral(c_rate));
  }
  return out;
}

quad::PanelGrid uniform_grid(const ScalarDrive& d, std::size_t grid_points, int p) {
  const auto target = std::max<std::size_t>(1, (grid_points + static_cast<std::size_t>(p) - 1) / static_cast<std::size_t>(p));
  std::vector<double> br = initial_breaks(d, d.t1);
  // distribute extra panels by length
  std::vector<double> out{br.front()};
  const double span = d.t1 - d.t0;
  for (std::size_t s = 0; s + 1 < br.size(); ++s) {
    const double len = br[s + 1] - br[s];
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(static_cast<double>(target) * len / span)));
    for (std::size_t k = 1; k <= pieces; ++k) out.push_back(k == pieces ? br[s + 1] : br[s] + len * static_cast<double>(k) / static_cast<double>(pieces));
  }
  return quad::PanelGrid(std::move(out), p);
}

}  // namespace

MagnusCoefficients recursive_magnus(const ScalarDrive& d, int order, std::size_t grid_points,
                                    const RecursionOptions& opts) {
  check_drive(d, d.t1);
  if (order < 1) throw ValidationError("recursive_magnus: order must be >= 1");
  if (order > 13) throw ValidationError("recursive_magnus: order exceeds the Bernoulli table");
  MagnusCoefficients out;
  out.order = order;
  out.time = d.t1;
  if (d.t1 == d.t0) {
    out.A.assign(static_cast<std::size_t>(order), cplx{});
    out.C.assign(static_cast<std::size_t>(order), 0.0);
    return out;
  }
  const quad::PanelGrid coarse =
      grid_points == 0 ? resolved_grid(d, d.t1, opts.nodes_per_panel, opts.resolution_tol, opts.max_panels)
                       : uniform_grid(d, grid_points, opts.nodes_per_panel);
  const quad::PanelGrid fine = coarse.refined();
  const RecursionResult r0 = run_recursion(coarse, coarse.sample(d.v), order);
  const RecursionResult r1 = run_recursion(fine, fine.sample(d.v), order);

  const double scale = std::max(1.0, std::abs(r1.A.front()));
  double change = 0.0;
  for (std::size_t n = 0; n < r1.A.size(); ++n) {
    change = std::max({change, std::abs(r1.A[n] - r0.A[n]), std::abs(r1.C[n] - r0.C[n])});
  }
  if (!(change <= 10.0 * opts.tol * scale)) {
    throw GridTooCoarse("recursive_magnus: grid doubling changed coefficients by " + std::to_string(change) +
                        " (limit " + std::to_string(10.0 * opts.tol * scale) + ")");
  }
  out.A = r1.A;
  out.C = r1.C;
  return out;
}

ConvergenceCertificate convergence_margin(const ScalarDrive& d) {
  check_drive(d, d.t1);
  ConvergenceCertificate cert;
  if (d.t1 > d.t0) {
    const std::vector<double> br = initial_breaks(d, d.t1);
    auto mag = [&](double s) { return std::abs(d.v(s)); };
    for (std::size_t m = 0; m + 1 < br.size(); ++m) {
      cert.margin += quad::integrate_adaptive<double>(mag, br[m], br[m + 1], 1e-12, 1e-13, 2000000, 16).value;
    }
  }
  cert.certified = cert.margin < kPi;
  return cert;
}

SU2Matrix magnus_propagator(const MagnusCoefficients& m, int order) {
  const int n = order < 0 ? m.order : order;
  return to_matrix(from_magnus_coeffs(m.summed_A(n), m.summed_C(n)));
}

}  // namespace tlm
