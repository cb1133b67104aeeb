#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "tlmagnus/errors.hpp"

namespace tlm::quad {

using cplx = std::complex<double>;

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached; safe to call concurrently.
const GaussRule& gauss_legendre(int points);

// Legendre polynomials P_0..P_{n-1} at x.
void legendre_values(double x, int n, double* out);

// S[i*p + k]: weight of f(x_k) in int_{-1}^{x_i} of the degree p-1 interpolant
// through the Gauss-Legendre nodes.
std::vector<double> spectral_integration_matrix(int points);

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  long evaluations = 0;
};

namespace detail {

inline constexpr double kXgk[8] = {0.991455371120812639206854697526329,
                                   0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926,
                                   0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013,
                                   0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245,
                                   0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {0.022935322010529224963732008058970,
                                   0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518,
                                   0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550,
                                   0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649,
                                   0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082,
                                  0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975,
                                  0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> kronrod15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, magnitude(kron - gauss)};
}

}  // namespace detail

// Adaptive Gauss-Kronrod (7/15) with global error control.
// Throws QuadratureFailure if the tolerance is not met within max_evals.
template <class T, class F>
QuadResult<T> integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                 double rel_tol = 0.0, long max_evals = 400000,
                                 int initial_segments = 1) {
  QuadResult<T> out;
  if (a == b) return out;
  std::priority_queue<detail::Segment<T>> heap;
  T total{};
  double err = 0.0;
  const int n0 = std::max(1, initial_segments);
  for (int k = 0; k < n0; ++k) {
    const double lo = a + (b - a) * k / n0;
    const double hi = (k + 1 == n0) ? b : a + (b - a) * (k + 1) / n0;
    auto s = detail::kronrod15<T>(f, lo, hi);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  out.evaluations = 15L * n0;
  auto target = [&] { return std::max(abs_tol, rel_tol * detail::magnitude(total)); };
  while (err > target()) {
    if (out.evaluations + 30 > max_evals) {
      throw QuadratureFailure("adaptive quadrature: tolerance " + std::to_string(target()) +
                              " not reached (estimate " + std::to_string(err) + ") within " +
                              std::to_string(max_evals) + " evaluations");
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto l = detail::kronrod15<T>(f, worst.a, mid);
    auto r = detail::kronrod15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to remove drift from incremental updates.
  T fresh{};
  double fresh_err = 0.0;
  while (!heap.empty()) {
    fresh += heap.top().value;
    fresh_err += heap.top().error;
    heap.pop();
  }
  out.value = fresh;
  out.error = fresh_err;
  return out;
}

// Composite Gauss-Legendre grid: panels [b_k, b_{k+1}] with p nodes each.
// Cumulative integrals use the spectral integration matrix of the panel
// interpolant, so the nested integrals of the recursion stay high order.
class PanelGrid {
 public:
  PanelGrid(std::vector<double> breakpoints, int nodes_per_panel);

  // Bisects panels until the trailing Legendre coefficients of f fall below
  // tol * max|f|. Throws QuadratureFailure past max_panels.
  static PanelGrid adaptive(const std::function<cplx(double)>& f, double a, double b,
                            int nodes_per_panel, double tol, std::size_t max_panels = 200000,
                            std::size_t initial_panels = 1);
  // Same, starting from the given sorted breakpoints (kinks of f, say).
  static PanelGrid adaptive(const std::function<cplx(double)>& f,
                            const std::vector<double>& initial_breaks, int nodes_per_panel,
                            double tol, std::size_t max_panels = 200000);

  // Each panel split in two.
  PanelGrid refined() const;

  std::size_t panel_count() const { return breaks_.size() - 1; }
  std::size_t size() const { return nodes_.size(); }
  int nodes_per_panel() const { return p_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& breakpoints() const { return breaks_; }
  double lower() const { return breaks_.front(); }
  double upper() const { return breaks_.back(); }

  template <class F>
  auto sample(F&& f) const {
    using R = decltype(f(0.0));
    std::vector<R> out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = f(nodes_[i]);
    return out;
  }

  // Integral from lower() to every node.
  std::vector<cplx> cumulative(const std::vector<cplx>& values) const;
  std::vector<double> cumulative(const std::vector<double>& values) const;
  // Integral over the whole grid.
  cplx integral(const std::vector<cplx>& values) const;
  double integral(const std::vector<double>& values) const;
  // Integral from lower() to the end of each panel.
  std::vector<cplx> panel_end_cumulative(const std::vector<cplx>& values) const;

  // Barycentric interpolation of nodal values at t inside the grid.
  cplx interpolate(const std::vector<cplx>& values, double t) const;

 private:
  template <class T>
  std::vector<T> cumulative_impl(const std::vector<T>& values) const;
  template <class T>
  T integral_impl(const std::vector<T>& values) const;

  std::vector<double> breaks_;
  std::vector<double> nodes_;
  int p_;
  std::vector<double> weights_;      // reference weights, length p
  std::vector<double> integration_;  // p x p row-major, on [-1, 1]
  std::vector<double> bary_;         // barycentric weights of the reference nodes
};

}  // namespace tlm::quad
