#include "tlmagnus/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace tlm::quad {

namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // ascending order
    const auto idx = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[idx] = x;
    rule.weights[idx] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int points) {
  if (points < 1 || points > 200) throw ValidationError("gauss_legendre: unsupported point count");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, build_rule(points)).first;
  return it->second;
}

void legendre_values(double x, int n, double* out) {
  if (n <= 0) return;
  out[0] = 1.0;
  if (n == 1) return;
  out[1] = x;
  for (int k = 2; k < n; ++k) out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

std::vector<double> spectral_integration_matrix(int points) {
  const GaussRule& rule = gauss_legendre(points);
  const auto p = static_cast<std::size_t>(points);
  // Legendre-basis integration: S = W * diag((2j+1)/2) * P^T * diag(w).
  std::vector<double> vand(p * p);  // P_j(x_k) at [k*p + j]
  for (std::size_t k = 0; k < p; ++k) legendre_values(rule.nodes[k], points, &vand[k * p]);
  std::vector<double> prim(p * p);  // int_{-1}^{x_i} P_j at [i*p + j]
  std::vector<double> ext(p + 1);
  for (std::size_t i = 0; i < p; ++i) {
    legendre_values(rule.nodes[i], points + 1, ext.data());
    prim[i * p] = rule.nodes[i] + 1.0;
    for (std::size_t j = 1; j < p; ++j) prim[i * p + j] = (ext[j + 1] - ext[j - 1]) / (2.0 * j + 1.0);
  }
  std::vector<double> out(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < p; ++j) s += prim[i * p + j] * (2.0 * j + 1.0) / 2.0 * vand[k * p + j];
      out[i * p + k] = s * rule.weights[k];
    }
  }
  return out;
}

PanelGrid::PanelGrid(std::vector<double> breakpoints, int nodes_per_panel)
    : breaks_(std::move(breakpoints)), p_(nodes_per_panel) {
  if (breaks_.size() < 2) throw ValidationError("PanelGrid: need at least one panel");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
      std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end()) {
    throw ValidationError("PanelGrid: breakpoints must be strictly increasing");
  }
  const GaussRule& rule = gauss_legendre(p_);
  const auto p = static_cast<std::size_t>(p_);
  weights_ = rule.weights;

  integration_ = spectral_integration_matrix(p_);

  bary_.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    double prod = 1.0;
    for (std::size_t k = 0; k < p; ++k)
      if (k != j) prod *= rule.nodes[j] - rule.nodes[k];
    bary_[j] = 1.0 / prod;
  }

  nodes_.reserve(panel_count() * p);
  for (std::size_t m = 0; m + 1 < breaks_.size(); ++m) {
    const double c = 0.5 * (breaks_[m] + breaks_[m + 1]);
    const double h = 0.5 * (breaks_[m + 1] - breaks_[m]);
    for (std::size_t k = 0; k < p; ++k) nodes_.push_back(c + h * rule.nodes[k]);
  }
}

PanelGrid PanelGrid::adaptive(const std::function<cplx(double)>& f, double a, double b,
                              int nodes_per_panel, double tol, std::size_t max_panels,
                              std::size_t initial_panels) {
  if (!(b > a)) throw ValidationError("PanelGrid::adaptive: empty interval");
  const std::size_t n0 = std::max<std::size_t>(1, initial_panels);
  std::vector<double> init(n0 + 1);
  for (std::size_t k = 0; k <= n0; ++k) init[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n0);
  init.back() = b;
  return adaptive(f, init, nodes_per_panel, tol, max_panels);
}

PanelGrid PanelGrid::adaptive(const std::function<cplx(double)>& f,
                              const std::vector<double>& initial_breaks, int nodes_per_panel,
                              double tol, std::size_t max_panels) {
  if (initial_breaks.size() < 2 || !(initial_breaks.back() > initial_breaks.front())) {
    throw ValidationError("PanelGrid::adaptive: empty interval");
  }
  const double a = initial_breaks.front();
  const double b = initial_breaks.back();
  const GaussRule& rule = gauss_legendre(nodes_per_panel);
  const auto p = static_cast<std::size_t>(nodes_per_panel);
  std::vector<double> vand(p * p);
  for (std::size_t k = 0; k < p; ++k) legendre_values(rule.nodes[k], nodes_per_panel, &vand[k * p]);

  double scale = 0.0;
  {
    const int probes = 2048;
    for (int i = 0; i <= probes; ++i) scale = std::max(scale, std::abs(f(a + (b - a) * i / probes)));
  }
  if (scale == 0.0) scale = 1.0;

  auto resolved = [&](double lo, double hi, double& seen) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    std::vector<cplx> vals(p);
    for (std::size_t k = 0; k < p; ++k) {
      vals[k] = f(c + h * rule.nodes[k]);
      seen = std::max(seen, std::abs(vals[k]));
    }
    auto coeff = [&](std::size_t j) {
      cplx s{};
      for (std::size_t k = 0; k < p; ++k) s += rule.weights[k] * vand[k * p + j] * vals[k];
      return s * ((2.0 * j + 1.0) / 2.0);
    };
    const double tail = std::abs(coeff(p - 1)) + std::abs(coeff(p - 2));
    return tail <= tol * scale;
  };

  std::vector<double> breaks{a};
  // Depth-first, left to right, so breakpoints come out sorted.
  std::vector<std::pair<double, double>> stack;
  for (std::size_t k = initial_breaks.size() - 1; k-- > 0;) {
    if (initial_breaks[k + 1] > initial_breaks[k]) stack.emplace_back(initial_breaks[k], initial_breaks[k + 1]);
  }
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    double seen = 0.0;
    const bool tiny = (hi - lo) <= 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (tiny || resolved(lo, hi, seen)) {
      breaks.push_back(hi);
      if (breaks.size() > max_panels + 1) {
        throw QuadratureFailure("PanelGrid::adaptive: panel budget exhausted");
      }
      continue;
    }
    const double mid = 0.5 * (lo + hi);
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
    if (stack.size() + breaks.size() > 2 * max_panels + 2) {
      throw QuadratureFailure("PanelGrid::adaptive: panel budget exhausted");
    }
  }
  breaks.back() = b;
  return PanelGrid(std::move(breaks), nodes_per_panel);
}

PanelGrid PanelGrid::refined() const {
  std::vector<double> br;
  br.reserve(2 * breaks_.size());
  for (std::size_t m = 0; m + 1 < breaks_.size(); ++m) {
    br.push_back(breaks_[m]);
    br.push_back(0.5 * (breaks_[m] + breaks_[m + 1]));
  }
  br.push_back(breaks_.back());
  return PanelGrid(std::move(br), p_);
}

template <class T>
std::vector<T> PanelGrid::cumulative_impl(const std::vector<T>& values) const {
  if (values.size() != nodes_.size()) throw ValidationError("PanelGrid: value count mismatch");
  const auto p = static_cast<std::size_t>(p_);
  std::vector<T> out(values.size());
  T offset{};
  for (std::size_t m = 0; m < panel_count(); ++m) {
    const double h = 0.5 * (breaks_[m + 1] - breaks_[m]);
    const T* f = &values[m * p];
    T total{};
    for (std::size_t k = 0; k < p; ++k) total += weights_[k] * f[k];
    for (std::size_t i = 0; i < p; ++i) {
      T s{};
      const double* row = &integration_[i * p];
      for (std::size_t k = 0; k < p; ++k) s += row[k] * f[k];
      out[m * p + i] = offset + h * s;
    }
    offset += h * total;
  }
  return out;
}

template <class T>
T PanelGrid::integral_impl(const std::vector<T>& values) const {
  if (values.size() != nodes_.size()) throw ValidationError("PanelGrid: value count mismatch");
  const auto p = static_cast<std::size_t>(p_);
  T sum{};
  for (std::size_t m = 0; m < panel_count(); ++m) {
    const double h = 0.5 * (breaks_[m + 1] - breaks_[m]);
    T s{};
    for (std::size_t k = 0; k < p; ++k) s += weights_[k] * values[m * p + k];
    sum += h * s;
  }
  return sum;
}

std::vector<cplx> PanelGrid::cumulative(const std::vector<cplx>& v) const { return cumulative_impl(v); }
std::vector<double> PanelGrid::cumulative(const std::vector<double>& v) const { return cumulative_impl(v); }
cplx PanelGrid::integral(const std::vector<cplx>& v) const { return integral_impl(v); }
double PanelGrid::integral(const std::vector<double>& v) const { return integral_impl(v); }

std::vector<cplx> PanelGrid::panel_end_cumulative(const std::vector<cplx>& values) const {
  if (values.size() != nodes_.size()) throw ValidationError("PanelGrid: value count mismatch");
  const auto p = static_cast<std::size_t>(p_);
  std::vector<cplx> out(panel_count());
  cplx offset{};
  for (std::size_t m = 0; m < panel_count(); ++m) {
    const double h = 0.5 * (breaks_[m + 1] - breaks_[m]);
    cplx s{};
    for (std::size_t k = 0; k < p; ++k) s += weights_[k] * values[m * p + k];
    offset += h * s;
    out[m] = offset;
  }
  return out;
}

cplx PanelGrid::interpolate(const std::vector<cplx>& values, double t) const {
  if (values.size() != nodes_.size()) throw ValidationError("PanelGrid: value count mismatch");
  if (t < lower() || t > upper()) throw ValidationError("PanelGrid::interpolate: outside grid");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  std::size_t m = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
  m = std::clamp<std::size_t>(m, 1, panel_count()) - 1;
  const double c = 0.5 * (breaks_[m] + breaks_[m + 1]);
  const double h = 0.5 * (breaks_[m + 1] - breaks_[m]);
  const double x = (t - c) / h;
  const GaussRule& rule = gauss_legendre(p_);
  const auto p = static_cast<std::size_t>(p_);
  cplx num{};
  double den = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    const double d = x - rule.nodes[k];
    if (d == 0.0) return values[m * p + k];
    const double w = bary_[k] / d;
    num += w * values[m * p + k];
    den += w;
  }
  return num / den;
}

}  // namespace tlm::quad
