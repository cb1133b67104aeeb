#include "tlmagnus/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "tlmagnus/errors.hpp"
#include "tlmagnus/quadrature.hpp"

namespace tlm {

namespace {

constexpr int kStages = 4;
constexpr cplx kI{0.0, 1.0};

struct Butcher {
  std::array<double, kStages> c{};
  std::array<double, kStages> b{};
  std::array<std::array<double, kStages>, kStages> a{};
};

// Gauss-Legendre collocation tableau from the spectral integration matrix on [0, 1].
const Butcher& gauss_tableau() {
  static const Butcher tab = [] {
    Butcher t;
    const auto& rule = quad::gauss_legendre(kStages);
    const auto S = quad::spectral_integration_matrix(kStages);
    for (int i = 0; i < kStages; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      t.c[ui] = 0.5 * (rule.nodes[ui] + 1.0);
      t.b[ui] = 0.5 * rule.weights[ui];
      for (int j = 0; j < kStages; ++j) t.a[ui][static_cast<std::size_t>(j)] = 0.5 * S[ui * kStages + static_cast<std::size_t>(j)];
    }
    return t;
  }();
  return tab;
}

using Mat2 = std::array<cplx, 4>;  // row-major 2x2

Mat2 hamiltonian_matrix(const HamiltonianSample& h) {
  return {cplx{h.C}, h.A, std::conj(h.A), cplx{-h.C}};
}

// Solves M x = rhs in place (n <= 8) by Gaussian elimination with partial pivoting.
template <std::size_t N>
void solve_dense(std::array<std::array<cplx, N>, N>& M, std::array<std::array<cplx, 2>, N>& rhs) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    const cplx inv = 1.0 / M[col][col];
    for (std::size_t r = col + 1; r < N; ++r) {
      const cplx f = M[r][col] * inv;
      if (f == cplx{}) continue;
      for (std::size_t k = col; k < N; ++k) M[r][k] -= f * M[col][k];
      rhs[r][0] -= f * rhs[col][0];
      rhs[r][1] -= f * rhs[col][1];
    }
  }
  for (std::size_t r = N; r-- > 0;) {
    for (std::size_t k = r + 1; k < N; ++k) {
      rhs[r][0] -= M[r][k] * rhs[k][0];
      rhs[r][1] -= M[r][k] * rhs[k][1];
    }
    rhs[r][0] /= M[r][r];
    rhs[r][1] /= M[r][r];
  }
}

// One collocation step for dU/dt = -i H U. Stage slopes K_s = -i H_s (U + h sum_j a_sj K_j),
// solved as an 8x8 linear system for both columns of U at once.
SU2Matrix gauss_step(const PropagatorRequest& req, double t, double h, const SU2Matrix& u) {
  const Butcher& bt = gauss_tableau();
  std::array<Mat2, kStages> hs;
  for (std::size_t s = 0; s < kStages; ++s) hs[s] = hamiltonian_matrix(req.hamiltonian(t + bt.c[s] * h));
  constexpr std::size_t N = 2 * kStages;
  std::array<std::array<cplx, N>, N> M{};
  std::array<std::array<cplx, 2>, N> rhs{};
  const Mat2 um{u.a, u.b, u.c, u.d};
  for (std::size_t s = 0; s < kStages; ++s) {
    const Mat2 mh = {-kI * hs[s][0], -kI * hs[s][1], -kI * hs[s][2], -kI * hs[s][3]};
    for (std::size_t r = 0; r < 2; ++r) {
      const std::size_t row = 2 * s + r;
      M[row][row] += 1.0;
      for (std::size_t j = 0; j < kStages; ++j) {
        for (std::size_t k = 0; k < 2; ++k) M[row][2 * j + k] -= h * bt.a[s][j] * mh[2 * r + k];
      }
      for (std::size_t col = 0; col < 2; ++col) rhs[row][col] = mh[2 * r] * um[col] + mh[2 * r + 1] * um[2 + col];
    }
  }
  solve_dense(M, rhs);
  Mat2 out = um;
  for (std::size_t s = 0; s < kStages; ++s) {
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t col = 0; col < 2; ++col) out[2 * r + col] += h * bt.b[s] * rhs[2 * s + r][col];
  }
  return {out[0], out[1], out[2], out[3]};
}

}  // namespace

SU2Matrix project_su2(const SU2Matrix& m) {
  const cplx alpha = 0.5 * (m.a + std::conj(m.d));
  const cplx beta = 0.5 * (m.c - std::conj(m.b));
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(n > 0.0)) throw NumericalError("project_su2: degenerate matrix");
  const cplx a = alpha / n;
  const cplx b = beta / n;
  return {a, -std::conj(b), b, std::conj(a)};
}

namespace {

// Adaptive Gauss collocation on one smooth piece [a, b]; error budget is tol * |b - a| / total.
void propagate_piece(const PropagatorRequest& req, double a, double b, double total, SU2Matrix& u,
                     PropagationStats& local) {
  const double span = b - a;
  if (span == 0.0) return;
  const double dir = span > 0 ? 1.0 : -1.0;
  const double length = std::abs(span);

  // initial step from the Hamiltonian norm at the start
  const HamiltonianSample h0 = req.hamiltonian(a);
  const double hnorm = std::sqrt(std::norm(h0.A) + h0.C * h0.C);
  double h = std::min(length, 0.5 / std::max(hnorm, 1e-3));
  h = std::min(h, total / 8.0);

  double t = a;
  double done = 0.0;
  constexpr double order_exp = 1.0 / 9.0;
  // estimates below a few ulps of the difference are rounding, not truncation;
  // spread over the piece so short slivers can finish without masking singular growth
  constexpr double roundoff_floor = 16.0 * std::numeric_limits<double>::epsilon() / 255.0;
  while (done < length) {
    if (h > length - done) h = length - done;
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw StepSizeUnderflow("propagate: step size underflow at t = " + std::to_string(t));
    }
    const double hs = dir * h;
    const SU2Matrix full = gauss_step(req, t, hs, u);
    const SU2Matrix half = gauss_step(req, t, 0.5 * hs, u);
    const SU2Matrix two = gauss_step(req, t + 0.5 * hs, 0.5 * hs, half);
    const double err = frobenius_distance(two, full) / 255.0;
    if (!std::isfinite(err)) {
      ++local.rejected_steps;
      h *= 0.25;
      continue;
    }
    const double allowed = std::max(req.tolerance * h / total, roundoff_floor * h / length);
    if (err <= allowed) {
      u = project_su2(two);
      done += h;
      t = done >= length ? b : t + hs;
      ++local.accepted_steps;
      local.error_estimate += err;
      const double grow = err > 0.0 ? 0.9 * std::pow(allowed / err, order_exp) : 4.0;
      h *= std::clamp(grow, 0.2, 4.0);
    } else {
      ++local.rejected_steps;
      h *= std::clamp(0.9 * std::pow(allowed / err, order_exp), 0.1, 0.9);
    }
  }
}

}  // namespace

SU2Matrix propagate(const PropagatorRequest& req, PropagationStats* stats) {
  if (!req.hamiltonian) throw ValidationError("propagate: missing Hamiltonian");
  if (!(req.tolerance >= 1e-13 && req.tolerance <= 1e-6)) {
    throw ValidationError("propagate: tolerance must lie in [1e-13, 1e-6]");
  }
  if (!std::isfinite(req.t0) || !std::isfinite(req.t1)) throw ValidationError("propagate: non-finite interval");
  PropagationStats local;
  SU2Matrix u = SU2Matrix::identity();
  const double total = std::abs(req.t1 - req.t0);
  if (total == 0.0) return u;

  const double lo = std::min(req.t0, req.t1);
  const double hi = std::max(req.t0, req.t1);
  std::vector<double> cuts;
  for (double k : req.breakpoints)
    if (k > lo && k < hi) cuts.push_back(k);
  std::sort(cuts.begin(), cuts.end());
  if (req.t1 < req.t0) std::reverse(cuts.begin(), cuts.end());
  cuts.push_back(req.t1);

  double a = req.t0;
  for (double b : cuts) {
    propagate_piece(req, a, b, total, u, local);
    a = b;
  }
  if (stats) *stats = local;
  return u;
}

PropagatorRequest physical_request(double delta, std::function<double(double)> f, double t0, double t1,
                                   double tolerance) {
  PropagatorRequest r;
  r.hamiltonian = [delta, f = std::move(f)](double t) { return HamiltonianSample{cplx{0.5 * f(t), 0.0}, 0.5 * delta}; };
  r.t0 = t0;
  r.t1 = t1;
  r.tolerance = tolerance;
  return r;
}

}  // namespace tlm

namespace tlm {

SU2Matrix physical_propagator(const DriveSpec& spec, double t0, double t1, double tolerance) {
  DriveSpec copy = spec;
  PropagatorRequest req = physical_request(spec.delta, [copy](double t) { return copy.f(t); }, t0, t1, tolerance);
  req.breakpoints = spec.kinks(std::min(t0, t1), std::max(t0, t1));
  return propagate(req);
}

namespace {

void require_periodic(const DriveSpec& spec) {
  if (!spec.periodic()) throw NonPeriodicDrive("quasienergy: drive shape '" + to_string(spec.shape) + "' is not periodic");
}

}  // namespace

QuasienergyResult quasienergy_numeric(const DriveSpec& spec, double tolerance) {
  require_periodic(spec);
  const SU2Matrix u = physical_propagator(spec, 0.0, DriveSpec::period, tolerance);
  const AngleAxis log = principal_log(u);
  QuasienergyResult r;
  r.raw = log.theta() / (2.0 * kPi);
  const Folded f = bz_fold_counted(r.raw);
  r.epsilon = f.value;
  r.folds = f.folds;
  r.method.kind = MethodKind::OracleODE;
  r.method.mode = PeriodMode::FullPeriod;
  r.crossing.kind = classify_crossing(u);
  return r;
}

QuasienergyResult quasienergy_numeric_gp(const DriveSpec& spec, double tolerance) {
  require_periodic(spec);
  const SU2Matrix half = physical_propagator(spec, 0.0, 0.5 * DriveSpec::period, tolerance);
  QuasienergyResult r;
  r.raw = eps_from_gp_trace(half, ParityOp::z());
  const Folded f = bz_fold_counted(r.raw);
  r.epsilon = f.value;
  r.folds = f.folds;
  r.method.kind = MethodKind::OracleODE;
  r.method.mode = PeriodMode::HalfPeriod;
  const SU2Matrix pu = ParityOp::z().matrix() * half;
  r.crossing.kind = classify_crossing(pu * pu);
  return r;
}

bool SymmetryReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

SymmetryReport symmetry_verify(const DriveSpec& spec, const SymmetryOptions& opts) {
  SymmetryReport rep;
  const SU2Matrix pz = ParityOp::z().matrix();
  const bool odd = spec.shape == ShapeKind::Linear || spec.shape == ShapeKind::Sin;
  const bool gp = spec.periodic() && spec.shape != ShapeKind::Sampled;

  SymmetryCheck pt{"pt_propagator", odd || opts.force_all, 0.0, opts.threshold};
  SymmetryCheck pt_log{"pt_log_re_a", odd || opts.force_all, 0.0, opts.threshold};
  if (pt.applicable) {
    for (double t : {0.25 * opts.window, 0.5 * opts.window, opts.window}) {
      const SU2Matrix fwd = physical_propagator(spec, 0.0, t, opts.tolerance);
      const SU2Matrix bwd = physical_propagator(spec, 0.0, -t, opts.tolerance);
      pt.distance = std::max(pt.distance, frobenius_distance(bwd.conj(), pz * fwd * pz));
    }
    // S = U(T, -T): Omega* = P Omega P forces Re A = 0, i.e. n_x = 0.
    const SU2Matrix s = physical_propagator(spec, -opts.window, opts.window, opts.tolerance);
    const AngleAxis log = principal_log(s);
    pt_log.distance = std::abs(log.theta() * log.axis().x);
  }
  rep.checks.push_back(pt);
  rep.checks.push_back(pt_log);

  SymmetryCheck gp_check{"gp_identity", gp || (opts.force_all && spec.periodic()), 0.0, opts.threshold};
  if (gp_check.applicable) {
    const SU2Matrix half = physical_propagator(spec, 0.0, 0.5 * DriveSpec::period, opts.tolerance);
    const SU2Matrix full = physical_propagator(spec, 0.0, DriveSpec::period, opts.tolerance);
    gp_check.distance = gp_identity_check(half, full, ParityOp::z());
  }
  rep.checks.push_back(gp_check);
  return rep;
}

}  // namespace tlm
