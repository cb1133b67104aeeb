#include "tlmagnus/pictures.hpp"

#include <algorithm>
#include <cmath>

#include "tlmagnus/errors.hpp"
#include "tlmagnus/quadrature.hpp"

namespace tlm {

std::string to_string(ShapeKind s) {
  switch (s) {
    case ShapeKind::Cos: return "cos";
    case ShapeKind::Sin: return "sin";
    case ShapeKind::Linear: return "linear";
    case ShapeKind::Sech: return "sech";
    case ShapeKind::Sampled: return "sampled";
  }
  return "?";
}

std::string to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
  }
  return "?";
}

std::string to_string(PictureKind k) {
  switch (k) {
    case PictureKind::RegionI: return "region1";
    case PictureKind::RegionII: return "region2";
    case PictureKind::Adiabatic: return "adiabatic";
  }
  return "?";
}

void DriveSpec::validate() const {
  if (!std::isfinite(delta) || !std::isfinite(g) || !std::isfinite(sweep)) {
    throw ValidationError("drive: non-finite parameter");
  }
  if (delta < 0.0) throw ValidationError("drive: delta must be >= 0 (use the symmetry relation for negative values)");
  if (shape == ShapeKind::Linear && !(sweep > 0.0)) throw ValidationError("drive: linear sweep must be > 0");
  if (shape == ShapeKind::Sampled && !sampled) throw ValidationError("drive: sampled shape without samples");
}

bool DriveSpec::periodic() const {
  switch (shape) {
    case ShapeKind::Cos:
    case ShapeKind::Sin: return true;
    case ShapeKind::Sampled: return sampled && sampled->periodic();
    default: return false;
  }
}

double DriveSpec::shape_value(double t) const {
  switch (shape) {
    case ShapeKind::Cos: return std::cos(t);
    case ShapeKind::Sin: return std::sin(t);
    case ShapeKind::Linear: return sweep * t;
    case ShapeKind::Sech: return 1.0 / std::cosh(t);
    case ShapeKind::Sampled: return sampled->value(t);
  }
  return 0.0;
}

double DriveSpec::shape_rate(double t) const {
  switch (shape) {
    case ShapeKind::Cos: return -std::sin(t);
    case ShapeKind::Sin: return std::cos(t);
    case ShapeKind::Linear: return sweep;
    case ShapeKind::Sech: return -std::tanh(t) / std::cosh(t);
    case ShapeKind::Sampled: return sampled->slope(t);
  }
  return 0.0;
}

double DriveSpec::shape_integral(double t) const {
  switch (shape) {
    case ShapeKind::Cos: return std::sin(t);
    case ShapeKind::Sin: return 1.0 - std::cos(t);
    case ShapeKind::Linear: return 0.5 * sweep * t * t;
    case ShapeKind::Sech: return 2.0 * std::atan(std::tanh(0.5 * t));
    case ShapeKind::Sampled: return sampled->integral(t);
  }
  return 0.0;
}

std::vector<double> DriveSpec::kinks(double a, double b) const {
  std::vector<double> out;
  if (shape == ShapeKind::Sampled && sampled) {
    for (double t : sampled->times())
      if (t > a && t < b) out.push_back(t);
  }
  return out;
}

Region classify_region(const DriveSpec& spec) {
  spec.validate();
  if (!spec.periodic()) throw NonPeriodicDrive("classify_region: drive shape '" + to_string(spec.shape) + "' is not periodic");
  const double g = std::abs(spec.g);
  const double d = spec.delta;
  if (g < 1.0 && d < 1.0) return g <= d ? Region::I : Region::II;
  if (g < 1.0) return Region::I;
  if (d < 1.0) return Region::II;
  return Region::III;
}

PictureContext build_region1(const DriveSpec& spec, double t0, double t1) {
  spec.validate();
  PictureContext ctx;
  ctx.kind = PictureKind::RegionI;
  ctx.drive.v = [spec](double t) { return 0.5 * spec.g * spec.shape_value(t) * std::exp(cplx{0.0, spec.delta * t}); };
  ctx.drive.t0 = t0;
  ctx.drive.t1 = t1;
  ctx.drive.kinks = spec.kinks(t0, t1);
  ctx.drive.smoothness = spec.shape == ShapeKind::Sampled ? Smoothness::Sampled : Smoothness::Analytic;
  ctx.frame = [delta = spec.delta](double t) { return AngleAxis{0.5 * delta * t, kAxisZ}; };
  return ctx;
}

PictureContext build_region2(const DriveSpec& spec, double t0, double t1) {
  spec.validate();
  PictureContext ctx;
  ctx.kind = PictureKind::RegionII;
  ctx.swapped = true;
  ctx.drive.v = [spec](double t) { return 0.5 * spec.delta * std::exp(cplx{0.0, spec.g * spec.shape_integral(t)}); };
  ctx.drive.t0 = t0;
  ctx.drive.t1 = t1;
  ctx.drive.kinks = spec.kinks(t0, t1);
  ctx.drive.smoothness = spec.shape == ShapeKind::Sampled ? Smoothness::Sampled : Smoothness::Analytic;
  ctx.frame = [spec](double t) { return AngleAxis{0.5 * spec.g * spec.shape_integral(t), kAxisZ}; };
  return ctx;
}

namespace {

// phi(t) = (1/2) int_{origin}^t sqrt(delta^2 + f^2), tabulated on a resolved panel grid.
class PhaseTable {
 public:
  PhaseTable(const DriveSpec& spec, double lo, double hi, double origin) {
    auto rate = [spec](double t) {
      const double f = spec.f(t);
      return cplx{0.5 * std::sqrt(spec.delta * spec.delta + f * f), 0.0};
    };
    std::vector<double> br{lo};
    for (double k : spec.kinks(lo, hi)) br.push_back(k);
    if (origin > lo && origin < hi) br.push_back(origin);
    br.push_back(hi);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    try {
      grid_ = std::make_shared<quad::PanelGrid>(quad::PanelGrid::adaptive(rate, br, 20, 1e-15, 400000));
    } catch (const QuadratureFailure& e) {
      throw QuadratureFailure(std::string("adiabatic phase: ") + e.what());
    }
    cum_ = std::make_shared<std::vector<cplx>>(grid_->cumulative(grid_->sample(rate)));
    offset_ = grid_->interpolate(*cum_, origin).real();
  }

  double operator()(double t) const {
    if (t < grid_->lower() || t > grid_->upper()) {
      throw ValidationError("adiabatic phase evaluated outside its table");
    }
    return grid_->interpolate(*cum_, t).real() - offset_;
  }

 private:
  std::shared_ptr<quad::PanelGrid> grid_;
  std::shared_ptr<std::vector<cplx>> cum_;
  double offset_ = 0.0;
};

}  // namespace

AdiabaticPicture build_adiabatic(const DriveSpec& spec, double phase_origin, double t0, double t1) {
  spec.validate();
  if (!(spec.delta > 0.0)) throw ValidationError("adiabatic picture requires delta > 0");
  if (!(t1 >= t0)) throw ValidationError("adiabatic picture: t1 < t0");
  const double lo = std::min(t0, phase_origin);
  const double hi = std::max(t1, phase_origin);
  const PhaseTable table(spec, lo, hi == lo ? lo + 1.0 : hi, phase_origin);

  AdiabaticFrame frame;
  frame.phase_origin = phase_origin;
  frame.chi = [spec](double t) { return std::atan(spec.f(t) / spec.delta); };
  frame.chi_dot = [spec](double t) {
    const double f = spec.f(t);
    return spec.delta * spec.g * spec.shape_rate(t) / (spec.delta * spec.delta + f * f);
  };
  frame.phi = table;

  AdiabaticPicture out;
  out.frame = frame;
  PictureContext& ctx = out.context;
  ctx.kind = PictureKind::Adiabatic;
  ctx.drive.v = [chi_dot = frame.chi_dot, phi = frame.phi](double t) {
    return cplx{0.0, 0.5 * chi_dot(t)} * std::exp(cplx{0.0, 2.0 * phi(t)});
  };
  ctx.drive.t0 = t0;
  ctx.drive.t1 = t1;
  ctx.drive.kinks = spec.kinks(t0, t1);
  ctx.drive.smoothness = spec.shape == ShapeKind::Sampled ? Smoothness::Sampled : Smoothness::Analytic;
  ctx.frame = [chi = frame.chi, phi = frame.phi](double t) {
    return compose_bch(AngleAxis{0.5 * chi(t), kAxisY}, AngleAxis{phi(t), kAxisZ});
  };
  return out;
}

PictureContext build_picture(const DriveSpec& spec, PictureKind kind, double t0, double t1) {
  switch (kind) {
    case PictureKind::RegionI: return build_region1(spec, t0, t1);
    case PictureKind::RegionII: return build_region2(spec, t0, t1);
    case PictureKind::Adiabatic: return build_adiabatic(spec, 0.0, t0, t1).context;
  }
  throw ValidationError("unknown picture");
}

SU2Matrix to_physical(const PictureContext& ctx, const SU2Matrix& u_picture) {
  const SU2Matrix u = to_matrix(ctx.frame(ctx.drive.t1)) * u_picture * to_matrix(ctx.frame(ctx.drive.t0)).adjoint();
  return ctx.swapped ? hadamard_conjugate(u) : u;
}

SU2Matrix to_picture(const PictureContext& ctx, const SU2Matrix& u_physical) {
  const SU2Matrix u = ctx.swapped ? hadamard_conjugate(u_physical) : u_physical;
  return to_matrix(ctx.frame(ctx.drive.t1)).adjoint() * u * to_matrix(ctx.frame(ctx.drive.t0));
}

TransitionAmplitudes amplitudes_from_magnus(cplx A, double C) {
  const double theta = std::sqrt(std::norm(A) + C * C);
  if (theta < kDegenerateAngle) return {cplx{1.0, 0.0}, cplx{}};
  const double s = std::sin(theta) / theta;
  return {cplx{std::cos(theta), -C * s}, cplx{0.0, -1.0} * std::conj(A) * s};
}

TransitionAmplitudes amplitudes_from_magnus(const MagnusCoefficients& mc) {
  return amplitudes_from_magnus(mc.summed_A(), mc.summed_C());
}

}  // namespace tlm
