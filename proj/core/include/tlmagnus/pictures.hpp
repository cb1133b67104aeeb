#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "tlmagnus/magnus.hpp"
#include "tlmagnus/sampled_drive.hpp"
#include "tlmagnus/su2.hpp"

namespace tlm {

enum class ShapeKind { Cos, Sin, Linear, Sech, Sampled };

std::string to_string(ShapeKind s);

// H(t) = (delta/2) sigma_z + (g shape(t)/2) sigma_x in units of the drive
// frequency (omega = 1).
struct DriveSpec {
  static constexpr double omega = 1.0;
  static constexpr double period = 2.0 * kPi;

  double delta = 0.0;
  double g = 0.0;
  ShapeKind shape = ShapeKind::Cos;
  double sweep = 1.0;  // Linear: shape(t) = sweep * t
  std::shared_ptr<const SampledShape> sampled;

  static DriveSpec cosine(double delta, double g) { return {delta, g, ShapeKind::Cos, 1.0, nullptr}; }
  static DriveSpec sine(double delta, double g) { return {delta, g, ShapeKind::Sin, 1.0, nullptr}; }

  // Throws ValidationError on negative delta, non-finite values or a missing sample table.
  void validate() const;
  bool periodic() const;

  double shape_value(double t) const;     // f~(t)
  double shape_rate(double t) const;      // d f~/dt
  double shape_integral(double t) const;  // F~(t) = int_0^t f~
  double f(double t) const { return g * shape_value(t); }
  // Interior non-smooth points of the shape inside [a, b].
  std::vector<double> kinks(double a, double b) const;
};

enum class Region { I, II, III };
enum class PictureKind { RegionI, RegionII, Adiabatic };

std::string to_string(Region r);
std::string to_string(PictureKind k);

// g < 1 -> I, else delta < 1 -> II, else III. When both g and delta are
// below 1 the smaller perturbation wins (g <= delta -> I).
Region classify_region(const DriveSpec& spec);

struct PictureContext {
  PictureKind kind = PictureKind::RegionI;
  ScalarDrive drive;                        // v(t) on [t0, t1]
  std::function<AngleAxis(double)> frame;   // U0(t)
  bool swapped = false;                     // physical = H (frame U_picture) H
};

struct AdiabaticFrame {
  std::function<double(double)> chi;
  std::function<double(double)> chi_dot;
  std::function<double(double)> phi;
  double phase_origin = 0.0;
};

struct AdiabaticPicture {
  PictureContext context;
  AdiabaticFrame frame;
};

PictureContext build_region1(const DriveSpec& spec, double t0 = 0.0, double t1 = DriveSpec::period);
PictureContext build_region2(const DriveSpec& spec, double t0 = 0.0, double t1 = DriveSpec::period);
AdiabaticPicture build_adiabatic(const DriveSpec& spec, double phase_origin = 0.0, double t0 = 0.0,
                                 double t1 = DriveSpec::period);
PictureContext build_picture(const DriveSpec& spec, PictureKind kind, double t0 = 0.0,
                             double t1 = DriveSpec::period);

// Physical U(t1, t0) from the picture propagator over [t0, t1].
SU2Matrix to_physical(const PictureContext& ctx, const SU2Matrix& u_picture);
// Inverse map: picture propagator from the physical one.
SU2Matrix to_picture(const PictureContext& ctx, const SU2Matrix& u_physical);

struct TransitionAmplitudes {
  cplx alpha;
  cplx beta;
  double probability() const { return std::norm(beta); }
};

TransitionAmplitudes amplitudes_from_magnus(cplx A, double C);
TransitionAmplitudes amplitudes_from_magnus(const MagnusCoefficients& mc);

}  // namespace tlm
