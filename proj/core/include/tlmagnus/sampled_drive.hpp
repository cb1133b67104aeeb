#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace tlm {

struct MonotoneSegment {
  double t_begin = 0.0;
  double t_end = 0.0;
  bool increasing = true;
};

// Shape function given as samples (t_k, f_k), linearly interpolated.
class SampledShape {
 public:
  SampledShape(std::vector<double> times, std::vector<double> values);

  // Two whitespace- or comma-separated columns per line; '#' starts a comment.
  // Throws ConfigError naming the source and line.
  static SampledShape parse(std::istream& in, const std::string& source = "<stream>");
  static SampledShape load(const std::filesystem::path& path);

  // Constant extension outside the sampled range.
  double value(double t) const;
  double slope(double t) const;
  // int_{0}^{t} of the interpolant (0 taken inside or at the left end of the range).
  double integral(double t) const;

  // Maximal runs on which the interpolant is monotone; flat pieces join the current run.
  std::vector<MonotoneSegment> monotone_segments() const;

  // Samples cover [0, 2 pi] with matching end values.
  bool periodic() const;

  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& values() const { return f_; }
  double max_abs() const;

 private:
  std::size_t segment(double t) const;
  double primitive(double t) const;  // from times().front()

  std::vector<double> t_;
  std::vector<double> f_;
  std::vector<double> cum_;  // trapezoid primitive at the nodes
};

}  // namespace tlm
