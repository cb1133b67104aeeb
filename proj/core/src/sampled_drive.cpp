#include "tlmagnus/sampled_drive.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tlmagnus/errors.hpp"

namespace tlm {

SampledShape::SampledShape(std::vector<double> times, std::vector<double> values)
    : t_(std::move(times)), f_(std::move(values)) {
  if (t_.size() != f_.size()) throw ValidationError("sampled drive: column lengths differ");
  if (t_.size() < 2) throw ValidationError("sampled drive: need at least two samples");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(f_[i])) throw ValidationError("sampled drive: non-finite sample");
    if (i > 0 && !(t_[i] > t_[i - 1])) throw ValidationError("sampled drive: times must be strictly increasing");
  }
  cum_.assign(t_.size(), 0.0);
  for (std::size_t i = 1; i < t_.size(); ++i) cum_[i] = cum_[i - 1] + 0.5 * (t_[i] - t_[i - 1]) * (f_[i] + f_[i - 1]);
}

SampledShape SampledShape::parse(std::istream& in, const std::string& source) {
  std::vector<double> t;
  std::vector<double> f;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0.0;
    double b = 0.0;
    if (!(ls >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected two numeric columns");
    }
    std::string extra;
    if (!(ls >> b) || (ls >> extra)) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected exactly two numeric columns");
    }
    if (!t.empty() && !(a > t.back())) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": time column must be strictly increasing");
    }
    t.push_back(a);
    f.push_back(b);
  }
  if (t.size() < 2) throw ConfigError(source + ": need at least two samples");
  return SampledShape(std::move(t), std::move(f));
}

SampledShape SampledShape::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sampled drive file '" + path.string() + "'");
  return parse(in, path.string());
}

std::size_t SampledShape::segment(double t) const {
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  auto k = static_cast<std::size_t>(std::distance(t_.begin(), it));
  return std::clamp<std::size_t>(k, 1, t_.size() - 1) - 1;
}

double SampledShape::value(double t) const {
  if (t <= t_.front()) return f_.front();
  if (t >= t_.back()) return f_.back();
  const std::size_t k = segment(t);
  const double w = (t - t_[k]) / (t_[k + 1] - t_[k]);
  return (1.0 - w) * f_[k] + w * f_[k + 1];
}

double SampledShape::slope(double t) const {
  if (t < t_.front() || t > t_.back()) return 0.0;
  const std::size_t k = segment(t);
  return (f_[k + 1] - f_[k]) / (t_[k + 1] - t_[k]);
}

double SampledShape::primitive(double t) const {
  if (t <= t_.front()) return f_.front() * (t - t_.front());
  if (t >= t_.back()) return cum_.back() + f_.back() * (t - t_.back());
  const std::size_t k = segment(t);
  return cum_[k] + 0.5 * (t - t_[k]) * (f_[k] + value(t));
}

double SampledShape::integral(double t) const { return primitive(t) - primitive(0.0); }

std::vector<MonotoneSegment> SampledShape::monotone_segments() const {
  std::vector<MonotoneSegment> out;
  MonotoneSegment cur{t_.front(), t_.front(), true};
  int dir = 0;  // undecided
  for (std::size_t k = 0; k + 1 < t_.size(); ++k) {
    const double d = f_[k + 1] - f_[k];
    const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s != 0 && dir != 0 && s != dir) {
      cur.t_end = t_[k];
      cur.increasing = dir > 0;
      out.push_back(cur);
      cur = {t_[k], t_[k], true};
      dir = s;
    } else if (s != 0) {
      dir = s;
    }
  }
  cur.t_end = t_.back();
  cur.increasing = dir >= 0;
  out.push_back(cur);
  return out;
}

bool SampledShape::periodic() const {
  // tables are often written with ~6 significant digits
  constexpr double two_pi = 6.283185307179586;
  constexpr double slack = 1e-5;
  return std::abs(t_.front()) < slack && std::abs(t_.back() - two_pi) < slack &&
         std::abs(f_.front() - f_.back()) < slack * std::max(1.0, max_abs());
}

double SampledShape::max_abs() const {
  double m = 0.0;
  for (double v : f_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace tlm
