#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tlmagnus/errors.hpp"
#include "tlmagnus/models.hpp"

namespace tlm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void field_error(const std::string& where, const std::string& key, const std::string& why) {
  throw ConfigError((where.empty() ? "" : where + ": ") + "field '" + key + "': " + why);
}

double to_double(const std::string& where, const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    field_error(where, key, "expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) field_error(where, key, "expected a finite number, got '" + text + "'");
  return v;
}

int to_int(const std::string& where, const std::string& key, const std::string& text) {
  const double v = to_double(where, key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) field_error(where, key, "expected an integer, got '" + text + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& where, const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  field_error(where, key, "expected true or false, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string to_string(Model m) { return m == Model::Lz ? "lz" : "rabi"; }

std::string SweepConfig::effective_axis() const {
  if (!axis.empty()) return axis;
  return model == Model::Lz ? "gamma" : "delta";
}

double SweepConfig::effective_tol() const {
  if (tol > 0.0) return tol;
  return model == Model::Lz ? 1e-7 : 1e-12;
}

std::vector<double> SweepConfig::grid() const {
  if (!values.empty()) return values;
  validate_sweep();
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / (count - 1);
    g[static_cast<std::size_t>(i)] = log ? min * std::pow(max / min, s) : min + (max - min) * s;
  }
  g.back() = max;
  return g;
}

void SweepConfig::validate_sweep() const {
  const std::string ax = effective_axis();
  if (model == Model::Lz && ax != "gamma") field_error("", "axis", "lz sweeps run over gamma, got '" + ax + "'");
  if (model == Model::Rabi && ax != "delta" && ax != "g") field_error("", "axis", "rabi sweeps run over delta or g, got '" + ax + "'");
  if (values.empty()) {
    if (count < 2) field_error("", "count", "a sweep needs at least 2 points (or an explicit value list)");
    if (!(min < max)) field_error("", "min", "min must be below max");
    if (log && !(min > 0.0)) field_error("", "log", "logarithmic spacing needs min > 0");
  }
  if (model == Model::Lz) {
    for (double v : values)
      if (v < 0.0) field_error("", "values", "gamma must be >= 0");
    if (values.empty() && min < 0.0) field_error("", "min", "gamma must be >= 0");
  }
  for (const auto& m : methods) {
    if (model == Model::Lz) {
      if (m != "exact" && m != "magnus:1" && m != "magnus:2" && m != "magnus:3") {
        field_error("", "method", "lz methods are exact, magnus:1, magnus:2, magnus:3; got '" + m + "'");
      }
    } else {
      try {
        (void)parse_method(m);
      } catch (const ConfigError& e) {
        field_error("", "method", e.what());
      }
    }
  }
  const double t = effective_tol();
  if (model == Model::Rabi && !(t >= 1e-13 && t <= 1e-6)) field_error("", "tol", "oracle tolerance must lie in [1e-13, 1e-6]");
  if (model == Model::Lz && !(t > 0.0 && t <= 1e-3)) field_error("", "tol", "lz tolerance must lie in (0, 1e-3]");
  if (threads < 0) field_error("", "threads", "must be >= 0");
  validate_params();
}

void SweepConfig::validate_params() const {
  for (const auto& [key, value] : params) {
    const bool known = model == Model::Lz ? (key == "gamma")
                                          : (key == "delta" || key == "g" || key == "shape" || key == "drive");
    if (!known) field_error("", "model-params", "unknown parameter '" + key + "' for " + to_string(model));
    if (key == "shape") {
      if (value != "cos" && value != "sin") field_error("", "model-params", "shape must be cos or sin");
    } else if (key != "drive") {
      (void)to_double("model-params", key, value);
    }
  }
}

double SweepConfig::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : to_double("model-params", key, it->second);
}

std::string SweepConfig::param(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void merge_model_params(SweepConfig& cfg, const std::string& text, const std::string& where) {
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) field_error(where, "model-params", "expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key.empty() || value.empty()) field_error(where, "model-params", "expected key=value, got '" + item + "'");
    cfg.params[key] = value;
  }
}

void apply_setting(SweepConfig& cfg, const std::string& key, const std::string& value, const std::string& where) {
  if (key == "model") {
    if (value == "lz") {
      cfg.model = Model::Lz;
    } else if (value == "rabi") {
      cfg.model = Model::Rabi;
    } else {
      field_error(where, key, "expected lz or rabi, got '" + value + "'");
    }
  } else if (key == "axis") {
    cfg.axis = value;
  } else if (key == "min") {
    cfg.min = to_double(where, key, value);
  } else if (key == "max") {
    cfg.max = to_double(where, key, value);
  } else if (key == "count") {
    cfg.count = to_int(where, key, value);
  } else if (key == "log") {
    cfg.log = to_bool(where, key, value);
  } else if (key == "values") {
    const auto items = split(value, ',');
    if (items.empty()) field_error(where, key, "empty value list");
    cfg.values.clear();
    for (const auto& v : items) cfg.values.push_back(to_double(where, key, v));
  } else if (key == "method") {
    cfg.methods.push_back(value);
  } else if (key == "model-params") {
    merge_model_params(cfg, value, where);
  } else if (key == "tol") {
    cfg.tol = to_double(where, key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "threads") {
    cfg.threads = to_int(where, key, value);
  } else {
    field_error(where, key, "unknown setting");
  }
}

void load_config(SweepConfig& cfg, std::istream& in, const std::string& source) {
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const std::string where = source + ":" + std::to_string(number);
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    apply_setting(cfg, key, value, where);
  }
}

void load_config_file(SweepConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  load_config(cfg, in, path);
}

}  // namespace tlm::cli
