#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tlm::cli {

enum class Model { Lz, Rabi };

std::string to_string(Model m);

// One sweep or report invocation, from flags and/or a key-value file.
struct SweepConfig {
  Model model = Model::Rabi;
  std::string axis;  // gamma (lz), delta or g (rabi); empty picks the model default
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log = false;
  std::vector<double> values;  // explicit grid; overrides min/max/count
  std::vector<std::string> methods;
  std::map<std::string, std::string> params;  // --model-params
  double tol = 0.0;                           // 0 picks the model default
  std::string out;
  int threads = 0;  // 0: hardware concurrency

  std::string effective_axis() const;
  double effective_tol() const;
  // Grid points in input order. Throws ConfigError.
  std::vector<double> grid() const;
  // Throws ConfigError with the offending field.
  void validate_sweep() const;
  void validate_params() const;
  double param(const std::string& key, double fallback) const;
  std::string param(const std::string& key, const std::string& fallback) const;
};

// Sets one field from its textual value; `where` prefixes diagnostics.
void apply_setting(SweepConfig& cfg, const std::string& key, const std::string& value, const std::string& where);
// "delta=1, g=0.5, shape=sin" into cfg.params.
void merge_model_params(SweepConfig& cfg, const std::string& text, const std::string& where);
// "key = value" lines, '#' comments, repeated "method" lines accumulate.
void load_config(SweepConfig& cfg, std::istream& in, const std::string& source);
void load_config_file(SweepConfig& cfg, const std::string& path);

}  // namespace tlm::cli
