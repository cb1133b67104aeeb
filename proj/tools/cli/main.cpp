#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "tlmagnus/errors.hpp"

namespace {

using tlm::cli::Model;
using tlm::cli::SweepConfig;

struct Flags {
  std::string config;
  std::string model;
  std::vector<std::string> model_params;
  std::string axis;
  std::string min, max, count, values, tol, threads;
  bool log = false;
  std::vector<std::string> methods;
  std::string out;
};

void add_flags(CLI::App* cmd, Flags& f, bool sweep) {
  cmd->add_option("--config", f.config, "key = value settings file; flags override it");
  cmd->add_option("--model-params", f.model_params, "comma-separated key=value model parameters")->take_all();
  cmd->add_option("--tol", f.tol, "oracle tolerance (rabi, report) or quadrature tolerance (lz)");
  cmd->add_option("--out", f.out, "output file; a JSON summary is written to <out>.json");
  if (!sweep) return;
  cmd->add_option("--axis", f.axis, "swept parameter: gamma (lz), delta or g (rabi)");
  cmd->add_option("--min", f.min, "first grid value");
  cmd->add_option("--max", f.max, "last grid value");
  cmd->add_option("--count", f.count, "number of grid points (>= 2)");
  cmd->add_flag("--log", f.log, "logarithmic grid spacing");
  cmd->add_option("--values", f.values, "explicit comma-separated grid instead of min/max/count");
  cmd->add_option("--method", f.methods, "method descriptor, repeatable (e.g. magnus:adiabatic:2:half)");
  cmd->add_option("--threads", f.threads, "worker threads (0: all cores)");
}

SweepConfig build_config(CLI::App* cmd, const Flags& f, Model verb_model) {
  SweepConfig cfg;
  cfg.model = verb_model;
  if (!f.config.empty()) {
    tlm::cli::load_config_file(cfg, f.config);
    if (cmd->get_name() != "report" && cfg.model != verb_model) {
      throw tlm::ConfigError(f.config + ": field 'model': does not match the '" + cmd->get_name() + "' command");
    }
  }
  auto set = [&](const char* flag, const char* key, const std::string& value) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) tlm::cli::apply_setting(cfg, key, value, std::string("flag ") + flag);
  };
  if (cmd->get_name() == "report") set("--model", "model", f.model);
  set("--axis", "axis", f.axis);
  set("--min", "min", f.min);
  set("--max", "max", f.max);
  set("--count", "count", f.count);
  set("--values", "values", f.values);
  set("--tol", "tol", f.tol);
  set("--out", "out", f.out);
  set("--threads", "threads", f.threads);
  if (const CLI::Option* opt = cmd->get_option_no_throw("--log"); opt != nullptr && opt->count() > 0) cfg.log = f.log;
  if (const CLI::Option* opt = cmd->get_option_no_throw("--method"); opt != nullptr && opt->count() > 0) {
    cfg.methods = f.methods;
  }
  for (const auto& p : f.model_params) tlm::cli::merge_model_params(cfg, p, "flag --model-params");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnus-expansion propagators, quasienergies and Landau-Zener sweeps for driven two-level systems"};
  app.require_subcommand(1);
  Flags lz_flags, rabi_flags, report_flags;
  CLI::App* lz = app.add_subcommand("lz", "Landau-Zener transition probability and Stokes phase versus gamma");
  add_flags(lz, lz_flags, true);
  CLI::App* rabi = app.add_subcommand("rabi", "semiclassical Rabi quasienergies along delta or g");
  add_flags(rabi, rabi_flags, true);
  CLI::App* report = app.add_subcommand("report", "PASS/FAIL symmetry, convergence and reference checks at one point");
  add_flags(report, report_flags, false);
  report->add_option("--model", report_flags.model, "rabi (default) or lz");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (lz->parsed()) return tlm::cli::run_lz(build_config(lz, lz_flags, Model::Lz), std::cout);
    if (rabi->parsed()) return tlm::cli::run_rabi(build_config(rabi, rabi_flags, Model::Rabi), std::cout);
    return tlm::cli::run_report(build_config(report, report_flags, Model::Rabi), std::cout);
  } catch (const tlm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tlm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
