#pragma once

#include <iosfwd>

#include "config.hpp"

namespace tlm::cli {

// Each command writes its table or report to `out` (and a JSON sidecar next to
// cfg.out when set) and returns the process exit code.
int run_lz(const SweepConfig& cfg, std::ostream& out);
int run_rabi(const SweepConfig& cfg, std::ostream& out);
int run_report(const SweepConfig& cfg, std::ostream& out);

}  // namespace tlm::cli
