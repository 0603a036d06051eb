// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "tubelab/config.hpp"
#include "tubelab/report.hpp"

namespace tubelab {

enum ExitCode : int { kExitOk = 0, kExitCriterion = 1, kExitConfig = 2, kExitNumeric = 3 };

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"symplectic-check", "gaussian-check", "kernel", "scaling",
                                              "rapid-decay",      "weyl",           "husimi", "qsymbol", "all"};
  return names;
}

// Runs one subcommand ("all" runs every configured section) and returns the
// reports in a fixed order.
std::vector<Report> run_subcommand(const std::string& name, const RunConfig& cfg);

int run_cli(int argc, char** argv);

}  // namespace tubelab
