#pragma once

#include "adsmass/config.hpp"
#include "adsmass/report.hpp"

// Executes the selected verification pipelines for a run configuration and
// assembles the report. Individual pipeline failures are recorded in the
// report; the run itself only throws on configuration-level problems.

namespace adsmass {

// Exit-code contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitConfigError = 3;
inline constexpr int kExitInternalError = 4;

struct RunOutcome {
  Json report;
  int exit_code = kExitPass;
  std::string csv;  // per-radius charge integrals; empty when mass not run
};

RunOutcome run(const RunConfig& config);

}  // namespace adsmass
