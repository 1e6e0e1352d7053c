// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Subcommand execution and output. Every curve goes to its own CSV with the
// header snr_db_normalized,value,scheme,method; a <command>_summary.json
// next to them records thresholds or gains, warnings, the seed, the config
// hash and the module versions.
//
// Exit status: 0 on success, 2 for a command line or config that fails
// validation (nothing is computed), 1 for a failure during the run.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmct/cli/config.hpp"

namespace mmct::cli {

struct CsvRow {
  double snr_db = 0.0;
  double value = 0.0;
};

std::string format_csv(const std::vector<CsvRow>& rows, std::string_view scheme, std::string_view method);

struct RunOutput {
  std::vector<std::string> files;  // CSV paths, in write order
  std::string summary_path;
  std::vector<std::string> warnings;
};

// Validates, then runs. Throws ConfigError before any computation if
// validation fails.
RunOutput run(const ExperimentConfig& config, std::ostream& log);

// Full command line entry point; returns the process exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mmct::cli
