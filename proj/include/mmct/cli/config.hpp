// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Experiment configuration shared by every subcommand. Defaults reproduce
// the reference setup; only trial counts are reduced.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmct/capacity_outage.hpp"
#include "mmct/phy/link.hpp"

namespace mmct::cli {

enum class Command { OutageAnalytic, OutageNumeric, Linksim, EigCheck };

std::string_view to_string(Command c);
Command command_from_string(std::string_view name);

// (start, stop, step) in dB, stop inclusive.
struct SnrGrid {
  double start = 0.0;
  double stop = 40.0;
  double step = 0.25;

  // Throws ConfigError("snr_grid must be non-empty") when start > stop.
  std::vector<double> values() const;
};

struct ExperimentConfig {
  Command command = Command::OutageAnalytic;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  unsigned threads = 1;

  // outage-analytic / outage-numeric
  outage::RateTargets targets;
  long grid_size = 100000;  // M
  SnrGrid outage_grid{0.0, 40.0, 0.25};

  // linksim
  phy::LinkConfig link;
  SnrGrid link_grid{20.0, 32.0, 1.0};
  double target_h = 1e-3;
  double target_v = 1e-1;

  // eig-check
  std::vector<double> eig_thetas;  // radians; empty = {0, pi/3, pi/2}
  int eig_n_t = 64;
  int eig_trials = 10000;
  double eig_power = 1.0;

  // Checks every field used by `command` against its module's preconditions.
  void validate() const;

  // Canonical "key=value" listing of every field used by `command`, in a
  // fixed order; fnv1a64 of it is the config hash.
  std::vector<std::pair<std::string, std::string>> canonical() const;
  std::uint64_t hash() const;
};

std::uint64_t fnv1a64(std::string_view data);

}  // namespace mmct::cli
