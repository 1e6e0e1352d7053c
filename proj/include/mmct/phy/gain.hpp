// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// SNR gains read off BLER curves. A crossing is interpolated linearly in dB
// between the two grid points that bracket the target, on log10(BLER) when
// both values are positive and on BLER otherwise. Targets the grid does not
// bracket are reported as not reached; nothing is extrapolated.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmct/phy/link.hpp"

namespace mmct::phy {

struct Crossing {
  std::optional<double> snr_db;
  std::string reason;  // why snr_db is empty

  bool reached() const { return snr_db.has_value(); }
};

// First downward crossing of target. Grids must be ascending.
Crossing crossing_snr(std::span<const double> snr_db, std::span<const double> bler, double target);

struct GainReport {
  double target_h = 1e-3;
  double target_v = 1e-1;
  Crossing joint_min;     // NrJoint at min(target_h, target_v)
  Crossing joint_h;       // NrJoint haptic at target_h
  Crossing mmct_h;        // MmctHaptic at target_h
  Crossing mmct_v;        // MmctVideo at target_v
  std::optional<double> gain_eff;  // joint_min - max(mmct_h, mmct_v)
  std::optional<double> gain_h;    // joint_h - mmct_h
  std::vector<std::string> warnings;
};

// Needs NrJoint, MmctHaptic and MmctVideo in results; missing curves yield
// warnings.
GainReport gain_report(const std::map<LinkScheme, LinkResult>& results, double target_h = 1e-3,
                       double target_v = 1e-1);

}  // namespace mmct::phy
