// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#pragma once

#include <span>

namespace mmct::phy {

struct McsEntry {
  int index = 0;
  int modulation_order = 2;  // bits per symbol
  double code_rate = 0.5;

  double spectral_efficiency() const { return modulation_order * code_rate; }

  bool operator==(const McsEntry&) const = default;
};

// Eight entries from QPSK r=1/3 up to 256QAM r=885/1024. Index labels and
// the rates of entries 4..25 follow the 256QAM PDSCH MCS table, so entry 25
// gives 6.91 bits/s/Hz per layer and entry 17 (64QAM, 772/1024) is the
// lower-MCS haptic fallback.
std::span<const McsEntry> mcs_table();

// Throws ConfigError for an index not in the table.
const McsEntry& mcs_by_index(int index);

}  // namespace mmct::phy
