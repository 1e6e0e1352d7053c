// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/phy/mcs.hpp"

#include <array>

#include <fmt/format.h>

#include "mmct/error.hpp"

namespace mmct::phy {

namespace {

constexpr std::array<McsEntry, 8> kTable{{
    {1, 2, 1.0 / 3.0},
    {4, 2, 602.0 / 1024.0},
    {8, 4, 553.0 / 1024.0},
    {12, 6, 517.0 / 1024.0},
    {17, 6, 772.0 / 1024.0},
    {21, 8, 711.0 / 1024.0},
    {23, 8, 797.0 / 1024.0},
    {25, 8, 885.0 / 1024.0},
}};

}  // namespace

std::span<const McsEntry> mcs_table() { return kTable; }

const McsEntry& mcs_by_index(int index) {
  for (const auto& e : kTable)
    if (e.index == index) return e;
  throw ConfigError(fmt::format("MCS index {} is not in the table (1, 4, 8, 12, 17, 21, 23, 25)", index));
}

}  // namespace mmct::phy
