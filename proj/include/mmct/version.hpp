// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace mmct {

inline constexpr std::string_view kVersion = "0.3.0";

// Bumped whenever a module's numerical output changes.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kModuleVersions = {{
    {"frame_mapper", "1.0"},
    {"mimo_channel", "1.0"},
    {"capacity_outage", "1.0"},
    {"phy_link", "1.1"},
    {"cli_runner", "1.0"},
}};

}  // namespace mmct
