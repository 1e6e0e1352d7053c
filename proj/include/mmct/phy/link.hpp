// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Monte-Carlo link simulation of a haptic stream and a video stream sent
// over an SVD-precoded, frequency-selective MIMO downlink.
//
// Every trial draws one channel per RB, shared by all schemes and all SNR
// points; every (SNR point, trial) pair draws one noise field per RE and
// receive antenna, shared by all schemes. Payload bits depend only on the
// trial. Results therefore do not depend on which schemes are run together,
// on the thread count or on the order of the SNR grid.
//
// Four physical transmissions cover the six schemes:
//   joint    one codeword carrying haptic + video over every RB and layer
//   split    haptic on the first ceil(f B) RBs (all layers), video on the rest
//   low-mcs  the split haptic part at a lower MCS, carrying fewer bits
//   mmct     layer mapping + SNR-ordered RB permutation, one codeword each

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmct/frame_mapper.hpp"
#include "mmct/phy/mcs.hpp"

namespace mmct::phy {

enum class LinkScheme { NrHapticAlone, NrVideoAlone, NrJoint, NrHapticLowMcs, MmctHaptic, MmctVideo };

inline constexpr std::array<LinkScheme, 6> kAllSchemes = {
    LinkScheme::NrHapticAlone, LinkScheme::NrVideoAlone, LinkScheme::NrJoint,
    LinkScheme::NrHapticLowMcs, LinkScheme::MmctHaptic, LinkScheme::MmctVideo};

std::string_view to_string(LinkScheme s);
LinkScheme link_scheme_from_string(std::string_view name);

// True for the schemes whose curve is read from the haptic stream.
bool is_haptic_scheme(LinkScheme s);

struct LinkConfig {
  frame::MapperConfig mapper{2, 1, 20, 4, 12, 1};
  int mcs_h = 25;
  int mcs_v = 25;
  int mcs_low = 17;          // NrHapticLowMcs
  double haptic_fraction = 0.1;
  int n_t = 32;
  int n_r = 2;
  double theta = 1.5707963267948966;  // receive correlation angle
  std::vector<double> snr_grid_db;    // normalized SNR 10 log10(n_t snr)
  int trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  // Throws ConfigError with the offending field named.
  void validate() const;
};

struct LinkScenario {
  LinkScheme scheme = LinkScheme::MmctHaptic;
  LinkConfig config;
};

struct LinkPoint {
  double snr_db = 0.0;
  double bler_h = 0.0;
  double bler_v = 0.0;
  double ber_h = 0.0;
  double ber_v = 0.0;
  std::int64_t blocks_counted = 0;  // trials at this point
};

struct LinkResult {
  LinkScheme scheme = LinkScheme::MmctHaptic;
  std::vector<LinkPoint> points;

  // bler_h for haptic schemes, bler_v otherwise.
  std::vector<double> bler() const;
};

// Payload sizes shared by every scheme (bits, CRC excluded), plus the
// low-MCS haptic payload.
struct Payload {
  std::size_t haptic = 0;
  std::size_t video = 0;
  std::size_t haptic_low_mcs = 0;
};

// Budget A = floor(r_v * B L n_s n_o Q_v) bits; haptic gets round(f A) and
// video the rest, each minus its CRC. Throws ConfigError (required vs
// available REs) when a stream does not fit its allocation.
Payload plan_payload(const LinkConfig& config);

// Haptic RBs of the split-bandwidth baselines: ceil(f B).
int split_haptic_rbs(const LinkConfig& config);

std::map<LinkScheme, LinkResult> run_schemes(const LinkConfig& config, std::span<const LinkScheme> schemes);

LinkResult run_scenario(const LinkScenario& scenario);

}  // namespace mmct::phy
