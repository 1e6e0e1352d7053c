// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/phy/gain.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mmct/error.hpp"

namespace mmct::phy {

Crossing crossing_snr(std::span<const double> snr_db, std::span<const double> bler, double target) {
  if (snr_db.size() != bler.size()) throw ValidationError("SNR grid and BLER curve differ in length");
  if (!(target > 0.0 && target < 1.0)) throw ValidationError(fmt::format("BLER target must be in (0, 1) (got {})", target));
  Crossing c;
  if (bler.empty()) {
    c.reason = "empty curve";
    return c;
  }
  if (bler.front() <= target) {
    c.reason = fmt::format("already below {:g} at the first grid point", target);
    return c;
  }
  for (std::size_t i = 1; i < bler.size(); ++i) {
    if (bler[i] > target) continue;
    const double x0 = snr_db[i - 1], x1 = snr_db[i];
    double t;
    if (bler[i] > 0.0 && bler[i - 1] > 0.0) {
      const double y0 = std::log10(bler[i - 1]), y1 = std::log10(bler[i]);
      t = (y0 - std::log10(target)) / (y0 - y1);
    } else {
      t = (bler[i - 1] - target) / (bler[i - 1] - bler[i]);
    }
    c.snr_db = x0 + std::clamp(t, 0.0, 1.0) * (x1 - x0);
    return c;
  }
  c.reason = fmt::format("not reached: BLER stays above {:g} up to {:g} dB", target, snr_db.back());
  return c;
}

namespace {

Crossing curve_crossing(const std::map<LinkScheme, LinkResult>& results, LinkScheme s, bool haptic, double target,
                        std::vector<std::string>& warnings) {
  const auto it = results.find(s);
  if (it == results.end()) {
    warnings.push_back(fmt::format("{}: curve missing", to_string(s)));
    return Crossing{std::nullopt, "curve missing"};
  }
  std::vector<double> x, y;
  for (const auto& p : it->second.points) {
    x.push_back(p.snr_db);
    y.push_back(haptic ? p.bler_h : p.bler_v);
  }
  Crossing c = crossing_snr(x, y, target);
  if (!c.reached()) warnings.push_back(fmt::format("{} @ {:g}: {}", to_string(s), target, c.reason));
  return c;
}

}  // namespace

GainReport gain_report(const std::map<LinkScheme, LinkResult>& results, double target_h, double target_v) {
  GainReport g;
  g.target_h = target_h;
  g.target_v = target_v;
  g.joint_min = curve_crossing(results, LinkScheme::NrJoint, true, std::min(target_h, target_v), g.warnings);
  g.joint_h = curve_crossing(results, LinkScheme::NrJoint, true, target_h, g.warnings);
  g.mmct_h = curve_crossing(results, LinkScheme::MmctHaptic, true, target_h, g.warnings);
  g.mmct_v = curve_crossing(results, LinkScheme::MmctVideo, false, target_v, g.warnings);
  if (g.joint_min.reached() && g.mmct_h.reached() && g.mmct_v.reached())
    g.gain_eff = *g.joint_min.snr_db - std::max(*g.mmct_h.snr_db, *g.mmct_v.snr_db);
  else
    g.warnings.push_back("gain_eff: not reached");
  if (g.joint_h.reached() && g.mmct_h.reached())
    g.gain_h = *g.joint_h.snr_db - *g.mmct_h.snr_db;
  else
    g.warnings.push_back("gain_h: not reached");
  return g;
}

}  // namespace mmct::phy
