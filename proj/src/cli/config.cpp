// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/cli/config.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mmct/error.hpp"
#include "mmct/frame_mapper.hpp"

namespace mmct::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::OutageAnalytic: return "outage-analytic";
    case Command::OutageNumeric: return "outage-numeric";
    case Command::Linksim: return "linksim";
    case Command::EigCheck: return "eig-check";
  }
  return "?";
}

Command command_from_string(std::string_view name) {
  for (auto c : {Command::OutageAnalytic, Command::OutageNumeric, Command::Linksim, Command::EigCheck})
    if (to_string(c) == name) return c;
  throw ConfigError(fmt::format("unknown command '{}'", name));
}

std::vector<double> SnrGrid::values() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
    throw ConfigError("snr_grid: start, stop and step must be finite");
  if (!(step > 0.0)) throw ConfigError(fmt::format("snr_grid: step must be > 0 (got {})", step));
  if (start > stop) throw ConfigError("snr_grid must be non-empty");
  // Index-based so the grid does not accumulate rounding drift.
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (n > 100000) throw ConfigError(fmt::format("snr_grid: {} points is too many", n));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

void ExperimentConfig::validate() const {
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (out_dir.empty()) throw ConfigError("out must not be empty");
  switch (command) {
    case Command::OutageAnalytic:
    case Command::OutageNumeric:
      try {
        targets.validate();
      } catch (const Error& e) {
        throw ConfigError(fmt::format("rate targets: {}", e.what()));
      }
      if (grid_size < 1000) throw ConfigError(fmt::format("M must be >= 1000 (got {})", grid_size));
      outage_grid.values();
      break;
    case Command::Linksim: {
      auto l = link;
      l.snr_grid_db = link_grid.values();
      l.validate();
      phy::plan_payload(l);
      if (!(target_h > 0.0 && target_h < 1.0)) throw ConfigError("target_h must be in (0, 1)");
      if (!(target_v > 0.0 && target_v < 1.0)) throw ConfigError("target_v must be in (0, 1)");
      break;
    }
    case Command::EigCheck:
      if (eig_n_t < 1) throw ConfigError(fmt::format("eig_n_t must be >= 1 (got {})", eig_n_t));
      if (eig_trials < 10000) throw ConfigError(fmt::format("trials must be >= 10000 for eig-check (got {})", eig_trials));
      if (!(eig_power > 0.0)) throw ConfigError("power must be > 0");
      for (double t : eig_thetas)
        if (!(t > -std::numbers::pi / 2 && t <= std::numbers::pi / 2))
          throw ConfigError(fmt::format("theta must be in (-pi/2, pi/2] (got {})", t));
      break;
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::canonical() const {
  std::vector<std::pair<std::string, std::string>> kv;
  auto put = [&kv](std::string k, auto v) { kv.emplace_back(std::move(k), fmt::format("{}", v)); };
  put("command", to_string(command));
  put("seed", seed);
  switch (command) {
    case Command::OutageAnalytic:
    case Command::OutageNumeric:
      put("rate_nr", targets.nr);
      put("rate_haptic", targets.mmct_haptic);
      put("rate_video", targets.mmct_video);
      put("rbs", targets.rbs);
      put("shared_rbs", targets.shared_rbs);
      put("layers", targets.layers);
      put("n_t", targets.n_t);
      put("M", grid_size);
      put("snr_start", outage_grid.start);
      put("snr_stop", outage_grid.stop);
      put("snr_step", outage_grid.step);
      break;
    case Command::Linksim:
      put("layers", link.mapper.layers);
      put("haptic_layers", link.mapper.haptic_layers);
      put("rbs", link.mapper.rbs);
      put("shared_rbs", link.mapper.shared_rbs);
      put("subcarriers", link.mapper.subcarriers);
      put("symbols", link.mapper.symbols);
      put("mcs_h", link.mcs_h);
      put("mcs_v", link.mcs_v);
      put("mcs_low", link.mcs_low);
      put("haptic_fraction", link.haptic_fraction);
      put("n_t", link.n_t);
      put("n_r", link.n_r);
      put("theta", link.theta);
      put("trials", link.trials);
      put("snr_start", link_grid.start);
      put("snr_stop", link_grid.stop);
      put("snr_step", link_grid.step);
      put("target_h", target_h);
      put("target_v", target_v);
      break;
    case Command::EigCheck:
      put("thetas", fmt::format("{}", fmt::join(eig_thetas, ",")));
      put("n_t", eig_n_t);
      put("trials", eig_trials);
      put("power", eig_power);
      break;
  }
  return kv;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t ExperimentConfig::hash() const {
  std::string text;
  for (const auto& [k, v] : canonical()) text += k + "=" + v + "\n";
  return fnv1a64(text);
}

}  // namespace mmct::cli
