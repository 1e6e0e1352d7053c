// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mmct/error.hpp"
#include "mmct/mimo_channel.hpp"
#include "mmct/phy/gain.hpp"
#include "mmct/version.hpp"

namespace mmct::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(fmt::format("cannot open {} for writing", path.string()));
  f << text;
  if (!f) throw Error(fmt::format("write to {} failed", path.string()));
}

ordered_json json_or_null(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json crossing_json(const phy::Crossing& c) {
  ordered_json j;
  j["snr_db"] = json_or_null(c.snr_db);
  if (!c.reached()) j["reason"] = c.reason;
  return j;
}

ordered_json base_summary(const ExperimentConfig& cfg) {
  ordered_json j;
  j["command"] = std::string(to_string(cfg.command));
  j["seed"] = cfg.seed;
  j["config_hash"] = fmt::format("{:016x}", cfg.hash());
  ordered_json c = ordered_json::object();
  for (const auto& [k, v] : cfg.canonical()) c[k] = v;
  j["config"] = c;
  ordered_json mods = ordered_json::object();
  mods["mmct"] = std::string(kVersion);
  for (const auto& [name, ver] : kModuleVersions) mods[std::string(name)] = std::string(ver);
  j["module_versions"] = mods;
  return j;
}

class Writer {
 public:
  Writer(const ExperimentConfig& cfg, RunOutput& out) : dir_(cfg.out_dir), out_(out) { fs::create_directories(dir_); }

  void curve(const std::string& stem, const std::vector<CsvRow>& rows, std::string_view scheme, std::string_view method) {
    const fs::path p = dir_ / (stem + ".csv");
    write_file(p, format_csv(rows, scheme, method));
    out_.files.push_back(p.string());
  }

  void summary(const ExperimentConfig& cfg, ordered_json j) {
    const fs::path p = dir_ / (std::string(to_string(cfg.command)) + "_summary.json");
    ordered_json files = ordered_json::array();
    for (const auto& f : out_.files) files.push_back(fs::path(f).filename().string());
    j["files"] = files;
    j["warnings"] = out_.warnings;
    write_file(p, j.dump(2) + "\n");
    out_.summary_path = p.string();
  }

 private:
  fs::path dir_;
  RunOutput& out_;
};

std::vector<CsvRow> rows_of(const outage::OutageCurve& c) {
  std::vector<CsvRow> rows;
  rows.reserve(c.points.size());
  for (const auto& p : c.points) rows.push_back({p.normalized_snr_db, p.p_out});
  return rows;
}

std::string curve_stem(const outage::OutageCurve& c) {
  return fmt::format("outage_{}_{}", lower(outage::to_string(c.scheme)), outage::to_string(c.method));
}

ordered_json thresholds_json(const ExperimentConfig& cfg) {
  const auto& t = cfg.targets;
  const auto nr = outage::nr_band(t);
  const auto mh = outage::mmct_h_band(t);
  ordered_json j;
  j["nr"]["zero_outage_db_closed"] = 10.0 * std::log10(nr.zero_outage_above);
  j["nr"]["full_outage_db_closed"] = 10.0 * std::log10(nr.full_outage_below);
  j["nr"]["zero_outage_db_numeric"] = outage::zero_outage_threshold_db(outage::Scheme::Nr, t, cfg.grid_size, -20.0, 80.0);
  j["mmct_h"]["zero_outage_db_closed"] = 10.0 * std::log10(mh.zero_outage_above);
  j["mmct_h"]["full_outage_db_closed"] = 10.0 * std::log10(mh.full_outage_below);
  j["mmct_h"]["zero_outage_db_numeric"] =
      outage::zero_outage_threshold_db(outage::Scheme::MmctHaptic, t, cfg.grid_size, -20.0, 80.0);
  j["mmct_v"]["zero_outage_db_numeric"] =
      outage::zero_outage_threshold_db(outage::Scheme::MmctVideo, t, cfg.grid_size, -20.0, 80.0);
  return j;
}

void run_outage_analytic(const ExperimentConfig& cfg, Writer& w, RunOutput& out, ordered_json& j) {
  const auto grid = cfg.outage_grid.values();
  const auto curves = outage::comparison_curves(cfg.targets, grid, cfg.grid_size);
  ordered_json cj = ordered_json::array();
  for (const auto& c : curves) {
    w.curve(curve_stem(c), rows_of(c), outage::to_string(c.scheme), outage::to_string(c.method));
    cj.push_back({{"scheme", outage::to_string(c.scheme)}, {"method", outage::to_string(c.method)},
                  {"clamp_events", c.clamp_events}});
    if (c.clamp_events > 0)
      out.warnings.push_back(fmt::format("{} {}: {} clamped closed-form arguments", outage::to_string(c.scheme),
                                         outage::to_string(c.method), c.clamp_events));
  }
  j["curves"] = cj;
  j["thresholds"] = thresholds_json(cfg);
}

void run_outage_numeric(const ExperimentConfig& cfg, Writer& w, RunOutput& out, ordered_json& j) {
  const auto grid = cfg.outage_grid.values();
  const auto curves = outage::all_curves(cfg.targets, grid, cfg.grid_size);
  const outage::OutageCurve* numeric[3] = {};
  const outage::OutageCurve* closed[3] = {};
  for (const auto& c : curves) {
    const auto idx = static_cast<std::size_t>(c.scheme);
    if (c.method == outage::Method::Numeric) {
      numeric[idx] = &c;
      w.curve(curve_stem(c), rows_of(c), outage::to_string(c.scheme), outage::to_string(c.method));
    } else {
      closed[idx] = &c;
    }
  }
  ordered_json agree = ordered_json::object();
  for (std::size_t s = 0; s < 3; ++s) {
    if (!numeric[s] || !closed[s]) continue;
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      gap = std::max(gap, std::abs(numeric[s]->points[i].p_out - closed[s]->points[i].p_out));
    const double bound = 2.0 / static_cast<double>(cfg.grid_size);
    agree[outage::to_string(numeric[s]->scheme)] = {{"max_abs_gap", gap}, {"bound", bound}, {"within_bound", gap <= bound}};
    if (gap > bound)
      out.warnings.push_back(fmt::format("{}: numeric/closed gap {:.3g} exceeds 2/M", outage::to_string(numeric[s]->scheme), gap));
  }
  j["agreement"] = agree;
  j["thresholds"] = thresholds_json(cfg);
}

void run_linksim(const ExperimentConfig& cfg, Writer& w, RunOutput& out, ordered_json& j, std::ostream& log) {
  phy::LinkConfig lc = cfg.link;
  lc.snr_grid_db = cfg.link_grid.values();
  lc.seed = cfg.seed;
  lc.threads = cfg.threads;
  const auto payload = phy::plan_payload(lc);
  log << fmt::format("linksim: {} trials x {} SNR points, payload haptic {} / video {} bits\n", lc.trials,
                     lc.snr_grid_db.size(), payload.haptic, payload.video);
  const auto results = phy::run_schemes(lc, phy::kAllSchemes);
  for (const auto& [scheme, r] : results) {
    const bool h = phy::is_haptic_scheme(scheme);
    std::vector<CsvRow> bler, ber;
    for (const auto& p : r.points) {
      bler.push_back({p.snr_db, h ? p.bler_h : p.bler_v});
      ber.push_back({p.snr_db, h ? p.ber_h : p.ber_v});
    }
    const auto name = phy::to_string(scheme);
    w.curve(fmt::format("linksim_{}_bler", name), bler, name, "bler");
    w.curve(fmt::format("linksim_{}_ber", name), ber, name, "ber");
  }
  const auto g = phy::gain_report(results, cfg.target_h, cfg.target_v);
  out.warnings.insert(out.warnings.end(), g.warnings.begin(), g.warnings.end());
  j["payload_bits"] = {{"haptic", payload.haptic}, {"video", payload.video}, {"haptic_low_mcs", payload.haptic_low_mcs}};
  j["gains"] = {{"target_h", g.target_h},
                {"target_v", g.target_v},
                {"gain_eff_db", json_or_null(g.gain_eff)},
                {"gain_h_db", json_or_null(g.gain_h)},
                {"nr_joint_min_target", crossing_json(g.joint_min)},
                {"nr_joint_haptic", crossing_json(g.joint_h)},
                {"mmct_haptic", crossing_json(g.mmct_h)},
                {"mmct_video", crossing_json(g.mmct_v)}};
}

void run_eig_check(const ExperimentConfig& cfg, RunOutput& out, ordered_json& j) {
  std::vector<double> thetas = cfg.eig_thetas;
  if (thetas.empty()) thetas = {0.0, std::numbers::pi / 3, std::numbers::pi / 2};
  ordered_json reports = ordered_json::array();
  for (double theta : thetas) {
    const auto corr = channel::CorrelationModel::from_angle(theta, cfg.eig_n_t);
    const auto rep =
        channel::eigenvalue_covariance_check(corr, cfg.eig_n_t, cfg.eig_trials, cfg.seed, cfg.eig_power, cfg.threads);
    ordered_json r;
    r["theta"] = theta;
    r["asymptotic_regime"] = rep.asymptotic_regime;
    ordered_json stats = ordered_json::array();
    for (const auto& s : rep.stats) {
      stats.push_back({{"rx_eigenvalue", s.rx_eigenvalue},
                       {"mean", s.mean},
                       {"predicted_mean", s.predicted_mean},
                       {"empirical_variance", s.empirical_variance},
                       {"predicted_variance", s.predicted_variance},
                       {"ratio", std::isfinite(s.ratio) ? ordered_json(s.ratio) : ordered_json(nullptr)}});
    }
    r["stats"] = stats;
    r["notes"] = rep.notes;
    if (!rep.asymptotic_regime) out.warnings.push_back(fmt::format("theta {}: asymptotics not expected to hold", theta));
    reports.push_back(r);
  }
  j["reports"] = reports;
}

}  // namespace

std::string format_csv(const std::vector<CsvRow>& rows, std::string_view scheme, std::string_view method) {
  std::string s = "snr_db_normalized,value,scheme,method\n";
  for (const auto& r : rows) s += fmt::format("{:.6f},{:.12g},{},{}\n", r.snr_db, r.value, scheme, method);
  return s;
}

RunOutput run(const ExperimentConfig& config, std::ostream& log) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  RunOutput out;
  Writer w(config, out);
  ordered_json j = base_summary(config);
  switch (config.command) {
    case Command::OutageAnalytic: run_outage_analytic(config, w, out, j); break;
    case Command::OutageNumeric: run_outage_numeric(config, w, out, j); break;
    case Command::Linksim: run_linksim(config, w, out, j, log); break;
    case Command::EigCheck: run_eig_check(config, out, j); break;
  }
  j["runtime_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  w.summary(config, std::move(j));
  return out;
}

namespace {

constexpr const char* kFooter =
    "SNR values are normalized: 10 log10(n_t * snr) dB, where snr is the per-antenna SNR.\n"
    "A --config file holds one `key = value` per line (keys are long option names,\n"
    "'-' or '_'), '#' starts a comment; command-line flags override it.\n"
    "MMCT_OUT_DIR sets the default output directory.";

// Reads a flat key = value file into --key=value tokens.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(fmt::format("config: cannot read '{}'", path));
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("config {}:{}: expected key = value", path, lineno));
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r\"");
      const auto b = s.find_last_not_of(" \t\r\"");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("config {}:{}: empty key", path, lineno));
    std::replace(key.begin(), key.end(), '_', '-');
    tokens.push_back(fmt::format("--{}={}", key, value));
  }
  return tokens;
}

void add_common(CLI::App* sub, ExperimentConfig& cfg, std::string& config_path) {
  sub->add_option("--config", config_path, "flat key = value config file");
  sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
}

void add_rate_targets(CLI::App* sub, ExperimentConfig& cfg, bool& fair) {
  auto& t = cfg.targets;
  sub->add_option("--rate-nr", t.nr, "NR rate target, bits/s/Hz")->capture_default_str();
  sub->add_option("--rate-haptic", t.mmct_haptic, "MMCT haptic rate target")->capture_default_str();
  sub->add_option("--rate-video", t.mmct_video, "MMCT video rate target")->capture_default_str();
  sub->add_flag("--fair", fair, "set rate-haptic = (rate-nr / layers) * shared-rbs / rbs");
  sub->add_option("--rbs", t.rbs, "RBs per layer")->capture_default_str();
  sub->add_option("--shared-rbs", t.shared_rbs, "haptic RBs on the strongest layer")->capture_default_str();
  sub->add_option("--layers", t.layers, "spatial layers")->capture_default_str();
  sub->add_option("--n-t", t.n_t, "transmit antennas")->capture_default_str();
  sub->add_option("--M", cfg.grid_size, "angle grid size")->capture_default_str();
  sub->add_option("--snr-start", cfg.outage_grid.start, "grid start, normalized dB")->capture_default_str();
  sub->add_option("--snr-stop", cfg.outage_grid.stop, "grid stop (inclusive), normalized dB")->capture_default_str();
  sub->add_option("--snr-step", cfg.outage_grid.step, "grid step, dB")->capture_default_str();
}

void add_link(CLI::App* sub, ExperimentConfig& cfg) {
  auto& l = cfg.link;
  auto& m = l.mapper;
  sub->add_option("--trials", l.trials, "trials per SNR point")->capture_default_str();
  sub->add_option("--layers", m.layers, "spatial layers L")->capture_default_str();
  sub->add_option("--haptic-layers", m.haptic_layers, "haptic layers L_h")->capture_default_str();
  sub->add_option("--rbs", m.rbs, "RBs per layer B")->capture_default_str();
  sub->add_option("--shared-rbs", m.shared_rbs, "haptic RBs on layer L_h")->capture_default_str();
  sub->add_option("--subcarriers", m.subcarriers, "subcarriers per RB")->capture_default_str();
  sub->add_option("--symbols", m.symbols, "data OFDM symbols per RB")->capture_default_str();
  sub->add_option("--mcs-h", l.mcs_h, "haptic MCS index")->capture_default_str();
  sub->add_option("--mcs-v", l.mcs_v, "video MCS index")->capture_default_str();
  sub->add_option("--mcs-low", l.mcs_low, "low haptic MCS index")->capture_default_str();
  sub->add_option("--haptic-fraction", l.haptic_fraction, "haptic share of the payload")->capture_default_str();
  sub->add_option("--n-t", l.n_t, "transmit antennas")->capture_default_str();
  sub->add_option("--n-r", l.n_r, "receive antennas")->capture_default_str();
  sub->add_option("--theta", l.theta, "receive correlation angle, rad")->capture_default_str();
  sub->add_option("--snr-start", cfg.link_grid.start, "grid start, normalized dB")->capture_default_str();
  sub->add_option("--snr-stop", cfg.link_grid.stop, "grid stop (inclusive), normalized dB")->capture_default_str();
  sub->add_option("--snr-step", cfg.link_grid.step, "grid step, dB")->capture_default_str();
  sub->add_option("--target-h", cfg.target_h, "haptic BLER target")->capture_default_str();
  sub->add_option("--target-v", cfg.target_v, "video BLER target")->capture_default_str();
}

void add_eig(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--theta", cfg.eig_thetas, "angles, rad (repeatable; default 0, pi/3, pi/2)")->delimiter(',');
  sub->add_option("--n-t", cfg.eig_n_t, "transmit antennas")->capture_default_str();
  sub->add_option("--trials", cfg.eig_trials, "Monte-Carlo trials")->capture_default_str();
  sub->add_option("--power", cfg.eig_power, "uniform input power")->capture_default_str();
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  if (const char* env = std::getenv("MMCT_OUT_DIR"); env != nullptr && *env != '\0') cfg.out_dir = env;

  CLI::App app{"Haptic/video multiplexing experiments: outage analysis, link simulation, eigenvalue checks", "mmct"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string config_path;
  bool fair = false;
  auto* oa = app.add_subcommand("outage-analytic", "outage curves: NR, MMCT-h closed + numeric, MMCT-v");
  auto* on = app.add_subcommand("outage-numeric", "numeric outage curves with closed-form agreement");
  auto* ls = app.add_subcommand("linksim", "Monte-Carlo BLER/BER of the six link schemes and SNR gains");
  auto* ec = app.add_subcommand("eig-check", "large-array eigenvalue variance check");
  for (auto* s : {oa, on, ls, ec}) add_common(s, cfg, config_path);
  add_rate_targets(oa, cfg, fair);
  add_rate_targets(on, cfg, fair);
  add_link(ls, cfg);
  add_eig(ec, cfg);

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  try {
    // Config file values go right after the subcommand so later flags win.
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (!path.empty()) {
      const auto tokens = config_tokens(path);
      auto cmd = std::find_if(args.begin(), args.end(), [](const std::string& a) { return !a.empty() && a[0] != '-'; });
      if (cmd != args.end()) args.insert(cmd + 1, tokens.begin(), tokens.end());
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (oa->parsed()) cfg.command = Command::OutageAnalytic;
  if (on->parsed()) cfg.command = Command::OutageNumeric;
  if (ls->parsed()) cfg.command = Command::Linksim;
  if (ec->parsed()) cfg.command = Command::EigCheck;
  if (fair) cfg.targets = outage::RateTargets::fair(cfg.targets.nr, cfg.targets.rbs, cfg.targets.shared_rbs,
                                                    cfg.targets.layers, cfg.targets.n_t);

  try {
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto result = run(cfg, err);
    for (const auto& f : result.files) out << f << "\n";
    out << result.summary_path << "\n";
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace mmct::cli
