// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/capacity_outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "mmct/error.hpp"
#include "mmct/mimo_channel.hpp"

namespace mmct::outage {

namespace {

constexpr double kPi = std::numbers::pi;

void check_eigenvalues(double lambda1, double lambda2) {
  if (!(lambda2 >= 0.0) || !(lambda1 >= lambda2) || !std::isfinite(lambda1))
    throw ValidationError(fmt::format("eigenvalues must satisfy lambda1 >= lambda2 >= 0 (got {}, {})", lambda1, lambda2));
}

void check_split(int rbs, int shared_rbs) {
  if (rbs < 1 || shared_rbs < 0 || shared_rbs > rbs)
    throw ValidationError(fmt::format("need 0 <= B_1 <= B with B >= 1 (got B={}, B_1={})", rbs, shared_rbs));
}

void check_snr(double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw ValidationError(fmt::format("snr must be finite and > 0 (got {})", snr));
}

// Capacities as a function of c = cos(theta) and x = n_t * snr.
double capacity_from_cos(Scheme s, double c, double x, double haptic_share) {
  switch (s) {
    case Scheme::Nr:
      return std::log2(1.0 + (1.0 + c) * x) + std::log2(1.0 + (1.0 - c) * x);
    case Scheme::MmctHaptic:
      return haptic_share * std::log2(1.0 + (1.0 + c) * x);
    case Scheme::MmctVideo:
      return (1.0 - haptic_share) * std::log2(1.0 + (1.0 + c) * x) + std::log2(1.0 + (1.0 - c) * x);
  }
  throw ValidationError("unknown scheme");
}

class AngleGrid {
 public:
  explicit AngleGrid(long M) : cosines_(static_cast<std::size_t>(M)) {
    if (M < 1000) throw ValidationError(fmt::format("angle grid needs M >= 1000 (got {})", M));
    const double m_count = static_cast<double>(M);
    for (long m = 1; m <= M; ++m)
      cosines_[static_cast<std::size_t>(m - 1)] = std::cos(static_cast<double>(m) * kPi / m_count - kPi / 2.0);
  }

  double outage(Scheme s, const RateTargets& targets, double snr) const {
    check_snr(snr);
    const double x = static_cast<double>(targets.n_t) * snr;
    const double share = static_cast<double>(targets.shared_rbs) / static_cast<double>(targets.rbs);
    const double target = targets.target(s);
    long below = 0;
    for (const double c : cosines_)
      if (capacity_from_cos(s, c, x, share) < target) ++below;
    return static_cast<double>(below) / static_cast<double>(cosines_.size());
  }

 private:
  std::vector<double> cosines_;
};

OutageCurve make_curve(Scheme s, Method m, const RateTargets& targets, const std::vector<double>& grid_db,
                       const AngleGrid* angles) {
  OutageCurve curve{s, m, {}, 0};
  curve.points.reserve(grid_db.size());
  for (const double db : grid_db) {
    const double snr = normalized_db_to_snr(db, targets.n_t);
    double p = 0.0;
    if (m == Method::Numeric) {
      p = angles->outage(s, targets, snr);
    } else {
      const OutageValue v = s == Scheme::Nr ? outage_closed_nr(targets, snr) : outage_closed_mmct_h(targets, snr);
      p = v.p;
      curve.clamp_events += v.clamped ? 1 : 0;
    }
    curve.points.push_back({db, p});
  }
  return curve;
}

void check_grid(const std::vector<double>& grid_db) {
  if (grid_db.empty()) throw ValidationError("snr_grid must be non-empty");
}

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Nr:
      return "NR";
    case Scheme::MmctHaptic:
      return "MMCT-h";
    case Scheme::MmctVideo:
      return "MMCT-v";
  }
  return "?";
}

const char* to_string(Method m) { return m == Method::Numeric ? "numeric" : "closed"; }

Scheme scheme_from_string(const std::string& name) {
  if (name == "NR") return Scheme::Nr;
  if (name == "MMCT-h") return Scheme::MmctHaptic;
  if (name == "MMCT-v") return Scheme::MmctVideo;
  throw ValidationError(fmt::format("unknown scheme '{}'", name));
}

double rate_nr(double lambda1, double lambda2) {
  check_eigenvalues(lambda1, lambda2);
  return std::log2(1.0 + lambda1) + std::log2(1.0 + lambda2);
}

MmctRates rate_mmct(double lambda1, double lambda2, int rbs, int shared_rbs) {
  check_eigenvalues(lambda1, lambda2);
  check_split(rbs, shared_rbs);
  const double share = static_cast<double>(shared_rbs) / static_cast<double>(rbs);
  const double strong = std::log2(1.0 + lambda1);
  return {share * strong, (1.0 - share) * strong + std::log2(1.0 + lambda2)};
}

Capacities capacity_bounds(double theta, int n_t, double snr, int rbs, int shared_rbs) {
  channel::check_angle(theta);
  check_snr(snr);
  check_split(rbs, shared_rbs);
  if (n_t < 1) throw ValidationError("n_t must be >= 1");
  const double c = std::cos(theta);
  const double x = static_cast<double>(n_t) * snr;
  const double share = static_cast<double>(shared_rbs) / static_cast<double>(rbs);
  return {capacity_from_cos(Scheme::Nr, c, x, share), capacity_from_cos(Scheme::MmctHaptic, c, x, share),
          capacity_from_cos(Scheme::MmctVideo, c, x, share)};
}

RateTargets RateTargets::fair(double r_nr, int rbs, int shared_rbs, int layers, int n_t) {
  RateTargets t;
  t.nr = r_nr;
  t.mmct_video = r_nr;
  t.rbs = rbs;
  t.shared_rbs = shared_rbs;
  t.layers = layers;
  t.n_t = n_t;
  t.mmct_haptic = (r_nr / static_cast<double>(layers)) * static_cast<double>(shared_rbs) / static_cast<double>(rbs);
  return t;
}

void RateTargets::validate() const {
  if (!(nr > 0.0) || !(mmct_haptic > 0.0) || !(mmct_video > 0.0))
    throw ValidationError(fmt::format("rate targets must be > 0 (got NR={}, h={}, v={})", nr, mmct_haptic, mmct_video));
  check_split(rbs, shared_rbs);
  if (layers < 1) throw ValidationError("layers must be >= 1");
  if (n_t < 1) throw ValidationError("n_t must be >= 1");
}

double RateTargets::target(Scheme s) const {
  switch (s) {
    case Scheme::Nr:
      return nr;
    case Scheme::MmctHaptic:
      return mmct_haptic;
    case Scheme::MmctVideo:
      return mmct_video;
  }
  throw ValidationError("unknown scheme");
}

double capacity(Scheme s, double theta, const RateTargets& targets, double snr) {
  const Capacities c = capacity_bounds(theta, targets.n_t, snr, targets.rbs, targets.shared_rbs);
  switch (s) {
    case Scheme::Nr:
      return c.nr;
    case Scheme::MmctHaptic:
      return c.mmct_haptic;
    case Scheme::MmctVideo:
      return c.mmct_video;
  }
  throw ValidationError("unknown scheme");
}

double outage_numeric(Scheme s, const RateTargets& targets, double snr, long M) {
  targets.validate();
  return AngleGrid(M).outage(s, targets, snr);
}

OutageBand nr_band(const RateTargets& targets) {
  targets.validate();
  return {std::exp2(targets.nr / 2.0) - 1.0, (std::exp2(targets.nr) - 1.0) / 2.0};
}

OutageBand mmct_h_band(const RateTargets& targets) {
  targets.validate();
  if (targets.shared_rbs == 0) return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const double y = std::exp2(static_cast<double>(targets.rbs) / static_cast<double>(targets.shared_rbs) *
                             targets.mmct_haptic) - 1.0;
  return {y / 2.0, y};
}

OutageValue outage_closed_nr(const RateTargets& targets, double snr) {
  check_snr(snr);
  const OutageBand band = nr_band(targets);
  const double x = static_cast<double>(targets.n_t) * snr;
  if (x < band.full_outage_below) return {1.0, false};
  if (x > band.zero_outage_above) return {0.0, false};
  const double radicand = (1.0 + x) * (1.0 + x) - std::exp2(targets.nr);
  OutageValue v;
  double arg = std::sqrt(std::max(0.0, radicand)) / x;
  if (radicand < 0.0 || arg > 1.0) {
    v.clamped = true;
    arg = std::clamp(arg, 0.0, 1.0);
  }
  v.p = 2.0 / kPi * std::acos(arg);
  return v;
}

OutageValue outage_closed_mmct_h(const RateTargets& targets, double snr) {
  check_snr(snr);
  const OutageBand band = mmct_h_band(targets);
  if (targets.shared_rbs == 0) return {1.0, false};
  const double x = static_cast<double>(targets.n_t) * snr;
  if (x < band.full_outage_below) return {1.0, false};
  if (x > band.zero_outage_above) return {0.0, false};
  OutageValue v;
  double arg = band.zero_outage_above / x - 1.0;
  if (arg < 0.0 || arg > 1.0) {
    v.clamped = true;
    arg = std::clamp(arg, 0.0, 1.0);
  }
  v.p = 2.0 / kPi * std::asin(arg);
  return v;
}

double zero_outage_threshold_db(Scheme s, const RateTargets& targets, long M, double lo_db, double hi_db, double tol_db) {
  targets.validate();
  const AngleGrid angles(M);
  const auto p_at = [&](double db) { return angles.outage(s, targets, normalized_db_to_snr(db, targets.n_t)); };
  if (p_at(hi_db) > 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (p_at(lo_db) == 0.0) return lo_db;
  while (hi_db - lo_db > tol_db) {
    const double mid = 0.5 * (lo_db + hi_db);
    (p_at(mid) > 0.0 ? lo_db : hi_db) = mid;
  }
  return hi_db;
}

std::vector<OutageCurve> comparison_curves(const RateTargets& targets, const std::vector<double>& snr_grid_db, long M) {
  targets.validate();
  check_grid(snr_grid_db);
  const AngleGrid angles(M);
  return {make_curve(Scheme::Nr, Method::Numeric, targets, snr_grid_db, &angles),
          make_curve(Scheme::MmctHaptic, Method::ClosedForm, targets, snr_grid_db, nullptr),
          make_curve(Scheme::MmctHaptic, Method::Numeric, targets, snr_grid_db, &angles),
          make_curve(Scheme::MmctVideo, Method::Numeric, targets, snr_grid_db, &angles)};
}

std::vector<OutageCurve> all_curves(const RateTargets& targets, const std::vector<double>& snr_grid_db, long M) {
  targets.validate();
  check_grid(snr_grid_db);
  const AngleGrid angles(M);
  return {make_curve(Scheme::Nr, Method::Numeric, targets, snr_grid_db, &angles),
          make_curve(Scheme::Nr, Method::ClosedForm, targets, snr_grid_db, nullptr),
          make_curve(Scheme::MmctHaptic, Method::Numeric, targets, snr_grid_db, &angles),
          make_curve(Scheme::MmctHaptic, Method::ClosedForm, targets, snr_grid_db, nullptr),
          make_curve(Scheme::MmctVideo, Method::Numeric, targets, snr_grid_db, &angles)};
}

}  // namespace mmct::outage
