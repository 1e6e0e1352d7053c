// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Two-layer rates, Jensen-bounded capacities under the receive-correlation
// angle model, and outage probabilities for a uniformly distributed angle.
// Rates are in bits/s/Hz (log base 2). "snr" is the linear per-antenna SNR;
// curves are indexed by the normalized SNR 10 log10(n_t snr).

#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace mmct::outage {

enum class Scheme { Nr, MmctHaptic, MmctVideo };
enum class Method { Numeric, ClosedForm };

const char* to_string(Scheme s);
const char* to_string(Method m);
// Accepts "NR", "MMCT-h", "MMCT-v"; throws ValidationError otherwise.
Scheme scheme_from_string(const std::string& name);

double rate_nr(double lambda1, double lambda2);

struct MmctRates {
  double haptic = 0.0;
  double video = 0.0;
};

// Haptic takes B_1 of the B RBs of the strongest layer.
MmctRates rate_mmct(double lambda1, double lambda2, int rbs, int shared_rbs);

struct Capacities {
  double nr = 0.0;
  double mmct_haptic = 0.0;
  double mmct_video = 0.0;
};

Capacities capacity_bounds(double theta, int n_t, double snr, int rbs, int shared_rbs);

struct RateTargets {
  double nr = 12.0;
  double mmct_haptic = 0.6;
  double mmct_video = 12.0;
  int rbs = 20;
  int shared_rbs = 2;
  int layers = 2;
  int n_t = 64;

  // R_h = (R_NR / L) * B_1 / B and R_v = R_NR.
  static RateTargets fair(double r_nr, int rbs, int shared_rbs, int layers, int n_t);

  void validate() const;
  double target(Scheme s) const;
};

double capacity(Scheme s, double theta, const RateTargets& targets, double snr);

// Fraction of the angle grid theta_m = m pi / M - pi/2 (m = 1..M) whose
// capacity falls below the scheme's target. M >= 1000.
double outage_numeric(Scheme s, const RateTargets& targets, double snr, long M);

struct OutageValue {
  double p = 0.0;
  bool clamped = false;  // arccos/arcsin argument had to be clipped to its domain
};

OutageValue outage_closed_nr(const RateTargets& targets, double snr);
OutageValue outage_closed_mmct_h(const RateTargets& targets, double snr);

// Band edges on the normalized SNR n_t * snr (linear): outage is 1 below
// full_outage_below and 0 above zero_outage_above.
struct OutageBand {
  double full_outage_below = 0.0;
  double zero_outage_above = 0.0;
};

OutageBand nr_band(const RateTargets& targets);
OutageBand mmct_h_band(const RateTargets& targets);

// Smallest normalized SNR (dB) at which the numeric outage is 0, found by
// bisection on [lo_db, hi_db] to tol_db. Returns NaN when hi_db still outages.
double zero_outage_threshold_db(Scheme s, const RateTargets& targets, long M, double lo_db, double hi_db,
                                double tol_db = 1e-4);

inline double normalized_db_to_snr(double db, int n_t) {
  return std::pow(10.0, db / 10.0) / static_cast<double>(n_t);
}

struct OutagePoint {
  double normalized_snr_db = 0.0;
  double p_out = 0.0;
};

struct OutageCurve {
  Scheme scheme = Scheme::Nr;
  Method method = Method::Numeric;
  std::vector<OutagePoint> points;
  int clamp_events = 0;
};

// NR numeric, MMCT-h closed form, MMCT-h numeric, MMCT-v numeric.
std::vector<OutageCurve> comparison_curves(const RateTargets& targets, const std::vector<double>& snr_grid_db, long M);

// Numeric curves for all three schemes plus the two closed forms.
std::vector<OutageCurve> all_curves(const RateTargets& targets, const std::vector<double>& snr_grid_db, long M);

}  // namespace mmct::outage
