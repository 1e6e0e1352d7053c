// SPDX-License-Identifier: Apache-2.0
//
// Rates, capacity bounds and outage probabilities.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mmct/capacity_outage.hpp"
#include "mmct/error.hpp"

using namespace mmct::outage;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

RateTargets reference_targets() { return RateTargets{12.0, 0.6, 12.0, 20, 2, 2, 64}; }

double snr_for(double x, const RateTargets& t) { return x / static_cast<double>(t.n_t); }

// Independent numeric oracle: counts grid angles directly from the
// eigenvalue form of the rates rather than the capacity helpers.
double brute_outage(Scheme s, const RateTargets& t, double x, long M, bool reflect) {
  long below = 0;
  for (long m = 1; m <= M; ++m) {
    double th = static_cast<double>(m) * kPi / static_cast<double>(M) - kPi / 2;
    if (reflect) th = -th;
    const double l1 = (1.0 + std::cos(th)) * x;
    const double l2 = (1.0 - std::cos(th)) * x;
    const auto r = rate_mmct(l1, l2, t.rbs, t.shared_rbs);
    const double c = s == Scheme::Nr ? rate_nr(l1, l2) : s == Scheme::MmctHaptic ? r.haptic : r.video;
    if (c < t.target(s)) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(M);
}

}  // namespace

TEST_CASE("rate_nr") {
  CHECK(rate_nr(1, 1) == Approx(2.0).epsilon(1e-15));
  CHECK(rate_nr(63, 63) == Approx(12.0).epsilon(1e-15));
  CHECK(rate_nr(3, 0) == Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(rate_nr(1, -1), mmct::ValidationError);
  CHECK_THROWS_AS(rate_nr(1, 2), mmct::ValidationError);
}

TEST_CASE("rate_mmct") {
  const auto none = rate_mmct(10, 5, 20, 0);
  CHECK(none.haptic == 0.0);
  CHECK(none.video == Approx(rate_nr(10, 5)));
  const auto split = rate_mmct(63, 63, 20, 2);
  CHECK(split.haptic == Approx(0.6).epsilon(1e-14));
  CHECK(split.video == Approx(11.4).epsilon(1e-14));
  const auto full = rate_mmct(7, 3, 20, 20);
  CHECK(full.haptic == Approx(3.0));
  CHECK(full.video == Approx(2.0));
  CHECK_THROWS_AS(rate_mmct(1, 2, 20, 2), mmct::ValidationError);
  CHECK_THROWS_AS(rate_mmct(2, 1, 20, 21), mmct::ValidationError);
}

TEST_CASE("property: rate conservation") {
  std::mt19937_64 rng(31);
  std::exponential_distribution<double> e(0.01);
  for (int i = 0; i < 100000; ++i) {
    double a = e(rng), b = e(rng);
    if (a < b) std::swap(a, b);
    const int B = 1 + static_cast<int>(rng() % 50);
    const int B1 = static_cast<int>(rng() % static_cast<unsigned>(B + 1));
    const auto r = rate_mmct(a, b, B, B1);
    REQUIRE(std::abs(r.haptic + r.video - rate_nr(a, b)) <= 1e-12);
  }
}

TEST_CASE("capacity_bounds") {
  CHECK(capacity_bounds(kPi / 2, 64, 63.0 / 64, 20, 2).nr == Approx(12.0).epsilon(1e-14));
  CHECK(capacity_bounds(0.0, 64, 31.5 / 64, 20, 2).nr == Approx(6.0).epsilon(1e-14));
  CHECK(capacity_bounds(0.0, 64, 63.0 / 64, 20, 2).mmct_haptic == Approx(0.1 * std::log2(127.0)).epsilon(1e-14));
  CHECK(capacity_bounds(0.0, 64, 63.0 / 64, 20, 2).mmct_haptic == Approx(0.6989).epsilon(1e-4));
  const auto c = capacity_bounds(0.4, 32, 0.7, 20, 5);
  CHECK(c.mmct_haptic + c.mmct_video == Approx(c.nr).epsilon(1e-14));
  CHECK_THROWS_AS(capacity_bounds(-kPi / 2, 64, 1.0, 20, 2), mmct::ValidationError);
  CHECK_THROWS_AS(capacity_bounds(1.7, 64, 1.0, 20, 2), mmct::ValidationError);
  CHECK_THROWS_AS(capacity_bounds(0.1, 64, 0.0, 20, 2), mmct::ValidationError);
}

TEST_CASE("property: C_MMCT_h non-decreasing in B_1") {
  for (double th : {-1.2, -0.3, 0.0, 0.5, kPi / 2})
    for (double snr : {0.01, 0.3, 2.0}) {
      double prev = -1.0;
      for (int b1 = 0; b1 <= 20; ++b1) {
        const double c = capacity_bounds(th, 64, snr, 20, b1).mmct_haptic;
        REQUIRE(c >= prev);
        prev = c;
      }
    }
}

TEST_CASE("outage_numeric") {
  const auto t = reference_targets();
  CHECK(outage_numeric(Scheme::Nr, t, snr_for(10.0, t), 1000) == 1.0);
  CHECK(outage_numeric(Scheme::Nr, t, snr_for(4000.0, t), 1000) == 0.0);
  CHECK(outage_numeric(Scheme::MmctHaptic, t, snr_for(10.0, t), 1000) == 1.0);
  CHECK(outage_numeric(Scheme::MmctHaptic, t, snr_for(100.0, t), 1000) == 0.0);
  CHECK(std::abs(outage_numeric(Scheme::MmctHaptic, t, snr_for(42.0, t), 1000000) - 1.0 / 3.0) <= 1e-5);
  CHECK_THROWS_AS(outage_numeric(Scheme::Nr, t, 1.0, 999), mmct::ValidationError);
  CHECK_THROWS_AS(outage_numeric(static_cast<Scheme>(7), t, 1.0, 1000), mmct::ValidationError);
  CHECK_THROWS_AS(scheme_from_string("LTE"), mmct::ValidationError);
}

TEST_CASE("closed forms") {
  const auto t = reference_targets();
  const auto nr = nr_band(t);
  CHECK(std::abs(10 * std::log10(nr.zero_outage_above) - 33.11) <= 0.05);
  CHECK(nr.zero_outage_above == 4095.0 / 2);
  CHECK(nr.full_outage_below == Approx(63.0).epsilon(1e-12));
  CHECK(std::abs(10 * std::log10(nr.full_outage_below) - 17.99) <= 0.05);
  CHECK(outage_closed_nr(t, snr_for(62.0, t)).p == 1.0);
  CHECK(outage_closed_nr(t, snr_for(2048.0, t)).p == 0.0);

  const auto mh = mmct_h_band(t);
  CHECK(mh.zero_outage_above == Approx(63.0).epsilon(1e-12));
  CHECK(std::abs(10 * std::log10(mh.zero_outage_above) - 17.99) <= 0.05);
  CHECK(std::abs(outage_closed_mmct_h(t, snr_for(42.0, t)).p - 1.0 / 3.0) <= 1e-12);
  CHECK(outage_closed_mmct_h(t, snr_for(31.5, t)).p == Approx(1.0).epsilon(1e-12));
  CHECK(outage_closed_mmct_h(t, snr_for(31.0, t)).p == 1.0);
  CHECK(outage_closed_mmct_h(t, snr_for(64.0, t)).p == 0.0);
}

TEST_CASE("boundary continuity") {
  const auto t = reference_targets();
  const auto nr = nr_band(t);
  const auto mh = mmct_h_band(t);
  const double eps = 1e-9;
  CHECK(outage_closed_nr(t, snr_for(nr.full_outage_below * (1 + eps), t)).p == Approx(1.0).epsilon(1e-3));
  CHECK(outage_closed_nr(t, snr_for(nr.zero_outage_above * (1 - eps), t)).p == Approx(0.0).epsilon(1e-3));
  CHECK(outage_closed_mmct_h(t, snr_for(mh.full_outage_below * (1 + eps), t)).p == Approx(1.0).epsilon(1e-3));
  CHECK(outage_closed_mmct_h(t, snr_for(mh.zero_outage_above * (1 - eps), t)).p < 1e-3);
}

TEST_CASE("property: closed form agrees with the numeric grid to 2/M") {
  constexpr long M = 20000;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  for (int rep = 0; rep < 40; ++rep) {
    // Random fair targets.
    const double r = 4.0 + static_cast<double>(rng() % 9);
    const int B = 10 + static_cast<int>(rng() % 20);
    const int B1 = 1 + static_cast<int>(rng() % static_cast<unsigned>(B - 1));
    const auto t = RateTargets::fair(r, B, B1, 2, 64);
    for (int k = 0; k < 10; ++k) {
      const double snr = normalized_db_to_snr(u(rng), t.n_t);
      const double x = snr * t.n_t;
      REQUIRE(std::abs(outage_closed_nr(t, snr).p - brute_outage(Scheme::Nr, t, x, M, false)) <= 2.0 / M);
      REQUIRE(std::abs(outage_closed_mmct_h(t, snr).p - brute_outage(Scheme::MmctHaptic, t, x, M, false)) <= 2.0 / M);
      REQUIRE(outage_numeric(Scheme::MmctVideo, t, snr, M) == brute_outage(Scheme::MmctVideo, t, x, M, false));
    }
  }
}

TEST_CASE("property: outage is even in theta") {
  const auto t = reference_targets();
  for (double db : {18.5, 22.0, 27.0, 31.0}) {
    const double x = std::pow(10.0, db / 10);
    for (auto s : {Scheme::Nr, Scheme::MmctHaptic, Scheme::MmctVideo}) {
      // On this grid theta_M = pi/2 has no mirror image, so allow one point.
      const double a = brute_outage(s, t, x, 4000, false);
      const double b = brute_outage(s, t, x, 4000, true);
      CHECK(std::abs(a - b) <= 1.0 / 4000 + 1e-15);
    }
  }
}

TEST_CASE("comparison_curves") {
  const auto t = reference_targets();
  std::vector<double> grid;
  for (double d = 10.0; d <= 40.0; d += 0.5) grid.push_back(d);
  const auto curves = comparison_curves(t, grid, 10000);
  REQUIRE(curves.size() == 4);
  CHECK(curves[0].scheme == Scheme::Nr);
  CHECK(curves[1].method == Method::ClosedForm);
  CHECK(curves[2].scheme == Scheme::MmctHaptic);
  CHECK(curves[3].scheme == Scheme::MmctVideo);
  for (const auto& c : curves) {
    CHECK(c.clamp_events == 0);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      REQUIRE(c.points[i].p_out <= c.points[i - 1].p_out);
      REQUIRE(c.points[i].p_out >= 0.0);
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(curves[3].points[i].p_out >= curves[0].points[i].p_out);
    CHECK(std::abs(curves[1].points[i].p_out - curves[2].points[i].p_out) <= 2.0 / 10000);
  }
  CHECK(zero_outage_threshold_db(Scheme::MmctHaptic, t, 10000, 0, 50) == Approx(17.99).epsilon(0.05 / 17.99));
  CHECK(zero_outage_threshold_db(Scheme::Nr, t, 10000, 0, 50) == Approx(33.11).epsilon(0.05 / 33.11));
  CHECK(std::isnan(zero_outage_threshold_db(Scheme::Nr, t, 10000, 0, 20)));
  CHECK_THROWS_WITH_AS(comparison_curves(t, {}, 10000), "snr_grid must be non-empty", mmct::ValidationError);
  CHECK(all_curves(t, grid, 10000).size() == 5);
}
