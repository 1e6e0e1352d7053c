// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mmct::rng {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based seed derivation: every (seed, i0, i1, ...) tuple maps to an
// independent stream, so trials can run in any order or on any thread.
template <class... Idx>
constexpr std::uint64_t derive(std::uint64_t seed, Idx... idx) {
  std::uint64_t s = splitmix64(seed);
  ((s = splitmix64(s ^ splitmix64(static_cast<std::uint64_t>(idx) + 0x632be59bd9b4e019ULL))), ...);
  return s;
}

template <class... Idx>
Engine engine(std::uint64_t seed, Idx... idx) {
  return Engine{derive(seed, idx...)};
}

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(double variance = 1.0) : normal_(0.0, std::sqrt(variance / 2.0)) {}

  template <class Urbg>
  std::complex<double> operator()(Urbg& g) {
    const double re = normal_(g);
    const double im = normal_(g);
    return {re, im};
  }

 private:
  std::normal_distribution<double> normal_;
};

}  // namespace mmct::rng
