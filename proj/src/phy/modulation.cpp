// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/phy/modulation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mmct/error.hpp"
#include "mmct/simd/kernels.hpp"

namespace mmct::phy {

namespace {

// Integer amplitude on the odd grid for dimension bits c_0..c_{m-1}.
int pam_amplitude(const std::uint8_t* bits, int stride, int m) {
  int t = 1;
  for (int k = m - 1; k >= 1; --k) t = (1 << (m - k)) - (bits[k * stride] ? -1 : 1) * t;
  return bits[0] ? -t : t;
}

void pam_decide(double y, int m, std::uint8_t* bits, int stride) {
  const int levels = 1 << m;
  const int j = std::clamp(static_cast<int>(std::lround((y + (levels - 1)) / 2.0)), 0, levels - 1);
  const unsigned label = simd::pam_gray_label(static_cast<unsigned>(j), m);
  for (int k = 0; k < m; ++k) bits[k * stride] = static_cast<std::uint8_t>((label >> k) & 1u);
}

}  // namespace

void check_modulation_order(int modulation_order) {
  if (modulation_order != 2 && modulation_order != 4 && modulation_order != 6 && modulation_order != 8)
    throw ConfigError(fmt::format("modulation order must be 2, 4, 6 or 8 (got {})", modulation_order));
}

double qam_norm(int modulation_order) {
  check_modulation_order(modulation_order);
  const int m = modulation_order / 2;
  // Mean of a^2 over the odd PAM grid with 2^m levels, times two axes.
  return 2.0 * (static_cast<double>(1 << (2 * m)) - 1.0) / 3.0;
}

std::vector<Cplx> modulate(std::span<const std::uint8_t> bits, int modulation_order) {
  check_modulation_order(modulation_order);
  const auto q = static_cast<std::size_t>(modulation_order);
  if (bits.size() % q != 0)
    throw FramingError(fmt::format("{} bits do not fill whole {}-bit symbols", bits.size(), modulation_order));
  const int m = modulation_order / 2;
  const double scale = 1.0 / std::sqrt(qam_norm(modulation_order));
  std::vector<Cplx> out(bits.size() / q);
  for (std::size_t s = 0; s < out.size(); ++s) {
    const std::uint8_t* b = bits.data() + s * q;
    out[s] = Cplx(pam_amplitude(b, 2, m), pam_amplitude(b + 1, 2, m)) * scale;
  }
  return out;
}

Bits hard_demodulate(std::span<const Cplx> symbols, int modulation_order) {
  check_modulation_order(modulation_order);
  const auto q = static_cast<std::size_t>(modulation_order);
  const int m = modulation_order / 2;
  const double scale = std::sqrt(qam_norm(modulation_order));
  Bits out(symbols.size() * q);
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    pam_decide(symbols[s].real() * scale, m, out.data() + s * q, 2);
    pam_decide(symbols[s].imag() * scale, m, out.data() + s * q + 1, 2);
  }
  return out;
}

std::vector<float> soft_demodulate(std::span<const Cplx> symbols, std::span<const double> noise_var, int modulation_order) {
  check_modulation_order(modulation_order);
  if (noise_var.size() != symbols.size()) throw ConfigError("one noise variance per symbol is required");
  const std::size_t n = symbols.size();
  const int m = modulation_order / 2;
  const double norm = qam_norm(modulation_order);
  const double scale = std::sqrt(norm);

  // Interleaved I/Q dimensions on the integer grid.
  std::vector<float> y(2 * n);
  std::vector<float> w(2 * n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!(noise_var[s] > 0.0)) throw ValidationError("noise variance must be > 0");
    y[2 * s] = static_cast<float>(symbols[s].real() * scale);
    y[2 * s + 1] = static_cast<float>(symbols[s].imag() * scale);
    const auto weight = static_cast<float>(1.0 / (noise_var[s] * norm));
    w[2 * s] = weight;
    w[2 * s + 1] = weight;
  }
  std::vector<float> planar(2 * n * static_cast<std::size_t>(m));
  simd::pam_maxlog_llr(y, w, m, planar);

  // Dimension d = 2s + iq, bit k -> symbol bit 2k + iq.
  const auto q = static_cast<std::size_t>(modulation_order);
  std::vector<float> llr(n * q);
  for (int k = 0; k < m; ++k)
    for (std::size_t d = 0; d < 2 * n; ++d)
      llr[(d / 2) * q + 2 * static_cast<std::size_t>(k) + (d % 2)] = planar[static_cast<std::size_t>(k) * 2 * n + d];
  return llr;
}

}  // namespace mmct::phy
