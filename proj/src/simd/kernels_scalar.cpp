// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Scalar reference kernels. The AVX2 variants must match these bit for bit.

#include <algorithm>
#include <array>

#include "mmct/simd/kernels.hpp"

namespace mmct::simd {

unsigned pam_gray_label(unsigned level, int bits) {
  // Amplitude of label c (bit k = c_k) is (1-2c_0)(2^{m-1} - (1-2c_1)(2^{m-2} - ...)).
  const unsigned count = 1u << bits;
  for (unsigned c = 0; c < count; ++c) {
    int t = 1;
    for (int k = bits - 1; k >= 1; --k) {
      const int s = ((c >> k) & 1u) ? -1 : 1;
      t = (1 << (bits - k)) - s * t;
    }
    const int amp = (c & 1u) ? -t : t;
    if (static_cast<unsigned>((amp + static_cast<int>(count) - 1) / 2) == level) return c;
  }
  return 0;
}

const Trellis& trellis() {
  static const Trellis t = [] {
    constexpr unsigned gens[kOutputs] = {0133, 0171, 0165};
    Trellis out{};
    for (unsigned s = 0; s < kStates; ++s)
      for (unsigned u = 0; u < 2; ++u) {
        const unsigned reg = (u << 6) | s;
        unsigned label = 0;
        for (int k = 0; k < kOutputs; ++k) label |= static_cast<unsigned>(__builtin_parity(reg & gens[k])) << k;
        out.label[s][u] = static_cast<std::uint8_t>(label);
      }
    return out;
  }();
  return t;
}

namespace scalar {

void pam_maxlog_llr(const float* y, const float* weight, std::size_t n, int bits, float* llr) {
  const unsigned levels = 1u << bits;
  std::array<float, 16> amp{};
  std::array<unsigned, 16> label{};
  for (unsigned j = 0; j < levels; ++j) {
    amp[j] = static_cast<float>(2 * static_cast<int>(j) - static_cast<int>(levels) + 1);
    label[j] = pam_gray_label(j, bits);
  }

  for (std::size_t i = 0; i < n; ++i) {
    std::array<float, 4> min0;
    std::array<float, 4> min1;
    min0.fill(3.0e38f);
    min1.fill(3.0e38f);
    for (unsigned j = 0; j < levels; ++j) {
      const float d = y[i] - amp[j];
      const float d2 = d * d;
      for (int k = 0; k < bits; ++k) {
        float& m = ((label[j] >> k) & 1u) ? min1[static_cast<std::size_t>(k)] : min0[static_cast<std::size_t>(k)];
        m = d2 < m ? d2 : m;
      }
    }
    for (int k = 0; k < bits; ++k)
      llr[static_cast<std::size_t>(k) * n + i] = (min1[static_cast<std::size_t>(k)] - min0[static_cast<std::size_t>(k)]) * weight[i];
  }
}

void viterbi_forward(const float* llr, std::size_t steps, std::uint64_t* decisions) {
  const Trellis& tr = trellis();
  alignas(32) float pm[kStates];
  alignas(32) float next[kStates];
  std::fill(std::begin(pm), std::end(pm), -1.0e30f);
  pm[0] = 0.0f;

  for (std::size_t t = 0; t < steps; ++t) {
    float table[8];
    branch_table(llr + kOutputs * t, table);
    std::uint64_t dec = 0;
    for (int u = 0; u < 2; ++u) {
      for (int j = 0; j < kStates / 2; ++j) {
        const int even = 2 * j;
        const int odd = even + 1;
        const float ce = pm[even] + table[tr.label[even][u]];
        const float co = pm[odd] + table[tr.label[odd][u]];
        const bool take_odd = co > ce;
        const int dst = (u << 5) | j;
        next[dst] = take_odd ? co : ce;
        dec |= static_cast<std::uint64_t>(take_odd) << dst;
      }
    }
    const float ref = next[0];
    for (int s = 0; s < kStates; ++s) pm[s] = next[s] - ref;
    decisions[t] = dec;
  }
}

}  // namespace scalar
}  // namespace mmct::simd
