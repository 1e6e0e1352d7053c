// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Inner loops of the link simulator. Each kernel has a scalar reference and
// an AVX2 variant; the active variant is picked once at runtime from CPUID
// and can be forced with MMCT_SIMD=scalar|avx2 or set_backend(). Both
// variants perform the same float operations in the same order, so their
// outputs are bit-identical.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace mmct::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

bool cpu_supports(Backend b);

// Backend used by the dispatching entry points below.
Backend active_backend();

// Forces a backend; throws ConfigError if the CPU lacks it.
void set_backend(Backend b);

// Viterbi trellis of the 64-state, rate-1/3 mother code. Transition
// (state s, input u) leads to (u << 5) | (s >> 1) and emits the 3 bits
// output_label(s, u) (bit k = output stream k).
inline constexpr int kStates = 64;
inline constexpr int kOutputs = 3;

struct Trellis {
  // label[s][u] in 0..7
  std::uint8_t label[kStates][2];
};

const Trellis& trellis();

// Max-log LLRs for one real PAM dimension with 2^bits Gray-labelled levels
// at odd integers -(2^bits - 1) .. (2^bits - 1). y[i] is the received
// coordinate on that integer grid, weight[i] the per-sample scale
// 1 / N0 (already divided by the constellation normalisation). Output is
// planar: llr[k * n + i] for label bit k (k = 0 is the sign bit). Positive
// LLR favours bit 0.
using PamLlrFn = void (*)(const float* y, const float* weight, std::size_t n, int bits, float* llr);

// Forward pass of the add-compare-select recursion. llr holds kOutputs
// mother-code LLRs per step (positive favours 0). decisions[t] bit s' is 1
// when new state s' at step t was reached from its odd predecessor.
// Path metrics are renormalised to state 0 after every step.
using ViterbiForwardFn = void (*)(const float* llr, std::size_t steps, std::uint64_t* decisions);

namespace scalar {
void pam_maxlog_llr(const float* y, const float* weight, std::size_t n, int bits, float* llr);
void viterbi_forward(const float* llr, std::size_t steps, std::uint64_t* decisions);
}  // namespace scalar

namespace avx2 {
void pam_maxlog_llr(const float* y, const float* weight, std::size_t n, int bits, float* llr);
void viterbi_forward(const float* llr, std::size_t steps, std::uint64_t* decisions);
}  // namespace avx2

// Dispatching entry points.
void pam_maxlog_llr(std::span<const float> y, std::span<const float> weight, int bits, std::span<float> llr);
void viterbi_forward(std::span<const float> llr, std::span<std::uint64_t> decisions);

// Gray label of PAM level j (levels ascending from -(2^bits - 1)).
unsigned pam_gray_label(unsigned level, int bits);

// Per-step table of the 8 branch metrics sum_k (c_k ? -l_k : +l_k).
inline void branch_table(const float* l, float* table) {
  for (int c = 0; c < 8; ++c) {
    float m = (c & 1) ? -l[0] : l[0];
    m += (c & 2) ? -l[1] : l[1];
    m += (c & 4) ? -l[2] : l[2];
    table[c] = m;
  }
}

}  // namespace mmct::simd
