// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// AVX2 kernels, compiled with per-function target attributes so the rest of
// the library stays baseline x86-64. No FMA: results must equal the scalar
// reference exactly.

#include "mmct/simd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <algorithm>
#include <array>

#define MMCT_AVX2 __attribute__((target("avx2")))

namespace mmct::simd::avx2 {

MMCT_AVX2 void pam_maxlog_llr(const float* y, const float* weight, std::size_t n, int bits, float* llr) {
  const unsigned levels = 1u << bits;
  std::array<float, 16> amp{};
  std::array<unsigned, 16> label{};
  for (unsigned j = 0; j < levels; ++j) {
    amp[j] = static_cast<float>(2 * static_cast<int>(j) - static_cast<int>(levels) + 1);
    label[j] = pam_gray_label(j, bits);
  }

  const std::size_t vec_end = n - n % 8;
  for (std::size_t i = 0; i < vec_end; i += 8) {
    const __m256 yv = _mm256_loadu_ps(y + i);
    __m256 min0[4];
    __m256 min1[4];
    for (int k = 0; k < 4; ++k) {
      min0[k] = _mm256_set1_ps(3.0e38f);
      min1[k] = _mm256_set1_ps(3.0e38f);
    }
    for (unsigned j = 0; j < levels; ++j) {
      const __m256 d = _mm256_sub_ps(yv, _mm256_set1_ps(amp[j]));
      const __m256 d2 = _mm256_mul_ps(d, d);
      for (int k = 0; k < bits; ++k) {
        __m256& m = ((label[j] >> k) & 1u) ? min1[k] : min0[k];
        // m = d2 < m ? d2 : m
        m = _mm256_blendv_ps(m, d2, _mm256_cmp_ps(d2, m, _CMP_LT_OQ));
      }
    }
    const __m256 w = _mm256_loadu_ps(weight + i);
    for (int k = 0; k < bits; ++k)
      _mm256_storeu_ps(llr + static_cast<std::size_t>(k) * n + i, _mm256_mul_ps(_mm256_sub_ps(min1[k], min0[k]), w));
  }
  if (vec_end < n) {
    // Tail through the reference path; it writes llr[k * n' + i] with its own
    // n', so stage it and scatter.
    const std::size_t tail = n - vec_end;
    std::array<float, 8 * 4> staged{};
    scalar::pam_maxlog_llr(y + vec_end, weight + vec_end, tail, bits, staged.data());
    for (int k = 0; k < bits; ++k)
      for (std::size_t i = 0; i < tail; ++i)
        llr[static_cast<std::size_t>(k) * n + vec_end + i] = staged[static_cast<std::size_t>(k) * tail + i];
  }
}

namespace {

MMCT_AVX2 inline __m256 gather_even(const float* p) {
  const __m256 a = _mm256_load_ps(p);
  const __m256 b = _mm256_load_ps(p + 8);
  const __m256 s = _mm256_shuffle_ps(a, b, _MM_SHUFFLE(2, 0, 2, 0));
  return _mm256_castpd_ps(_mm256_permute4x64_pd(_mm256_castps_pd(s), _MM_SHUFFLE(3, 1, 2, 0)));
}

MMCT_AVX2 inline __m256 gather_odd(const float* p) {
  const __m256 a = _mm256_load_ps(p);
  const __m256 b = _mm256_load_ps(p + 8);
  const __m256 s = _mm256_shuffle_ps(a, b, _MM_SHUFFLE(3, 1, 3, 1));
  return _mm256_castpd_ps(_mm256_permute4x64_pd(_mm256_castps_pd(s), _MM_SHUFFLE(3, 1, 2, 0)));
}

}  // namespace

MMCT_AVX2 void viterbi_forward(const float* llr, std::size_t steps, std::uint64_t* decisions) {
  const Trellis& tr = trellis();
  // Branch label indices per (block q, u, parity).
  alignas(32) int idx[4][2][2][8];
  for (int q = 0; q < 4; ++q)
    for (int u = 0; u < 2; ++u)
      for (int lane = 0; lane < 8; ++lane) {
        const int j = 8 * q + lane;
        idx[q][u][0][lane] = tr.label[2 * j][u];
        idx[q][u][1][lane] = tr.label[2 * j + 1][u];
      }
  __m256i lab[4][2][2];
  for (int q = 0; q < 4; ++q)
    for (int u = 0; u < 2; ++u)
      for (int p = 0; p < 2; ++p) lab[q][u][p] = _mm256_load_si256(reinterpret_cast<const __m256i*>(idx[q][u][p]));

  alignas(32) float pm[kStates];
  alignas(32) float next[kStates];
  std::fill(std::begin(pm), std::end(pm), -1.0e30f);
  pm[0] = 0.0f;

  for (std::size_t t = 0; t < steps; ++t) {
    alignas(32) float table[8];
    branch_table(llr + kOutputs * t, table);
    const __m256 tv = _mm256_load_ps(table);
    std::uint64_t dec = 0;
    for (int q = 0; q < 4; ++q) {
      const __m256 pe = gather_even(pm + 16 * q);
      const __m256 po = gather_odd(pm + 16 * q);
      for (int u = 0; u < 2; ++u) {
        const __m256 ce = _mm256_add_ps(pe, _mm256_permutevar8x32_ps(tv, lab[q][u][0]));
        const __m256 co = _mm256_add_ps(po, _mm256_permutevar8x32_ps(tv, lab[q][u][1]));
        const __m256 take_odd = _mm256_cmp_ps(co, ce, _CMP_GT_OQ);
        _mm256_store_ps(next + 32 * u + 8 * q, _mm256_blendv_ps(ce, co, take_odd));
        dec |= static_cast<std::uint64_t>(static_cast<unsigned>(_mm256_movemask_ps(take_odd))) << (32 * u + 8 * q);
      }
    }
    const __m256 ref = _mm256_set1_ps(next[0]);
    for (int s = 0; s < kStates; s += 8) _mm256_store_ps(pm + s, _mm256_sub_ps(_mm256_load_ps(next + s), ref));
    decisions[t] = dec;
  }
}

}  // namespace mmct::simd::avx2

#else

namespace mmct::simd::avx2 {

void pam_maxlog_llr(const float* y, const float* weight, std::size_t n, int bits, float* llr) {
  scalar::pam_maxlog_llr(y, weight, n, bits, llr);
}

void viterbi_forward(const float* llr, std::size_t steps, std::uint64_t* decisions) {
  scalar::viterbi_forward(llr, steps, decisions);
}

}  // namespace mmct::simd::avx2

#endif
