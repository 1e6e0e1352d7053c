// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include <atomic>
#include <cstdlib>
#include <string>

#include <fmt/format.h>

#include "mmct/error.hpp"
#include "mmct/simd/kernels.hpp"

namespace mmct::simd {

namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("MMCT_SIMD")) {
    const std::string v{env};
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && cpu_supports(Backend::Avx2)) return Backend::Avx2;
  }
  return cpu_supports(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool cpu_supports(Backend b) {
  if (b == Backend::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!cpu_supports(b)) throw ConfigError(fmt::format("CPU does not support the {} backend", to_string(b)));
  backend_slot().store(b, std::memory_order_relaxed);
}

void pam_maxlog_llr(std::span<const float> y, std::span<const float> weight, int bits, std::span<float> llr) {
  if (bits < 1 || bits > 4) throw ConfigError(fmt::format("PAM demapper supports 1..4 bits per dimension (got {})", bits));
  if (weight.size() != y.size() || llr.size() != y.size() * static_cast<std::size_t>(bits))
    throw ConfigError("PAM demapper buffer sizes do not match");
  const PamLlrFn fn = active_backend() == Backend::Avx2 ? &avx2::pam_maxlog_llr : &scalar::pam_maxlog_llr;
  fn(y.data(), weight.data(), y.size(), bits, llr.data());
}

void viterbi_forward(std::span<const float> llr, std::span<std::uint64_t> decisions) {
  if (llr.size() != decisions.size() * kOutputs) throw ConfigError("Viterbi buffer sizes do not match");
  const ViterbiForwardFn fn = active_backend() == Backend::Avx2 ? &avx2::viterbi_forward : &scalar::viterbi_forward;
  fn(llr.data(), decisions.size(), decisions.data());
}

}  // namespace mmct::simd
