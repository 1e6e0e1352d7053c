// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Channel coding. The default codec attaches a CRC-16 (poly 0x1021, init
// 0xFFFF), encodes with the 64-state rate-1/3 convolutional code
// (generators 133, 171, 165 octal, zero-tail), rate-matches to the requested
// length by puncturing or cyclic repetition, and applies a 32-column
// row/column interleaver. Decoding is soft-input Viterbi.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mmct/phy/mcs.hpp"
#include "mmct/phy/modulation.hpp"

namespace mmct::phy {

inline constexpr int kCrcBits = 16;
inline constexpr int kTailBits = 6;
inline constexpr double kMaxCodeRate = 0.95;

std::uint16_t crc16(std::span<const std::uint8_t> bits);

struct DecodeResult {
  Bits bits;
  bool crc_ok = false;
};

class FecCodec {
 public:
  virtual ~FecCodec() = default;

  // Encodes info.size() bits into exactly coded_len bits. Throws ConfigError
  // when the effective rate (info + CRC) / coded_len is unsupported.
  virtual Bits encode(std::span<const std::uint8_t> info, std::size_t coded_len) const = 0;

  // llr.size() is the coded length; positive LLR favours 0.
  virtual DecodeResult decode(std::span<const float> llr, std::size_t info_len) const = 0;

  virtual std::string name() const = 0;
};

class ConvolutionalCodec final : public FecCodec {
 public:
  Bits encode(std::span<const std::uint8_t> info, std::size_t coded_len) const override;
  DecodeResult decode(std::span<const float> llr, std::size_t info_len) const override;
  std::string name() const override { return "conv-k7-r1/3+crc16"; }
};

std::unique_ptr<FecCodec> make_default_codec();

// Effective code rate (info + CRC) / coded_len; throws ConfigError above
// kMaxCodeRate or for an empty allocation.
double effective_rate(std::size_t info_len, std::size_t coded_len);

// Payload bits carried by coded_len coded bits at the MCS rate:
// floor(rate * coded_len) - CRC. Throws ConfigError if that is < 1.
std::size_t transport_block_size(const McsEntry& mcs, std::size_t coded_len);

namespace conv {

// Mother code, stream-major: out[k * steps + t] for output stream k.
Bits encode(std::span<const std::uint8_t> bits_with_tail);

// Soft-input Viterbi over t-major mother LLRs (3 per step), zero-tail.
// Returns steps - kTailBits decoded bits.
Bits viterbi_decode(std::span<const float> mother_llr_tmajor);

// Ordered mother positions (stream-major index) sent for coded_len bits.
std::vector<std::uint32_t> rate_match_pattern(std::size_t steps, std::size_t coded_len);

// coded bit j of a row/column interleaver maps from position perm[j].
std::vector<std::uint32_t> interleaver(std::size_t len);

}  // namespace conv

}  // namespace mmct::phy
