// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/phy/codec.hpp"

#include <algorithm>
#include <cmath>

#include <boost/crc.hpp>
#include <fmt/format.h>

#include "mmct/error.hpp"
#include "mmct/simd/kernels.hpp"

namespace mmct::phy {

std::uint16_t crc16(std::span<const std::uint8_t> bits) {
  boost::crc_basic<16> crc(0x1021, 0xFFFF, 0, false, false);
  std::size_t i = 0;
  for (; i + 8 <= bits.size(); i += 8) {
    unsigned char byte = 0;
    for (int k = 0; k < 8; ++k) byte = static_cast<unsigned char>((byte << 1) | (bits[i + static_cast<std::size_t>(k)] & 1u));
    crc.process_byte(byte);
  }
  if (i < bits.size()) {
    unsigned char rest = 0;
    const std::size_t n = bits.size() - i;
    for (std::size_t k = 0; k < n; ++k) rest = static_cast<unsigned char>((rest << 1) | (bits[i + k] & 1u));
    crc.process_bits(rest, n);
  }
  return static_cast<std::uint16_t>(crc.checksum());
}

double effective_rate(std::size_t info_len, std::size_t coded_len) {
  if (coded_len == 0) throw ConfigError("codeword has no coded bits");
  if (info_len == 0) throw ConfigError("codeword has no information bits");
  const double rate = static_cast<double>(info_len + kCrcBits) / static_cast<double>(coded_len);
  if (rate > kMaxCodeRate)
    throw ConfigError(fmt::format("{} payload bits + CRC need at least {} coded bits, only {} available (rate {:.4f} > {})",
                                  info_len, static_cast<std::size_t>(std::ceil((info_len + kCrcBits) / kMaxCodeRate)),
                                  coded_len, rate, kMaxCodeRate));
  return rate;
}

std::size_t transport_block_size(const McsEntry& mcs, std::size_t coded_len) {
  const auto raw = static_cast<long long>(std::floor(mcs.code_rate * static_cast<double>(coded_len)));
  if (raw - kCrcBits < 1)
    throw ConfigError(fmt::format("{} coded bits at MCS {} leave no room for payload", coded_len, mcs.index));
  return static_cast<std::size_t>(raw - kCrcBits);
}

namespace conv {

Bits encode(std::span<const std::uint8_t> bits_with_tail) {
  const simd::Trellis& tr = simd::trellis();
  const std::size_t steps = bits_with_tail.size();
  Bits out(simd::kOutputs * steps);
  unsigned state = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    const unsigned u = bits_with_tail[t] & 1u;
    const unsigned label = tr.label[state][u];
    for (int k = 0; k < simd::kOutputs; ++k) out[static_cast<std::size_t>(k) * steps + t] = static_cast<std::uint8_t>((label >> k) & 1u);
    state = (u << 5) | (state >> 1);
  }
  return out;
}

Bits viterbi_decode(std::span<const float> mother_llr_tmajor) {
  const std::size_t steps = mother_llr_tmajor.size() / simd::kOutputs;
  if (steps * simd::kOutputs != mother_llr_tmajor.size() || steps < static_cast<std::size_t>(kTailBits))
    throw FramingError("mother-code LLR length is not a whole number of trellis steps");
  std::vector<std::uint64_t> decisions(steps);
  simd::viterbi_forward(mother_llr_tmajor, decisions);

  Bits bits(steps);
  unsigned state = 0;
  for (std::size_t t = steps; t-- > 0;) {
    bits[t] = static_cast<std::uint8_t>(state >> 5);
    const unsigned from_odd = static_cast<unsigned>((decisions[t] >> state) & 1u);
    state = ((state & 31u) << 1) | from_odd;
  }
  bits.resize(steps - kTailBits);
  return bits;
}

std::vector<std::uint32_t> rate_match_pattern(std::size_t steps, std::size_t coded_len) {
  const std::size_t mother = simd::kOutputs * steps;
  std::vector<std::uint32_t> pattern;
  pattern.reserve(coded_len);
  if (coded_len >= mother) {
    for (std::size_t j = 0; j < coded_len; ++j) pattern.push_back(static_cast<std::uint32_t>(j % mother));
    return pattern;
  }
  // Puncture. Up to 2 * steps bits: every step keeps one bit, alternating
  // streams 0 and 1, and the extras come from the other stream at evenly
  // spaced steps. Beyond that streams 0 and 1 are kept whole and stream 2
  // fills in evenly.
  auto spread = [steps](std::size_t i, std::size_t n) {
    const auto t = static_cast<std::size_t>(std::floor((static_cast<double>(i) + 0.5) * static_cast<double>(steps) /
                                                     static_cast<double>(n)));
    return std::min(t, steps - 1);
  };
  if (coded_len <= 2 * steps) {
    if (coded_len < steps) {
      for (std::size_t i = 0; i < coded_len; ++i) {
        const std::size_t t = spread(i, coded_len);
        pattern.push_back(static_cast<std::uint32_t>((t % 2) * steps + t));
      }
    } else {
      for (std::size_t t = 0; t < steps; ++t) pattern.push_back(static_cast<std::uint32_t>((t % 2) * steps + t));
      const std::size_t extra = coded_len - steps;
      for (std::size_t i = 0; i < extra; ++i) {
        const std::size_t t = spread(i, extra);
        pattern.push_back(static_cast<std::uint32_t>((1 - t % 2) * steps + t));
      }
    }
  } else {
    for (std::size_t j = 0; j < 2 * steps; ++j) pattern.push_back(static_cast<std::uint32_t>(j));
    const std::size_t extra = coded_len - 2 * steps;
    for (std::size_t i = 0; i < extra; ++i) pattern.push_back(static_cast<std::uint32_t>(2 * steps + spread(i, extra)));
  }
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

std::vector<std::uint32_t> interleaver(std::size_t len) {
  constexpr std::size_t cols = 32;
  const std::size_t rows = (len + cols - 1) / cols;
  std::vector<std::uint32_t> perm;
  perm.reserve(len);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t src = r * cols + c;
      if (src < len) perm.push_back(static_cast<std::uint32_t>(src));
    }
  return perm;
}

}  // namespace conv

Bits ConvolutionalCodec::encode(std::span<const std::uint8_t> info, std::size_t coded_len) const {
  effective_rate(info.size(), coded_len);
  Bits block(info.begin(), info.end());
  const std::uint16_t crc = crc16(info);
  for (int k = kCrcBits - 1; k >= 0; --k) block.push_back(static_cast<std::uint8_t>((crc >> k) & 1u));
  block.insert(block.end(), kTailBits, 0);

  const Bits mother = conv::encode(block);
  const auto pattern = conv::rate_match_pattern(block.size(), coded_len);
  const auto perm = conv::interleaver(coded_len);
  Bits out(coded_len);
  for (std::size_t j = 0; j < coded_len; ++j) out[j] = mother[pattern[perm[j]]];
  return out;
}

DecodeResult ConvolutionalCodec::decode(std::span<const float> llr, std::size_t info_len) const {
  const std::size_t coded_len = llr.size();
  effective_rate(info_len, coded_len);
  const std::size_t steps = info_len + kCrcBits + kTailBits;

  const auto pattern = conv::rate_match_pattern(steps, coded_len);
  const auto perm = conv::interleaver(coded_len);
  std::vector<float> mother(simd::kOutputs * steps, 0.0f);
  for (std::size_t j = 0; j < coded_len; ++j) {
    const std::uint32_t pos = pattern[perm[j]];
    const std::size_t k = pos / steps;
    const std::size_t t = pos % steps;
    mother[t * simd::kOutputs + k] += llr[j];
  }

  Bits decoded = conv::viterbi_decode(mother);
  std::uint16_t rx_crc = 0;
  for (int k = 0; k < kCrcBits; ++k) rx_crc = static_cast<std::uint16_t>((rx_crc << 1) | decoded[info_len + static_cast<std::size_t>(k)]);
  decoded.resize(info_len);
  DecodeResult r;
  r.crc_ok = crc16(decoded) == rx_crc;
  r.bits = std::move(decoded);
  return r;
}

std::unique_ptr<FecCodec> make_default_codec() { return std::make_unique<ConvolutionalCodec>(); }

}  // namespace mmct::phy
