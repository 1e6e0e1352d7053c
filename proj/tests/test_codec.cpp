// SPDX-License-Identifier: Apache-2.0
//
// CRC, convolutional code, rate matching and the soft Viterbi decoder.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <set>

#include "mmct/error.hpp"
#include "mmct/phy/codec.hpp"
#include "mmct/simd/kernels.hpp"

using namespace mmct::phy;

namespace {

Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  Bits b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng() & 1u);
  return b;
}

// Reference encoder: explicit 7-bit shift register, newest bit at the
// polynomial's MSB tap (octal 133, 171, 165).
Bits reference_encode(const Bits& in) {
  const unsigned taps[3] = {0133, 0171, 0165};
  unsigned reg = 0;
  Bits out(3 * in.size());
  for (std::size_t t = 0; t < in.size(); ++t) {
    reg = ((reg >> 1) | (static_cast<unsigned>(in[t]) << 6)) & 0x7f;
    for (int k = 0; k < 3; ++k) {
      unsigned v = reg & taps[k], p = 0;
      while (v) {
        p ^= v & 1u;
        v >>= 1;
      }
      out[static_cast<std::size_t>(k) * in.size() + t] = static_cast<std::uint8_t>(p);
    }
  }
  return out;
}

std::vector<float> bpsk_llr(const Bits& coded_tmajor, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<float> llr(coded_tmajor.size());
  for (std::size_t i = 0; i < llr.size(); ++i) {
    const double y = (coded_tmajor[i] ? -1.0 : 1.0) + g(rng);
    llr[i] = static_cast<float>(2.0 * y / (sigma * sigma));
  }
  return llr;
}

Bits to_tmajor(const Bits& streams, std::size_t steps) {
  Bits out(streams.size());
  for (std::size_t t = 0; t < steps; ++t)
    for (std::size_t k = 0; k < 3; ++k) out[3 * t + k] = streams[k * steps + t];
  return out;
}

// Textbook Viterbi over the register view (state = last 6 inputs, newest
// in bit 5), written independently of the library kernel.
Bits reference_viterbi(const std::vector<float>& llr, std::size_t steps) {
  const unsigned taps[3] = {0133, 0171, 0165};
  std::vector<double> pm(64, -1e300), nx(64);
  pm[0] = 0.0;
  std::vector<std::vector<std::uint8_t>> from(steps, std::vector<std::uint8_t>(64));
  for (std::size_t t = 0; t < steps; ++t) {
    std::fill(nx.begin(), nx.end(), -1e300);
    for (unsigned s = 0; s < 64; ++s) {
      if (pm[s] <= -1e299) continue;
      for (unsigned u = 0; u < 2; ++u) {
        const unsigned reg = (u << 6) | s;
        double m = pm[s];
        for (int k = 0; k < 3; ++k) {
          const int c = __builtin_popcount(reg & taps[k]) & 1;
          m += c ? -llr[3 * t + static_cast<std::size_t>(k)] : llr[3 * t + static_cast<std::size_t>(k)];
        }
        const unsigned ns = reg >> 1;
        if (m > nx[ns]) {
          nx[ns] = m;
          from[t][ns] = static_cast<std::uint8_t>(s);
        }
      }
    }
    pm = nx;
  }
  Bits out(steps);
  unsigned s = 0;
  for (std::size_t t = steps; t-- > 0;) {
    out[t] = static_cast<std::uint8_t>(s >> 5);
    s = from[t][s];
  }
  out.resize(steps - kTailBits);
  return out;
}

}  // namespace

TEST_CASE("CRC-16 check value") {
  // "123456789" -> 0x29B1 for poly 0x1021, init 0xFFFF, no reflection.
  Bits b;
  for (char ch : std::string("123456789"))
    for (int k = 7; k >= 0; --k) b.push_back(static_cast<std::uint8_t>((ch >> k) & 1));
  CHECK(crc16(b) == 0x29B1);
  const Bits zeros(40, 0);
  CHECK(crc16(zeros) != 0);
}

TEST_CASE("encoder matches a shift-register reference") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    auto b = random_bits(rng, 50 + static_cast<std::size_t>(rep));
    b.insert(b.end(), kTailBits, 0);
    CHECK(conv::encode(b) == reference_encode(b));
  }
}

TEST_CASE("Viterbi equals brute-force ML on short blocks") {
  std::mt19937_64 rng(5);
  for (int info_len = 1; info_len <= 10; ++info_len) {
    const std::size_t steps = static_cast<std::size_t>(info_len + kTailBits);
    for (int rep = 0; rep < 20; ++rep) {
      auto b = random_bits(rng, static_cast<std::size_t>(info_len));
      b.insert(b.end(), kTailBits, 0);
      const auto llr = bpsk_llr(to_tmajor(reference_encode(b), steps), 1.0, rng);
      // Oracle: maximise the correlation over all 2^K inputs.
      double best = -1e300;
      Bits best_bits;
      for (unsigned w = 0; w < (1u << info_len); ++w) {
        Bits cand(steps, 0);
        for (int k = 0; k < info_len; ++k) cand[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((w >> k) & 1u);
        const auto c = to_tmajor(reference_encode(cand), steps);
        double m = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) m += c[i] ? -llr[i] : llr[i];
        if (m > best) {
          best = m;
          best_bits.assign(cand.begin(), cand.begin() + info_len);
        }
      }
      REQUIRE(conv::viterbi_decode(llr) == best_bits);
    }
  }
}

TEST_CASE("rate matching and interleaver") {
  for (std::size_t steps : {10u, 57u, 346u}) {
    for (std::size_t e : {steps + 3, 2 * steps - 1, 2 * steps, 2 * steps + 5, 3 * steps - 1, 3 * steps, 4 * steps + 7}) {
      const auto p = conv::rate_match_pattern(steps, e);
      REQUIRE(p.size() == e);
      for (auto v : p) REQUIRE(v < 3 * steps);
      if (e <= 3 * steps) REQUIRE(std::set<std::uint32_t>(p.begin(), p.end()).size() == e);
      // Every trellis step keeps at least one bit.
      std::set<std::uint32_t> covered;
      for (auto v : p) covered.insert(v % static_cast<std::uint32_t>(steps));
      REQUIRE(covered.size() == steps);
    }
  }
  for (std::size_t n : {1u, 31u, 32u, 33u, 1000u}) {
    const auto perm = conv::interleaver(n);
    REQUIRE(std::set<std::uint32_t>(perm.begin(), perm.end()).size() == n);
  }
}

TEST_CASE("codec round trip") {
  ConvolutionalCodec codec;
  std::mt19937_64 rng(6);
  for (std::size_t k : {1u, 20u, 316u, 2970u}) {
    const std::size_t steps = k + kCrcBits + kTailBits;
    for (std::size_t e : {static_cast<std::size_t>(std::ceil((k + kCrcBits) / 0.95)), (k + kCrcBits) * 2, 3 * steps,
                          5 * steps + 1}) {
      const auto b = random_bits(rng, k);
      const auto c = codec.encode(b, e);
      REQUIRE(c.size() == e);
      std::vector<float> llr(e);
      for (std::size_t i = 0; i < e; ++i) llr[i] = c[i] ? -4.0f : 4.0f;
      const auto r = codec.decode(llr, k);
      REQUIRE(r.crc_ok);
      REQUIRE(r.bits == b);
    }
  }
}

TEST_CASE("erasures fail the CRC") {
  ConvolutionalCodec codec;
  int failures = 0, total = 0;
  for (std::size_t k = 1; k <= 400; k += 7) {
    const std::vector<float> llr(2 * (k + kCrcBits), 0.0f);
    failures += codec.decode(llr, k).crc_ok ? 0 : 1;
    ++total;
  }
  CHECK(failures == total);
}

TEST_CASE("unsupported rates") {
  ConvolutionalCodec codec;
  const Bits b(100, 1);
  CHECK_THROWS_AS(codec.encode(b, 100), mmct::ConfigError);
  CHECK_THROWS_AS(codec.encode(b, 0), mmct::ConfigError);
  CHECK_THROWS_AS(codec.encode(b, 122), mmct::ConfigError);
  CHECK_NOTHROW(codec.encode(b, 123));
  CHECK_THROWS_AS(transport_block_size(mcs_by_index(1), 30), mmct::ConfigError);
  CHECK(transport_block_size(mcs_by_index(25), 3840) == 3318 - 16);
}

TEST_CASE("BLER matches a reference decoder" * doctest::timeout(120)) {
  // Unpunctured mother code (E = 3N) over BPSK-AWGN. The library path
  // (CRC, rate matching, interleaver, SIMD Viterbi) and a test-side
  // reference simulation see the same noise; their BLERs must agree
  // within Monte-Carlo error.
  ConvolutionalCodec codec;
  constexpr std::size_t k = 200;
  constexpr std::size_t steps = k + kCrcBits + kTailBits;
  constexpr int blocks = 400;
  for (double ebn0_db : {1.0, 2.0, 3.0}) {
    const double rate = static_cast<double>(k) / (3.0 * steps);
    const double sigma = std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10)));
    std::mt19937_64 rng(static_cast<std::uint64_t>(ebn0_db * 10));
    int err_lib = 0, err_ref = 0;
    for (int blk = 0; blk < blocks; ++blk) {
      const auto b = random_bits(rng, k);
      const auto c = codec.encode(b, 3 * steps);
      const auto llr = bpsk_llr(c, sigma, rng);
      const auto r = codec.decode(llr, k);
      err_lib += (!r.crc_ok || r.bits != b) ? 1 : 0;

      // Reference: undo the interleaver/rate-matching order independently.
      const auto perm = conv::interleaver(3 * steps);
      std::vector<float> mother(3 * steps);
      for (std::size_t j = 0; j < 3 * steps; ++j) {
        const std::size_t pos = perm[j];  // identity rate matching when E = 3N
        mother[3 * (pos % steps) + pos / steps] = llr[j];
      }
      const auto dec = reference_viterbi(mother, steps);
      err_ref += Bits(dec.begin(), dec.begin() + k) != b ? 1 : 0;
    }
    const double p1 = err_lib / static_cast<double>(blocks);
    const double p2 = err_ref / static_cast<double>(blocks);
    const double sd = std::sqrt(p1 * (1 - p1) / blocks + p2 * (1 - p2) / blocks);
    INFO("Eb/N0 " << ebn0_db << " lib " << p1 << " ref " << p2);
    CHECK(std::abs(p1 - p2) <= 2.0 * sd + 1.0 / blocks);
  }
}
