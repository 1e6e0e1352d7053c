// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Gray-mapped square QAM with unit average energy. Symbol bits
// b_0 .. b_{Q-1}: even bits drive the in-phase axis, odd bits quadrature,
//   I = (1-2b_0)(2^{m-1} - (1-2b_2)(2^{m-2} - ...)) / sqrt(norm)
// with m = Q/2 and norm = 2, 10, 42, 170 for Q = 2, 4, 6, 8. QPSK bits 00
// map to (1+j)/sqrt(2).

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace mmct::phy {

using Bits = std::vector<std::uint8_t>;
using Cplx = std::complex<double>;

// Q in {2, 4, 6, 8}; throws ConfigError otherwise.
void check_modulation_order(int modulation_order);

double qam_norm(int modulation_order);

// Throws FramingError if bits.size() is not a multiple of the order.
std::vector<Cplx> modulate(std::span<const std::uint8_t> bits, int modulation_order);

// Nearest-point decision.
Bits hard_demodulate(std::span<const Cplx> symbols, int modulation_order);

// Max-log LLRs (positive favours 0), modulation_order per symbol in symbol
// order. noise_var[i] is the complex noise variance on symbol i.
std::vector<float> soft_demodulate(std::span<const Cplx> symbols, std::span<const double> noise_var,
                                   int modulation_order);

}  // namespace mmct::phy
