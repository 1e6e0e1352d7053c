// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Space-frequency arrangement of two streams with different reliability
// targets. Haptic resource blocks fill the strongest L_h layers (layer 0 is
// the strongest), sharing B_1 RBs of layer L_h-1 with video; a per-layer
// RB permutation then moves the shared-layer haptic blocks onto the
// highest-SNR RBs of that layer.
//
// All indices in this interface are 0-based. Hand-written 1-based tuples
// (e.g. the permutation (1,5,6,2,3,4,7,8)) convert through
// LayerPermutation::from_one_based() / one_based().

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mmct::frame {

using Symbol = std::complex<double>;

enum class Stream : std::uint8_t { Haptic, Video };

const char* to_string(Stream s);

struct MapperConfig {
  int layers = 2;         // L
  int haptic_layers = 1;  // L_h, 1 <= L_h <= L
  int rbs = 20;           // B, RBs per layer
  int shared_rbs = 4;     // B_1, haptic RBs on layer L_h
  int subcarriers = 12;   // n_s
  int symbols = 12;       // n_o, data OFDM symbols per slot

  // Throws ConfigError when the tuple violates its invariants.
  void validate() const;

  // True when layer L_h carries both streams (1 <= B_1 < B).
  bool has_shared_layer() const { return shared_rbs >= 1 && shared_rbs < rbs; }

  int res_per_rb() const { return subcarriers * symbols; }
  int total_rbs() const { return layers * rbs; }

  bool operator==(const MapperConfig&) const = default;
};

struct RbCounts {
  int haptic = 0;
  int video = 0;

  bool operator==(const RbCounts&) const = default;
};

// N_RB_h = (L_h - 1) B + B_1 and N_RB_v = (L - L_h + 1) B - B_1.
RbCounts rb_counts(const MapperConfig& config);

// One n_s x n_o tile of modulated symbols, stored row-major
// (subcarrier-major, one row per subcarrier).
class RbBlock {
 public:
  RbBlock(int subcarriers, int symbols, Stream tag);
  RbBlock(std::vector<Symbol> data, int subcarriers, int symbols, Stream tag);

  int subcarriers() const { return subcarriers_; }
  int symbols() const { return symbols_; }
  Stream tag() const { return tag_; }
  void set_tag(Stream tag) { tag_ = tag; }

  Symbol& operator()(int subcarrier, int symbol) { return data_[index(subcarrier, symbol)]; }
  const Symbol& operator()(int subcarrier, int symbol) const { return data_[index(subcarrier, symbol)]; }

  std::span<Symbol> data() { return data_; }
  std::span<const Symbol> data() const { return data_; }

  bool operator==(const RbBlock&) const = default;

 private:
  std::size_t index(int subcarrier, int symbol) const {
    return static_cast<std::size_t>(subcarrier) * static_cast<std::size_t>(symbols_) +
           static_cast<std::size_t>(symbol);
  }

  std::vector<Symbol> data_;
  int subcarriers_;
  int symbols_;
  Stream tag_;
};

// B x L arrangement of RbBlocks; cell (rb, layer).
class SpaceFreqGrid {
 public:
  SpaceFreqGrid(MapperConfig config, std::vector<RbBlock> blocks);

  const MapperConfig& config() const { return config_; }

  const RbBlock& at(int rb, int layer) const { return blocks_[offset(rb, layer)]; }
  RbBlock& at(int rb, int layer) { return blocks_[offset(rb, layer)]; }

  // Blocks in column-major (layer-major) order: index = layer * B + rb.
  std::span<const RbBlock> blocks() const { return blocks_; }

  int count(Stream tag) const;

  bool operator==(const SpaceFreqGrid&) const = default;

 private:
  std::size_t offset(int rb, int layer) const;

  MapperConfig config_;
  std::vector<RbBlock> blocks_;
};

// RB permutation of one layer in scatter form: input RB i (canonical
// position) is moved to output RB targets[i]. This is the column view of the
// permutation matrix: column i has its single non-zero in row targets[i].
class LayerPermutation {
 public:
  LayerPermutation(int layer, std::vector<int> targets);

  static LayerPermutation identity(int layer, int rbs);
  static LayerPermutation from_one_based(int layer_one_based, std::span<const int> targets_one_based);

  int layer() const { return layer_; }
  int size() const { return static_cast<int>(targets_.size()); }
  std::span<const int> targets() const { return targets_; }

  // Gather form: output RB b takes input RB order()[b].
  std::vector<int> order() const;
  std::vector<int> one_based() const;
  LayerPermutation inverse() const;

  bool is_identity() const;

  // Throws ValidationError unless targets is a bijection on {0..B-1}.
  void validate() const;

  bool operator==(const LayerPermutation&) const = default;

 private:
  int layer_;
  std::vector<int> targets_;
};

// Per-RB linear SNR, B x L.
class SnrMap {
 public:
  // values in column-major order (index = layer * rbs + rb); every entry must
  // be finite and > 0, otherwise ValidationError.
  SnrMap(int rbs, int layers, std::vector<double> values);

  int rbs() const { return rbs_; }
  int layers() const { return layers_; }
  double at(int rb, int layer) const {
    return values_[static_cast<std::size_t>(layer) * static_cast<std::size_t>(rbs_) +
                   static_cast<std::size_t>(rb)];
  }

 private:
  int rbs_;
  int layers_;
  std::vector<double> values_;
};

// Canonical (pre-permutation) layer-mapped grid. Haptic blocks fill layers
// 0..L_h-2 completely and rows 0..B_1-1 of layer L_h-1; video fills the rest
// of layer L_h-1 and then layers L_h..L-1, both in input order.
SpaceFreqGrid map_layers(std::span<const RbBlock> haptic, std::span<const RbBlock> video,
                         const MapperConfig& config);

// On the shared layer (L_h-1, when 1 <= B_1 < B) the i-th haptic block goes
// to the RB with the i-th highest SNR (ties: lower RB first); video blocks
// keep ascending RB order on the remaining RBs. Every other layer, and the
// haptic layer when it is not shared, gets the identity.
LayerPermutation build_permutation(const SnrMap& snr, int layer, const MapperConfig& config);

std::vector<LayerPermutation> build_permutations(const SnrMap& snr, const MapperConfig& config);

SpaceFreqGrid apply_permutation(const SpaceFreqGrid& grid, std::span<const LayerPermutation> perms);

struct DemappedStreams {
  std::vector<RbBlock> haptic;
  std::vector<RbBlock> video;
};

// Receiver-side inverse of apply_permutation(map_layers(...)). Throws
// CorruptionError if the stream tags do not sit where the config puts them.
DemappedStreams demap(const SpaceFreqGrid& grid, std::span<const LayerPermutation> perms,
                      const MapperConfig& config);

}  // namespace mmct::frame
