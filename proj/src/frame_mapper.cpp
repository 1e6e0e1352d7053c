// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/frame_mapper.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "mmct/error.hpp"

namespace mmct::frame {

const char* to_string(Stream s) { return s == Stream::Haptic ? "haptic" : "video"; }

void MapperConfig::validate() const {
  if (layers < 1) throw ConfigError(fmt::format("layers must be >= 1 (got {})", layers));
  if (rbs < 1) throw ConfigError(fmt::format("rbs must be >= 1 (got {})", rbs));
  if (subcarriers < 1 || symbols < 1)
    throw ConfigError(fmt::format("RB size must be positive (got {}x{})", subcarriers, symbols));
  if (haptic_layers < 1 || haptic_layers > layers)
    throw ConfigError(fmt::format("haptic_layers must be in [1, {}] (got {})", layers, haptic_layers));
  if (shared_rbs < 0 || shared_rbs > rbs)
    throw ConfigError(fmt::format("shared_rbs must be in [0, {}] (got {})", rbs, shared_rbs));
}

RbCounts rb_counts(const MapperConfig& config) {
  config.validate();
  const int haptic = (config.haptic_layers - 1) * config.rbs + config.shared_rbs;
  const int video = (config.layers - config.haptic_layers + 1) * config.rbs - config.shared_rbs;
  return {haptic, video};
}

RbBlock::RbBlock(int subcarriers, int symbols, Stream tag)
    : data_(static_cast<std::size_t>(std::max(subcarriers, 0)) * static_cast<std::size_t>(std::max(symbols, 0))),
      subcarriers_(subcarriers),
      symbols_(symbols),
      tag_(tag) {
  if (subcarriers < 1 || symbols < 1) throw MappingError("RbBlock dimensions must be positive");
}

RbBlock::RbBlock(std::vector<Symbol> data, int subcarriers, int symbols, Stream tag)
    : data_(std::move(data)), subcarriers_(subcarriers), symbols_(symbols), tag_(tag) {
  if (subcarriers < 1 || symbols < 1) throw MappingError("RbBlock dimensions must be positive");
  if (data_.size() != static_cast<std::size_t>(subcarriers) * static_cast<std::size_t>(symbols))
    throw MappingError(fmt::format("RbBlock holds {} symbols, expected {}x{}", data_.size(), subcarriers, symbols));
  for (const auto& s : data_)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw MappingError("RbBlock symbol is not finite");
}

SpaceFreqGrid::SpaceFreqGrid(MapperConfig config, std::vector<RbBlock> blocks)
    : config_(config), blocks_(std::move(blocks)) {
  config_.validate();
  if (blocks_.size() != static_cast<std::size_t>(config_.total_rbs()))
    throw MappingError(fmt::format("grid needs {} blocks, got {}", config_.total_rbs(), blocks_.size()));
}

std::size_t SpaceFreqGrid::offset(int rb, int layer) const {
  if (rb < 0 || rb >= config_.rbs || layer < 0 || layer >= config_.layers)
    throw IndexError(fmt::format("grid cell ({}, {}) outside {}x{}", rb, layer, config_.rbs, config_.layers));
  return static_cast<std::size_t>(layer) * static_cast<std::size_t>(config_.rbs) + static_cast<std::size_t>(rb);
}

int SpaceFreqGrid::count(Stream tag) const {
  return static_cast<int>(std::count_if(blocks_.begin(), blocks_.end(), [tag](const RbBlock& b) { return b.tag() == tag; }));
}

LayerPermutation::LayerPermutation(int layer, std::vector<int> targets) : layer_(layer), targets_(std::move(targets)) {}

LayerPermutation LayerPermutation::identity(int layer, int rbs) {
  std::vector<int> t(static_cast<std::size_t>(rbs));
  std::iota(t.begin(), t.end(), 0);
  return {layer, std::move(t)};
}

LayerPermutation LayerPermutation::from_one_based(int layer_one_based, std::span<const int> targets_one_based) {
  std::vector<int> t(targets_one_based.begin(), targets_one_based.end());
  for (auto& v : t) --v;
  return {layer_one_based - 1, std::move(t)};
}

std::vector<int> LayerPermutation::order() const {
  validate();
  std::vector<int> g(targets_.size());
  for (std::size_t i = 0; i < targets_.size(); ++i) g[static_cast<std::size_t>(targets_[i])] = static_cast<int>(i);
  return g;
}

std::vector<int> LayerPermutation::one_based() const {
  std::vector<int> t = targets_;
  for (auto& v : t) ++v;
  return t;
}

LayerPermutation LayerPermutation::inverse() const { return {layer_, order()}; }

bool LayerPermutation::is_identity() const {
  for (std::size_t i = 0; i < targets_.size(); ++i)
    if (targets_[i] != static_cast<int>(i)) return false;
  return true;
}

void LayerPermutation::validate() const {
  std::vector<bool> seen(targets_.size(), false);
  for (int t : targets_) {
    if (t < 0 || t >= size() || seen[static_cast<std::size_t>(t)])
      throw ValidationError(fmt::format("permutation of layer {} is not a bijection on {{0..{}}}", layer_, size() - 1));
    seen[static_cast<std::size_t>(t)] = true;
  }
}

SnrMap::SnrMap(int rbs, int layers, std::vector<double> values) : rbs_(rbs), layers_(layers), values_(std::move(values)) {
  if (rbs < 1 || layers < 1) throw ValidationError("SnrMap dimensions must be positive");
  if (values_.size() != static_cast<std::size_t>(rbs) * static_cast<std::size_t>(layers))
    throw ValidationError(fmt::format("SnrMap holds {} values, expected {}x{}", values_.size(), rbs, layers));
  for (double v : values_)
    if (!std::isfinite(v) || v <= 0.0) throw ValidationError(fmt::format("per-RB SNR must be finite and > 0 (got {})", v));
}

namespace {

void check_block_dims(const RbBlock& b, const MapperConfig& config) {
  if (b.subcarriers() != config.subcarriers || b.symbols() != config.symbols)
    throw MappingError(fmt::format("RbBlock is {}x{}, config expects {}x{}", b.subcarriers(), b.symbols(),
                                   config.subcarriers, config.symbols));
}

// Stream that owns canonical position p = layer * B + rb.
Stream canonical_tag(std::size_t p, const RbCounts& counts) {
  return p < static_cast<std::size_t>(counts.haptic) ? Stream::Haptic : Stream::Video;
}

std::vector<const LayerPermutation*> index_by_layer(std::span<const LayerPermutation> perms, const MapperConfig& config) {
  if (perms.size() != static_cast<std::size_t>(config.layers))
    throw ValidationError(fmt::format("need one permutation per layer ({}), got {}", config.layers, perms.size()));
  std::vector<const LayerPermutation*> by_layer(static_cast<std::size_t>(config.layers), nullptr);
  for (const auto& p : perms) {
    if (p.layer() < 0 || p.layer() >= config.layers)
      throw ValidationError(fmt::format("permutation for layer {} outside [0, {})", p.layer(), config.layers));
    if (p.size() != config.rbs)
      throw ValidationError(fmt::format("permutation of layer {} has {} entries, expected {}", p.layer(), p.size(), config.rbs));
    auto& slot = by_layer[static_cast<std::size_t>(p.layer())];
    if (slot != nullptr) throw ValidationError(fmt::format("duplicate permutation for layer {}", p.layer()));
    p.validate();
    slot = &p;
  }
  return by_layer;
}

}  // namespace

SpaceFreqGrid map_layers(std::span<const RbBlock> haptic, std::span<const RbBlock> video, const MapperConfig& config) {
  const RbCounts counts = rb_counts(config);
  if (haptic.size() != static_cast<std::size_t>(counts.haptic) || video.size() != static_cast<std::size_t>(counts.video))
    throw MappingError(fmt::format("mapper expects {} haptic + {} video blocks, got {} + {}", counts.haptic, counts.video,
                                   haptic.size(), video.size()));

  std::vector<RbBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(config.total_rbs()));
  for (const auto& b : haptic) {
    check_block_dims(b, config);
    blocks.push_back(b);
    blocks.back().set_tag(Stream::Haptic);
  }
  for (const auto& b : video) {
    check_block_dims(b, config);
    blocks.push_back(b);
    blocks.back().set_tag(Stream::Video);
  }
  return {config, std::move(blocks)};
}

LayerPermutation build_permutation(const SnrMap& snr, int layer, const MapperConfig& config) {
  config.validate();
  if (layer < 0 || layer >= config.layers)
    throw IndexError(fmt::format("layer {} outside [0, {})", layer, config.layers));
  if (snr.rbs() != config.rbs || snr.layers() != config.layers)
    throw ValidationError(fmt::format("SnrMap is {}x{}, config is {}x{}", snr.rbs(), snr.layers(), config.rbs, config.layers));

  const int shared_layer = config.haptic_layers - 1;
  if (layer != shared_layer || !config.has_shared_layer()) return LayerPermutation::identity(layer, config.rbs);

  std::vector<int> by_snr(static_cast<std::size_t>(config.rbs));
  std::iota(by_snr.begin(), by_snr.end(), 0);
  std::stable_sort(by_snr.begin(), by_snr.end(), [&](int a, int b) { return snr.at(a, layer) > snr.at(b, layer); });

  const auto b1 = static_cast<std::size_t>(config.shared_rbs);
  std::vector<int> targets(by_snr.begin(), by_snr.begin() + static_cast<std::ptrdiff_t>(b1));
  std::vector<int> rest(by_snr.begin() + static_cast<std::ptrdiff_t>(b1), by_snr.end());
  std::sort(rest.begin(), rest.end());
  targets.insert(targets.end(), rest.begin(), rest.end());
  return {layer, std::move(targets)};
}

std::vector<LayerPermutation> build_permutations(const SnrMap& snr, const MapperConfig& config) {
  std::vector<LayerPermutation> perms;
  perms.reserve(static_cast<std::size_t>(config.layers));
  for (int l = 0; l < config.layers; ++l) perms.push_back(build_permutation(snr, l, config));
  return perms;
}

SpaceFreqGrid apply_permutation(const SpaceFreqGrid& grid, std::span<const LayerPermutation> perms) {
  const MapperConfig& config = grid.config();
  const auto by_layer = index_by_layer(perms, config);

  std::vector<RbBlock> out(grid.blocks().begin(), grid.blocks().end());
  for (int l = 0; l < config.layers; ++l) {
    const auto targets = by_layer[static_cast<std::size_t>(l)]->targets();
    for (int i = 0; i < config.rbs; ++i) {
      const auto dst = static_cast<std::size_t>(l * config.rbs + targets[static_cast<std::size_t>(i)]);
      out[dst] = grid.at(i, l);
    }
  }
  return {config, std::move(out)};
}

DemappedStreams demap(const SpaceFreqGrid& grid, std::span<const LayerPermutation> perms, const MapperConfig& config) {
  if (grid.config() != config) throw CorruptionError("grid was built with a different mapper config");
  const RbCounts counts = rb_counts(config);
  const auto by_layer = index_by_layer(perms, config);

  DemappedStreams out;
  out.haptic.reserve(static_cast<std::size_t>(counts.haptic));
  out.video.reserve(static_cast<std::size_t>(counts.video));
  for (int l = 0; l < config.layers; ++l) {
    const auto targets = by_layer[static_cast<std::size_t>(l)]->targets();
    for (int i = 0; i < config.rbs; ++i) {
      const RbBlock& b = grid.at(targets[static_cast<std::size_t>(i)], l);
      const auto p = static_cast<std::size_t>(l * config.rbs + i);
      const Stream expected = canonical_tag(p, counts);
      if (b.tag() != expected)
        throw CorruptionError(fmt::format("RB {} of layer {} is tagged {}, mapping puts {} there",
                                          targets[static_cast<std::size_t>(i)], l, to_string(b.tag()), to_string(expected)));
      (expected == Stream::Haptic ? out.haptic : out.video).push_back(b);
    }
  }
  return out;
}

}  // namespace mmct::frame
