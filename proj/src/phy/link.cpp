// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#include "mmct/phy/link.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "mmct/error.hpp"
#include "mmct/mimo_channel.hpp"
#include "mmct/parallel.hpp"
#include "mmct/phy/codec.hpp"
#include "mmct/phy/modulation.hpp"
#include "mmct/rng.hpp"

namespace mmct::phy {

namespace {

using cd = std::complex<double>;

// Seed domains.
constexpr std::uint64_t kChannelDomain = 1;
constexpr std::uint64_t kPayloadDomain = 2;
constexpr std::uint64_t kNoiseDomain = 3;

constexpr std::size_t kTrialChunk = 16;

enum Tx : int { kJoint, kSplit, kLow, kMmct, kTxCount };
enum StreamIdx : int { kH, kV };

struct Counter {
  std::int64_t blocks = 0;
  std::int64_t block_errors = 0;
  std::int64_t bits = 0;
  std::int64_t bit_errors = 0;

  void add(const Counter& o) {
    blocks += o.blocks;
    block_errors += o.block_errors;
    bits += o.bits;
    bit_errors += o.bit_errors;
  }
};

// counters[tx][stream][snr]
struct Tally {
  std::vector<Counter> c;
  std::size_t points = 0;

  explicit Tally(std::size_t n) : c(static_cast<std::size_t>(kTxCount) * 2 * n), points(n) {}
  Counter& at(int tx, int stream, std::size_t p) {
    return c[(static_cast<std::size_t>(tx) * 2 + static_cast<std::size_t>(stream)) * points + p];
  }
  void add(const Tally& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i].add(o.c[i]);
  }
};

int ceil_fraction(double f, int n) {
  return static_cast<int>(std::ceil(f * n - 1e-9));
}

void check_fit(const char* what, std::size_t info, int res, int order) {
  if (res <= 0 && info > 0)
    throw ConfigError(fmt::format("{}: {} payload bits but no resource elements allocated", what, info));
  if (info == 0) return;
  const std::size_t coded = static_cast<std::size_t>(res) * static_cast<std::size_t>(order);
  const double rate = static_cast<double>(info + kCrcBits) / static_cast<double>(coded);
  if (rate > kMaxCodeRate) {
    const auto needed = static_cast<long long>(std::ceil(static_cast<double>(info + kCrcBits) / (kMaxCodeRate * order)));
    throw ConfigError(fmt::format("{}: resource overflow, {} payload bits need {} REs at {} bits/symbol, {} available",
                                  what, info, needed, order, res));
  }
}

// Per-RB effective channel G = H P (n_r x L) and its ZF inverse.
struct RbLink {
  std::vector<cd> G;       // row-major n_r x L
  std::vector<cd> W;       // row-major L x n_r
  std::vector<double> nv;  // diag (G^H G)^{-1}
  std::vector<double> gain;  // sigma_l^2 / L
};

struct Geometry {
  int rbs = 0;
  int layers = 0;
  int res = 0;  // REs per RB
  int n_r = 0;

  std::size_t slots() const { return static_cast<std::size_t>(rbs) * static_cast<std::size_t>(res) * static_cast<std::size_t>(layers); }
  std::size_t slots_per_rb() const { return static_cast<std::size_t>(res) * static_cast<std::size_t>(layers); }
};

std::vector<RbLink> draw_channels(const LinkConfig& cfg, const channel::CorrelationModel& corr, std::uint64_t trial) {
  auto eng = rng::engine(cfg.seed, kChannelDomain, trial);
  const int L = cfg.mapper.layers;
  std::vector<RbLink> out(static_cast<std::size_t>(cfg.mapper.rbs));
  for (auto& rb : out) {
    const auto ch = channel::sample_channel(cfg.n_t, cfg.n_r, corr, eng);
    const auto [f, p] = channel::svd_precode(ch, L, false);
    const channel::CMatrix G = ch.H * p.P;
    const channel::CMatrix gram_inv = (G.adjoint() * G).inverse();
    const channel::CMatrix W = gram_inv * G.adjoint();
    rb.G.resize(static_cast<std::size_t>(cfg.n_r * L));
    rb.W.resize(static_cast<std::size_t>(cfg.n_r * L));
    rb.nv.resize(static_cast<std::size_t>(L));
    rb.gain.resize(static_cast<std::size_t>(L));
    for (int a = 0; a < cfg.n_r; ++a)
      for (int l = 0; l < L; ++l) {
        rb.G[static_cast<std::size_t>(a * L + l)] = G(a, l);
        rb.W[static_cast<std::size_t>(l * cfg.n_r + a)] = W(l, a);
      }
    for (int l = 0; l < L; ++l) {
      rb.nv[static_cast<std::size_t>(l)] = gram_inv(l, l).real();
      rb.gain[static_cast<std::size_t>(l)] = f.sigma(l) * f.sigma(l) / L;
    }
  }
  return out;
}

// y = G x + n, x_hat = W y on the slots of RBs [rb0, rb1). Slot index is
// (rb * res + re) * L + layer; noise index (rb * res + re) * n_r + antenna.
void equalize(const Geometry& g, std::span<const RbLink> links, std::span<const cd> tx, std::span<const cd> noise,
              double n0, int rb0, int rb1, std::span<cd> rx, std::span<double> nv) {
  const double sd = std::sqrt(n0);
  std::vector<cd> y(static_cast<std::size_t>(g.n_r));
  for (int rb = rb0; rb < rb1; ++rb) {
    const RbLink& ln = links[static_cast<std::size_t>(rb)];
    for (int re = 0; re < g.res; ++re) {
      const std::size_t cell = static_cast<std::size_t>(rb) * static_cast<std::size_t>(g.res) + static_cast<std::size_t>(re);
      const std::size_t s0 = cell * static_cast<std::size_t>(g.layers);
      for (int a = 0; a < g.n_r; ++a) {
        cd acc = sd * noise[cell * static_cast<std::size_t>(g.n_r) + static_cast<std::size_t>(a)];
        for (int l = 0; l < g.layers; ++l) acc += ln.G[static_cast<std::size_t>(a * g.layers + l)] * tx[s0 + static_cast<std::size_t>(l)];
        y[static_cast<std::size_t>(a)] = acc;
      }
      for (int l = 0; l < g.layers; ++l) {
        cd acc{};
        for (int a = 0; a < g.n_r; ++a) acc += ln.W[static_cast<std::size_t>(l * g.n_r + a)] * y[static_cast<std::size_t>(a)];
        rx[s0 + static_cast<std::size_t>(l)] = acc;
        nv[s0 + static_cast<std::size_t>(l)] = n0 * ln.nv[static_cast<std::size_t>(l)];
      }
    }
  }
}

Bits random_bits(rng::Engine& eng, std::size_t n) {
  Bits b(n);
  std::size_t i = 0;
  while (i < n) {
    std::uint64_t w = eng();
    for (int k = 0; k < 64 && i < n; ++k, ++i) {
      b[i] = static_cast<std::uint8_t>(w & 1u);
      w >>= 1;
    }
  }
  return b;
}

std::vector<frame::RbBlock> to_blocks(std::span<const cd> symbols, const frame::MapperConfig& m, frame::Stream tag) {
  const auto per = static_cast<std::size_t>(m.res_per_rb());
  std::vector<frame::RbBlock> out;
  out.reserve(symbols.size() / per);
  for (std::size_t off = 0; off < symbols.size(); off += per)
    out.emplace_back(std::vector<cd>(symbols.begin() + static_cast<std::ptrdiff_t>(off),
                                     symbols.begin() + static_cast<std::ptrdiff_t>(off + per)),
                     m.subcarriers, m.symbols, tag);
  return out;
}

std::vector<cd> from_blocks(std::span<const frame::RbBlock> blocks) {
  std::vector<cd> out;
  for (const auto& b : blocks) out.insert(out.end(), b.data().begin(), b.data().end());
  return out;
}

// Grid <-> slot vector (rb-major, then RE, then layer).
void grid_to_slots(const frame::SpaceFreqGrid& grid, std::span<cd> slots) {
  const auto& m = grid.config();
  const int res = m.res_per_rb();
  for (int rb = 0; rb < m.rbs; ++rb)
    for (int l = 0; l < m.layers; ++l) {
      const auto data = grid.at(rb, l).data();
      for (int re = 0; re < res; ++re)
        slots[(static_cast<std::size_t>(rb) * static_cast<std::size_t>(res) + static_cast<std::size_t>(re)) *
                  static_cast<std::size_t>(m.layers) + static_cast<std::size_t>(l)] = data[static_cast<std::size_t>(re)];
    }
}

frame::SpaceFreqGrid slots_to_grid(std::span<const cd> slots, const frame::SpaceFreqGrid& tags) {
  const auto& m = tags.config();
  const int res = m.res_per_rb();
  std::vector<frame::RbBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(m.total_rbs()));
  for (int l = 0; l < m.layers; ++l)
    for (int rb = 0; rb < m.rbs; ++rb) {
      std::vector<cd> data(static_cast<std::size_t>(res));
      for (int re = 0; re < res; ++re)
        data[static_cast<std::size_t>(re)] =
            slots[(static_cast<std::size_t>(rb) * static_cast<std::size_t>(res) + static_cast<std::size_t>(re)) *
                      static_cast<std::size_t>(m.layers) + static_cast<std::size_t>(l)];
      blocks.emplace_back(std::move(data), m.subcarriers, m.symbols, tags.at(rb, l).tag());
    }
  return frame::SpaceFreqGrid(m, std::move(blocks));
}

struct Decoded {
  bool block_error = false;
  std::int64_t bit_errors_head = 0;  // over the first `head` payload bits
  std::int64_t bit_errors_tail = 0;
};

Decoded decode_stream(const FecCodec& codec, std::span<const cd> symbols, std::span<const double> nv, int order,
                      const Bits& payload, std::size_t head) {
  const auto llr = soft_demodulate(symbols, nv, order);
  const auto res = codec.decode(llr, payload.size());
  Decoded d;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    const bool err = res.bits[i] != payload[i];
    if (!err) continue;
    d.block_error = true;
    if (i < head)
      ++d.bit_errors_head;
    else
      ++d.bit_errors_tail;
  }
  d.block_error = d.block_error || !res.crc_ok;
  return d;
}

void count(Counter& c, bool block_error, std::int64_t bit_errors, std::size_t bits) {
  c.blocks += 1;
  c.block_errors += block_error ? 1 : 0;
  c.bits += static_cast<std::int64_t>(bits);
  c.bit_errors += bit_errors;
}

struct Needs {
  bool tx[kTxCount] = {false, false, false, false};
};

Needs needs_for(std::span<const LinkScheme> schemes) {
  Needs n;
  for (auto s : schemes) switch (s) {
      case LinkScheme::NrHapticAlone:
      case LinkScheme::NrVideoAlone: n.tx[kSplit] = true; break;
      case LinkScheme::NrJoint: n.tx[kJoint] = true; break;
      case LinkScheme::NrHapticLowMcs: n.tx[kLow] = n.tx[kSplit] = true; break;
      case LinkScheme::MmctHaptic:
      case LinkScheme::MmctVideo: n.tx[kMmct] = true; break;
    }
  return n;
}

double ratio(std::int64_t num, std::int64_t den) {
  return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

std::string_view to_string(LinkScheme s) {
  switch (s) {
    case LinkScheme::NrHapticAlone: return "nr-haptic-alone";
    case LinkScheme::NrVideoAlone: return "nr-video-alone";
    case LinkScheme::NrJoint: return "nr-joint";
    case LinkScheme::NrHapticLowMcs: return "nr-haptic-low-mcs";
    case LinkScheme::MmctHaptic: return "mmct-haptic";
    case LinkScheme::MmctVideo: return "mmct-video";
  }
  return "?";
}

LinkScheme link_scheme_from_string(std::string_view name) {
  for (auto s : kAllSchemes)
    if (to_string(s) == name) return s;
  throw ConfigError(fmt::format("unknown link scheme '{}'", name));
}

bool is_haptic_scheme(LinkScheme s) {
  return s == LinkScheme::NrHapticAlone || s == LinkScheme::NrHapticLowMcs || s == LinkScheme::MmctHaptic;
}

std::vector<double> LinkResult::bler() const {
  std::vector<double> out;
  out.reserve(points.size());
  const bool h = is_haptic_scheme(scheme);
  for (const auto& p : points) out.push_back(h ? p.bler_h : p.bler_v);
  return out;
}

void LinkConfig::validate() const {
  mapper.validate();
  for (int idx : {mcs_h, mcs_v, mcs_low}) mcs_by_index(idx);
  if (!(haptic_fraction >= 0.0 && haptic_fraction < 1.0))
    throw ConfigError(fmt::format("haptic_fraction must be in [0, 1) (got {})", haptic_fraction));
  if (n_t < 1) throw ConfigError(fmt::format("n_t must be >= 1 (got {})", n_t));
  if (n_r < 1) throw ConfigError(fmt::format("n_r must be >= 1 (got {})", n_r));
  if (mapper.layers > std::min(n_t, n_r))
    throw ConfigError(fmt::format("layers ({}) exceed min(n_t, n_r) = {}", mapper.layers, std::min(n_t, n_r)));
  if (n_r != 2 && !(std::abs(theta - std::numbers::pi / 2) < 1e-15))
    throw ConfigError("theta: the angle correlation model needs n_r = 2");
  if (!(theta > -std::numbers::pi / 2 && theta <= std::numbers::pi / 2))
    throw ConfigError(fmt::format("theta must be in (-pi/2, pi/2] (got {})", theta));
  if (snr_grid_db.empty()) throw ConfigError("snr_grid must be non-empty");
  for (double s : snr_grid_db)
    if (!std::isfinite(s)) throw ConfigError("snr_grid entries must be finite");
  if (trials < 1) throw ConfigError(fmt::format("trials must be >= 1 (got {})", trials));
}

int split_haptic_rbs(const LinkConfig& config) {
  return ceil_fraction(config.haptic_fraction, config.mapper.rbs);
}

Payload plan_payload(const LinkConfig& config) {
  const auto& m = config.mapper;
  const McsEntry& mh = mcs_by_index(config.mcs_h);
  const McsEntry& mv = mcs_by_index(config.mcs_v);
  const int res = m.res_per_rb();
  const int all_res = m.total_rbs() * res;

  const auto budget = static_cast<std::int64_t>(std::floor(mv.code_rate * static_cast<double>(all_res) * mv.modulation_order));
  const auto haptic_share = static_cast<std::int64_t>(std::llround(config.haptic_fraction * static_cast<double>(budget)));
  Payload p;
  if (haptic_share > 0) {
    if (haptic_share <= kCrcBits) throw ConfigError("haptic_fraction leaves no room for a haptic payload");
    p.haptic = static_cast<std::size_t>(haptic_share - kCrcBits);
  }
  if (budget - haptic_share - kCrcBits < 1) throw ConfigError("video payload is empty");
  p.video = static_cast<std::size_t>(budget - haptic_share - kCrcBits);

  check_fit("nr-joint", p.haptic + p.video, all_res, mv.modulation_order);

  const auto counts = frame::rb_counts(m);
  check_fit("mmct haptic", p.haptic, counts.haptic * res, mh.modulation_order);
  check_fit("mmct video", p.video, counts.video * res, mv.modulation_order);

  const int bh = split_haptic_rbs(config);
  check_fit("nr split haptic", p.haptic, bh * m.layers * res, mh.modulation_order);
  check_fit("nr split video", p.video, (m.rbs - bh) * m.layers * res, mv.modulation_order);

  if (p.haptic > 0) {
    const McsEntry& ml = mcs_by_index(config.mcs_low);
    p.haptic_low_mcs = transport_block_size(ml, static_cast<std::size_t>(bh * m.layers * res * ml.modulation_order));
  }
  return p;
}

std::map<LinkScheme, LinkResult> run_schemes(const LinkConfig& config, std::span<const LinkScheme> schemes) {
  config.validate();
  const Payload pay = plan_payload(config);
  const Needs need = needs_for(schemes);
  const auto& m = config.mapper;

  const Geometry geo{m.rbs, m.layers, m.res_per_rb(), config.n_r};
  const int bh = split_haptic_rbs(config);
  const int qh = mcs_by_index(config.mcs_h).modulation_order;
  const int qv = mcs_by_index(config.mcs_v).modulation_order;
  const int ql = mcs_by_index(config.mcs_low).modulation_order;
  const auto counts = frame::rb_counts(m);
  const std::size_t split_h_slots = static_cast<std::size_t>(bh) * geo.slots_per_rb();
  const std::size_t split_v_slots = geo.slots() - split_h_slots;
  const bool has_h = pay.haptic > 0;

  const auto corr = channel::CorrelationModel::from_angle(config.theta, config.n_t);
  const auto codec = make_default_codec();
  const std::size_t npts = config.snr_grid_db.size();
  const std::size_t trials = static_cast<std::size_t>(config.trials);

  std::vector<Tally> partial(chunk_count(trials, kTrialChunk), Tally(npts));

  parallel_chunks(trials, kTrialChunk, config.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Tally& tally = partial[chunk];
    std::vector<cd> noise(static_cast<std::size_t>(m.rbs) * static_cast<std::size_t>(geo.res) * static_cast<std::size_t>(config.n_r));
    std::vector<cd> rx(geo.slots());
    std::vector<double> nv(geo.slots());

    for (std::size_t trial = begin; trial < end; ++trial) {
      const auto links = draw_channels(config, corr, trial);

      auto beng = rng::engine(config.seed, kPayloadDomain, trial);
      const Bits bits_h = random_bits(beng, pay.haptic);
      const Bits bits_v = random_bits(beng, pay.video);
      const Bits bits_low = random_bits(beng, pay.haptic_low_mcs);

      // Transmit slot vectors, fixed across SNR points.
      std::vector<cd> tx_joint, tx_split, tx_low, tx_mmct;
      Bits bits_joint;
      if (need.tx[kJoint]) {
        bits_joint = bits_h;
        bits_joint.insert(bits_joint.end(), bits_v.begin(), bits_v.end());
        tx_joint = modulate(codec->encode(bits_joint, geo.slots() * static_cast<std::size_t>(qv)), qv);
      }
      if (need.tx[kSplit]) {
        tx_split.reserve(geo.slots());
        if (has_h) tx_split = modulate(codec->encode(bits_h, split_h_slots * static_cast<std::size_t>(qh)), qh);
        const auto sv = modulate(codec->encode(bits_v, split_v_slots * static_cast<std::size_t>(qv)), qv);
        tx_split.insert(tx_split.end(), sv.begin(), sv.end());
      }
      if (need.tx[kLow] && has_h) tx_low = modulate(codec->encode(bits_low, split_h_slots * static_cast<std::size_t>(ql)), ql);

      std::vector<frame::LayerPermutation> perms;
      std::optional<frame::SpaceFreqGrid> grid;
      if (need.tx[kMmct]) {
        std::vector<cd> sh;
        if (has_h) sh = modulate(codec->encode(bits_h, static_cast<std::size_t>(counts.haptic * geo.res * qh)), qh);
        const auto sv = modulate(codec->encode(bits_v, static_cast<std::size_t>(counts.video * geo.res * qv)), qv);
        std::vector<double> gains(static_cast<std::size_t>(m.total_rbs()));
        for (int l = 0; l < m.layers; ++l)
          for (int rb = 0; rb < m.rbs; ++rb)
            gains[static_cast<std::size_t>(l * m.rbs + rb)] =
                std::max(links[static_cast<std::size_t>(rb)].gain[static_cast<std::size_t>(l)], DBL_MIN);
        perms = frame::build_permutations(frame::SnrMap(m.rbs, m.layers, std::move(gains)), m);
        grid = frame::apply_permutation(
            frame::map_layers(to_blocks(sh, m, frame::Stream::Haptic), to_blocks(sv, m, frame::Stream::Video), m), perms);
        tx_mmct.resize(geo.slots());
        grid_to_slots(*grid, tx_mmct);
      }

      for (std::size_t pi = 0; pi < npts; ++pi) {
        const double snr_db = config.snr_grid_db[pi];
        const double n0 = static_cast<double>(config.n_t) / std::pow(10.0, snr_db / 10.0);
        auto neng = rng::engine(config.seed, kNoiseDomain, std::bit_cast<std::uint64_t>(snr_db), trial);
        rng::ComplexGaussian cg(1.0);
        for (auto& z : noise) z = cg(neng);

        const std::span<const cd> rxs(rx);
        const std::span<const double> nvs(nv);

        if (need.tx[kJoint]) {
          equalize(geo, links, tx_joint, noise, n0, 0, m.rbs, rx, nv);
          const auto d = decode_stream(*codec, rxs, nvs, qv, bits_joint, pay.haptic);
          if (has_h) count(tally.at(kJoint, kH, pi), d.block_error, d.bit_errors_head, pay.haptic);
          count(tally.at(kJoint, kV, pi), d.block_error, d.bit_errors_tail, pay.video);
        }
        if (need.tx[kSplit]) {
          equalize(geo, links, tx_split, noise, n0, 0, m.rbs, rx, nv);
          if (has_h) {
            const auto d = decode_stream(*codec, rxs.first(split_h_slots), nvs.first(split_h_slots), qh, bits_h, 0);
            count(tally.at(kSplit, kH, pi), d.block_error, d.bit_errors_tail, pay.haptic);
          }
          const auto d = decode_stream(*codec, rxs.subspan(split_h_slots), nvs.subspan(split_h_slots), qv, bits_v, 0);
          count(tally.at(kSplit, kV, pi), d.block_error, d.bit_errors_tail, pay.video);
        }
        if (need.tx[kLow] && has_h) {
          equalize(geo, links, tx_low, noise, n0, 0, bh, rx, nv);
          const auto d = decode_stream(*codec, rxs.first(split_h_slots), nvs.first(split_h_slots), ql, bits_low, 0);
          count(tally.at(kLow, kH, pi), d.block_error, d.bit_errors_tail, pay.haptic_low_mcs);
        }
        if (need.tx[kMmct]) {
          equalize(geo, links, tx_mmct, noise, n0, 0, m.rbs, rx, nv);
          const auto sym = frame::demap(slots_to_grid(rxs, *grid), perms, m);
          std::vector<cd> nv_c(nv.begin(), nv.end());
          const auto var = frame::demap(slots_to_grid(nv_c, *grid), perms, m);
          auto real_parts = [](std::span<const frame::RbBlock> blocks) {
            std::vector<double> out;
            for (const auto& b : blocks)
              for (const auto& z : b.data()) out.push_back(z.real());
            return out;
          };
          if (has_h) {
            const auto d = decode_stream(*codec, from_blocks(sym.haptic), real_parts(var.haptic), qh, bits_h, 0);
            count(tally.at(kMmct, kH, pi), d.block_error, d.bit_errors_tail, pay.haptic);
          }
          const auto d = decode_stream(*codec, from_blocks(sym.video), real_parts(var.video), qv, bits_v, 0);
          count(tally.at(kMmct, kV, pi), d.block_error, d.bit_errors_tail, pay.video);
        }
      }
    }
  });

  Tally total(npts);
  for (const auto& t : partial) total.add(t);

  std::map<LinkScheme, LinkResult> out;
  for (auto s : schemes) {
    int txh = kSplit, txv = kSplit;
    switch (s) {
      case LinkScheme::NrHapticAlone:
      case LinkScheme::NrVideoAlone: break;
      case LinkScheme::NrJoint: txh = txv = kJoint; break;
      case LinkScheme::NrHapticLowMcs: txh = kLow; break;
      case LinkScheme::MmctHaptic:
      case LinkScheme::MmctVideo: txh = txv = kMmct; break;
    }
    LinkResult r;
    r.scheme = s;
    for (std::size_t pi = 0; pi < npts; ++pi) {
      const Counter& h = total.at(txh, kH, pi);
      const Counter& v = total.at(txv, kV, pi);
      LinkPoint p;
      p.snr_db = config.snr_grid_db[pi];
      p.bler_h = ratio(h.block_errors, h.blocks);
      p.ber_h = ratio(h.bit_errors, h.bits);
      p.bler_v = ratio(v.block_errors, v.blocks);
      p.ber_v = ratio(v.bit_errors, v.bits);
      p.blocks_counted = config.trials;
      r.points.push_back(p);
    }
    out.emplace(s, std::move(r));
  }
  return out;
}

LinkResult run_scenario(const LinkScenario& scenario) {
  const LinkScheme one[] = {scenario.scheme};
  return run_schemes(scenario.config, one).at(scenario.scheme);
}

}  // namespace mmct::phy
