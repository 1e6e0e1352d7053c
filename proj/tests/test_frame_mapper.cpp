// SPDX-License-Identifier: Apache-2.0
//
// Layer mapper and RB permutation.

#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>

#include "mmct/error.hpp"
#include "mmct/frame_mapper.hpp"

using namespace mmct::frame;
using mmct::ConfigError;
using mmct::CorruptionError;
using mmct::IndexError;
using mmct::MappingError;
using mmct::ValidationError;

namespace {

// Blocks are 1x1 and carry an id in the single symbol so order is visible.
MapperConfig small(int L, int Lh, int B, int B1) { return MapperConfig{L, Lh, B, B1, 1, 1}; }

RbBlock tagged(double id, Stream s, int ns = 1, int no = 1) {
  return RbBlock(std::vector<Symbol>(static_cast<std::size_t>(ns * no), Symbol(id, 0.0)), ns, no, s);
}

std::vector<RbBlock> ids(int first, int n, Stream s) {
  std::vector<RbBlock> out;
  for (int i = 0; i < n; ++i) out.push_back(tagged(first + i, s));
  return out;
}

double id_of(const RbBlock& b) { return b.data()[0].real(); }

std::vector<double> column(const SpaceFreqGrid& g, int layer) {
  std::vector<double> out;
  for (int b = 0; b < g.config().rbs; ++b) out.push_back(id_of(g.at(b, layer)));
  return out;
}

SnrMap snr_on_layer(const MapperConfig& c, int layer, const std::vector<double>& v) {
  std::vector<double> all(static_cast<std::size_t>(c.total_rbs()), 1.0);
  for (int b = 0; b < c.rbs; ++b) all[static_cast<std::size_t>(layer * c.rbs + b)] = v[static_cast<std::size_t>(b)];
  return SnrMap(c.rbs, c.layers, all);
}

// Independent placement oracle: row r is in the top-B_1 set iff fewer than
// B_1 rows beat it (higher SNR, or equal SNR and lower index).
std::set<int> top_rows(const std::vector<double>& snr, int b1) {
  std::set<int> out;
  const int B = static_cast<int>(snr.size());
  for (int r = 0; r < B; ++r) {
    int beaten_by = 0;
    for (int q = 0; q < B; ++q)
      if (snr[static_cast<std::size_t>(q)] > snr[static_cast<std::size_t>(r)] ||
          (snr[static_cast<std::size_t>(q)] == snr[static_cast<std::size_t>(r)] && q < r))
        ++beaten_by;
    if (beaten_by < b1) out.insert(r);
  }
  return out;
}

}  // namespace

TEST_CASE("rb_counts") {
  CHECK(rb_counts(MapperConfig{2, 1, 20, 4, 12, 12}) == RbCounts{4, 36});
  CHECK(rb_counts(MapperConfig{2, 2, 20, 20, 12, 12}) == RbCounts{40, 0});
  CHECK(rb_counts(MapperConfig{3, 2, 8, 3, 12, 12}) == RbCounts{11, 13});
  CHECK_THROWS_AS(rb_counts(MapperConfig{2, 3, 20, 4, 12, 12}), ConfigError);
  CHECK_THROWS_AS(rb_counts(MapperConfig{2, 1, 20, 21, 12, 12}), ConfigError);
  CHECK_THROWS_AS(rb_counts(MapperConfig{2, 1, 20, -1, 12, 12}), ConfigError);
}

TEST_CASE("map_layers fills column-major") {
  SUBCASE("haptic then video on the shared layer") {
    const auto c = small(2, 1, 8, 3);
    // a_h,b_h,c_h = 1,2,3; a_v..e_v = 11..15, then 16.. on layer 2
    const auto g = map_layers(ids(1, 3, Stream::Haptic), ids(11, 13, Stream::Video), c);
    CHECK(column(g, 0) == std::vector<double>{1, 2, 3, 11, 12, 13, 14, 15});
    CHECK(column(g, 1) == std::vector<double>{16, 17, 18, 19, 20, 21, 22, 23});
    CHECK(g.count(Stream::Haptic) == 3);
    CHECK(g.count(Stream::Video) == 13);
  }
  SUBCASE("B_1 = 0 leaves layer 1 video") {
    const auto c = small(2, 1, 4, 0);
    const auto g = map_layers({}, ids(1, 8, Stream::Video), c);
    for (int b = 0; b < 4; ++b) CHECK(g.at(b, 0).tag() == Stream::Video);
  }
  SUBCASE("two haptic layers") {
    const auto c = small(2, 2, 4, 2);
    const auto g = map_layers(ids(1, 6, Stream::Haptic), ids(11, 2, Stream::Video), c);
    for (int b = 0; b < 4; ++b) CHECK(g.at(b, 0).tag() == Stream::Haptic);
    CHECK(g.at(0, 1).tag() == Stream::Haptic);
    CHECK(g.at(1, 1).tag() == Stream::Haptic);
    CHECK(g.at(2, 1).tag() == Stream::Video);
    CHECK(g.at(3, 1).tag() == Stream::Video);
  }
  SUBCASE("errors") {
    const auto c = small(2, 1, 8, 3);
    CHECK_THROWS_AS(map_layers(ids(1, 2, Stream::Haptic), ids(11, 13, Stream::Video), c), MappingError);
    auto h = ids(1, 3, Stream::Haptic);
    h[1] = tagged(2, Stream::Haptic, 2, 1);
    CHECK_THROWS_AS(map_layers(h, ids(11, 13, Stream::Video), c), MappingError);
    CHECK_THROWS_AS(RbBlock(std::vector<Symbol>{Symbol(std::nan(""), 0)}, 1, 1, Stream::Video), MappingError);
  }
}

TEST_CASE("build_permutation: worked example") {
  const auto c = small(2, 1, 8, 3);
  // Top-SNR RBs (1-based) 1, 5, 6.
  const auto snr = snr_on_layer(c, 0, {9, 1, 2, 3, 8, 7, 0.5, 0.25});
  const auto p = build_permutation(snr, 0, c);
  CHECK(p.one_based() == std::vector<int>{1, 5, 6, 2, 3, 4, 7, 8});

  const auto g = map_layers(ids(1, 3, Stream::Haptic), ids(11, 13, Stream::Video), c);
  const std::vector<LayerPermutation> perms{p, build_permutation(snr, 1, c)};
  CHECK(perms[1].is_identity());
  const auto out = apply_permutation(g, perms);
  // (a_h, a_v, b_v, c_v, b_h, c_h, d_v, e_v)
  CHECK(column(out, 0) == std::vector<double>{1, 11, 12, 13, 2, 3, 14, 15});

  const int from[] = {1, 5, 6, 2, 3, 4, 7, 8};
  CHECK(LayerPermutation::from_one_based(1, from) == p);
  // Gather view of the same permutation.
  CHECK(p.order() == std::vector<int>{0, 3, 4, 5, 1, 2, 6, 7});
}

TEST_CASE("build_permutation: small cases") {
  SUBCASE("descending SNR gives identity") {
    const auto c = small(1, 1, 6, 2);
    CHECK(build_permutation(snr_on_layer(c, 0, {6, 5, 4, 3, 2, 1}), 0, c).is_identity());
  }
  SUBCASE("SNRs (1,4,2,3)") {
    const auto c = small(1, 1, 4, 2);
    const auto p = build_permutation(snr_on_layer(c, 0, {1, 4, 2, 3}), 0, c);
    CHECK(p.one_based() == std::vector<int>{2, 4, 1, 3});
  }
  SUBCASE("ties go to the lower RB") {
    const auto c = small(1, 1, 4, 2);
    const auto p = build_permutation(snr_on_layer(c, 0, {1, 2, 2, 2}), 0, c);
    CHECK(p.one_based() == std::vector<int>{2, 3, 1, 4});
  }
  SUBCASE("B_1 = B and B_1 = 0 give identity") {
    const auto full = small(2, 1, 4, 4);
    CHECK(build_permutation(snr_on_layer(full, 0, {1, 4, 2, 3}), 0, full).is_identity());
    const auto none = small(2, 1, 4, 0);
    CHECK(build_permutation(snr_on_layer(none, 0, {1, 4, 2, 3}), 0, none).is_identity());
  }
  SUBCASE("errors") {
    const auto c = small(2, 1, 4, 2);
    const auto snr = snr_on_layer(c, 0, {1, 4, 2, 3});
    CHECK_THROWS_AS(build_permutation(snr, 2, c), IndexError);
    CHECK_THROWS_AS(build_permutation(snr, -1, c), IndexError);
    CHECK_THROWS_AS(SnrMap(4, 2, {1, 2, 3, 0, 1, 1, 1, 1}), ValidationError);
    CHECK_THROWS_AS(SnrMap(4, 2, {1, 2, 3, -1, 1, 1, 1, 1}), ValidationError);
  }
}

TEST_CASE("apply_permutation") {
  const auto c = small(2, 1, 8, 3);
  const auto g = map_layers(ids(1, 3, Stream::Haptic), ids(11, 13, Stream::Video), c);
  const std::vector<LayerPermutation> id{LayerPermutation::identity(0, 8), LayerPermutation::identity(1, 8)};
  CHECK(apply_permutation(g, id) == g);

  const int t0[] = {1, 5, 6, 2, 3, 4, 7, 8};
  const int t1[] = {8, 7, 6, 5, 4, 3, 2, 1};
  const std::vector<LayerPermutation> p{LayerPermutation::from_one_based(1, t0), LayerPermutation::from_one_based(2, t1)};
  const std::vector<LayerPermutation> inv{p[0].inverse(), p[1].inverse()};
  CHECK(apply_permutation(apply_permutation(g, p), inv) == g);

  const std::vector<LayerPermutation> bad{LayerPermutation(0, {0, 0, 1, 2, 3, 4, 5, 6}), LayerPermutation::identity(1, 8)};
  CHECK_THROWS_AS(apply_permutation(g, bad), ValidationError);
  CHECK_THROWS_AS(LayerPermutation(0, {0, 2, 3}).validate(), ValidationError);
}

TEST_CASE("demap") {
  SUBCASE("worked example round trip") {
    const auto c = small(2, 1, 8, 3);
    const auto h = ids(1, 3, Stream::Haptic);
    const auto v = ids(11, 13, Stream::Video);
    const auto snr = snr_on_layer(c, 0, {9, 1, 2, 3, 8, 7, 0.5, 0.25});
    const auto perms = build_permutations(snr, c);
    const auto back = demap(apply_permutation(map_layers(h, v, c), perms), perms, c);
    CHECK(back.haptic == h);
    CHECK(back.video == v);
  }
  SUBCASE("random blocks, default config") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0.01, 10.0);
    const MapperConfig c{2, 1, 20, 4, 12, 12};
    for (int rep = 0; rep < 50; ++rep) {
      auto make = [&](int count, Stream s) {
        std::vector<RbBlock> out;
        for (int i = 0; i < count; ++i) {
          std::vector<Symbol> d(144);
          for (auto& z : d) z = Symbol(n(rng), n(rng));
          out.emplace_back(std::move(d), 12, 12, s);
        }
        return out;
      };
      const auto h = make(4, Stream::Haptic);
      const auto v = make(36, Stream::Video);
      std::vector<double> snr(40);
      for (auto& x : snr) x = u(rng);
      const auto perms = build_permutations(SnrMap(20, 2, snr), c);
      const auto back = demap(apply_permutation(map_layers(h, v, c), perms), perms, c);
      REQUIRE(back.haptic == h);
      REQUIRE(back.video == v);
    }
  }
  SUBCASE("tampered tag") {
    const auto c = small(2, 1, 8, 3);
    const auto perms = std::vector<LayerPermutation>{LayerPermutation::identity(0, 8), LayerPermutation::identity(1, 8)};
    auto g = map_layers(ids(1, 3, Stream::Haptic), ids(11, 13, Stream::Video), c);
    g.at(5, 0).set_tag(Stream::Haptic);
    CHECK_THROWS_AS(demap(g, perms, c), CorruptionError);
    const auto g2 = map_layers(ids(1, 3, Stream::Haptic), ids(11, 13, Stream::Video), c);
    CHECK_THROWS_AS(demap(g2, perms, small(2, 1, 8, 2)), CorruptionError);
  }
}

TEST_CASE("property: every SNR ordering, B <= 8") {
  // All rank orderings of distinct SNRs, every B_1.
  for (int B = 1; B <= 8; ++B) {
    std::vector<double> snr(static_cast<std::size_t>(B));
    std::iota(snr.begin(), snr.end(), 1.0);
    do {
      for (int b1 = 0; b1 <= B; ++b1) {
        const auto c = small(1, 1, B, b1);
        const auto p = build_permutation(snr_on_layer(c, 0, snr), 0, c);
        REQUIRE_NOTHROW(p.validate());
        std::set<int> haptic_rows;
        for (int i = 0; i < b1; ++i) haptic_rows.insert(p.targets()[static_cast<std::size_t>(i)]);
        REQUIRE(haptic_rows == top_rows(snr, b1));
      }
    } while (std::next_permutation(snr.begin(), snr.end()));
  }
}

TEST_CASE("property: ties, counts and round trip on random configs") {
  // Hand-rolled generator over (L, L_h, B, B_1) and small-alphabet SNRs
  // so ties are frequent.
  std::mt19937_64 rng(20260101);
  for (int rep = 0; rep < 3000; ++rep) {
    const int L = 1 + static_cast<int>(rng() % 4);
    const int Lh = 1 + static_cast<int>(rng() % static_cast<unsigned>(L));
    const int B = 1 + static_cast<int>(rng() % 10);
    const int B1 = static_cast<int>(rng() % static_cast<unsigned>(B + 1));
    const auto c = small(L, Lh, B, B1);
    const auto counts = rb_counts(c);
    REQUIRE(counts.haptic + counts.video == L * B);

    std::vector<double> snr(static_cast<std::size_t>(L * B));
    for (auto& s : snr) s = 1.0 + static_cast<double>(rng() % 3);
    const SnrMap map(B, L, snr);
    const auto perms = build_permutations(map, c);
    const auto h = ids(1, counts.haptic, Stream::Haptic);
    const auto v = ids(1000, counts.video, Stream::Video);
    const auto g = apply_permutation(map_layers(h, v, c), perms);
    REQUIRE(g.count(Stream::Haptic) == counts.haptic);
    REQUIRE(g.count(Stream::Video) == counts.video);

    if (c.has_shared_layer()) {
      std::vector<double> shared(static_cast<std::size_t>(B));
      for (int b = 0; b < B; ++b) shared[static_cast<std::size_t>(b)] = map.at(b, Lh - 1);
      std::set<int> rows;
      for (int b = 0; b < B; ++b)
        if (g.at(b, Lh - 1).tag() == Stream::Haptic) rows.insert(b);
      REQUIRE(rows == top_rows(shared, B1));
    }
    for (int l = 0; l < L; ++l)
      if (l != Lh - 1 || !c.has_shared_layer()) REQUIRE(perms[static_cast<std::size_t>(l)].is_identity());

    const auto back = demap(g, perms, c);
    REQUIRE(back.haptic == h);
    REQUIRE(back.video == v);
  }
}

TEST_CASE("property: video tail order does not move haptic blocks") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 500; ++rep) {
    const int B = 2 + static_cast<int>(rng() % 9);
    const int B1 = 1 + static_cast<int>(rng() % static_cast<unsigned>(B - 1));
    const auto c = small(2, 1, B, B1);
    std::vector<double> snr(static_cast<std::size_t>(B));
    for (auto& s : snr) s = static_cast<double>(1 + rng() % 1000);
    const auto p = build_permutation(snr_on_layer(c, 0, snr), 0, c);
    std::vector<int> t(p.targets().begin(), p.targets().end());
    std::shuffle(t.begin() + B1, t.end(), rng);
    const LayerPermutation q(0, t);

    const auto g = map_layers(ids(1, B1, Stream::Haptic), ids(100, 2 * B - B1, Stream::Video), c);
    const auto id1 = LayerPermutation::identity(1, B);
    const auto a = apply_permutation(g, std::vector<LayerPermutation>{p, id1});
    const auto b = apply_permutation(g, std::vector<LayerPermutation>{q, id1});
    for (int r = 0; r < B; ++r) {
      REQUIRE(a.at(r, 0).tag() == b.at(r, 0).tag());
      if (a.at(r, 0).tag() == Stream::Haptic) REQUIRE(a.at(r, 0) == b.at(r, 0));
    }
  }
}
