#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "lsskit/fixtures.hpp"
#include "lsskit/maps.hpp"
#include "lsskit/space.hpp"

namespace lsskit::testing {

using Rng = std::mt19937;

inline Subset sub(const GroundPtr& g, std::vector<std::uint32_t> ids) { return Subset(g, ids); }

inline Scale scale_of(const GroundPtr& g, const std::vector<std::vector<std::uint32_t>>& sets) {
  std::vector<Subset> elems;
  for (const auto& s : sets) elems.push_back(Subset(g, s));
  return Scale(g, std::move(elems));
}

inline SetFamily family_of(const GroundPtr& g, const std::vector<std::vector<std::uint32_t>>& sets) {
  std::vector<Subset> elems;
  for (const auto& s : sets) elems.push_back(Subset(g, s));
  return SetFamily(g, std::move(elems));
}

// Path fixture: metric space on {0..n-1} plus its radius-r ball covers.
struct PathFixture {
  InfMetric metric;
  SpacePtr space;
  Scale balls1;

  explicit PathFixture(std::size_t n)
      : metric(path_metric(n)),
        space(std::make_shared<const LssSpace>(metric_lss(metric))),
        balls1(ball_cover(metric, 1)) {}
};

// Two groups {a1,a2} and {b1,b2,b3} at infinite distance.
struct ComponentsFixture {
  InfMetric metric;
  SpacePtr space;
  Scale comp;

  ComponentsFixture()
      : metric(components_metric({2, 3})),
        space(std::make_shared<const LssSpace>(metric_lss(metric))),
        comp(space->maximal_bounded()) {}

  GroundPtr ground() const { return space->ground(); }
};

// Two points p, q at infinite distance.
inline SpacePtr two_point_space() {
  auto ground = make_ground({"p", "q"});
  return make_space(ground, {singleton_cover(ground)});
}

// ---- randomized instance generators (all deterministic under a seeded rng) --

inline std::vector<std::vector<std::uint32_t>> random_partition(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<std::size_t> blocks_dist(1, n);
  std::size_t blocks = blocks_dist(rng);
  std::vector<std::vector<std::uint32_t>> out(blocks);
  for (std::uint32_t x = 0; x < n; ++x) {
    out[std::uniform_int_distribution<std::size_t>(0, blocks - 1)(rng)].push_back(x);
  }
  std::erase_if(out, [](const auto& b) { return b.empty(); });
  return out;
}

// A space built from a random partition (its blocks become the maximal
// bounded sets) plus one extra random generator refining the partition.
struct RandomSpace {
  SpacePtr space;
  std::vector<std::vector<std::uint32_t>> blocks;
};

inline RandomSpace random_space(Rng& rng, std::size_t max_n = 8) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  auto ground = make_ground(std::move(labels));

  auto blocks = random_partition(n, rng);
  std::vector<Subset> block_sets;
  for (const auto& b : blocks) block_sets.push_back(Subset(ground, b));
  Scale partition(ground, block_sets);

  // A refining generator: random nonempty subsets of blocks, singleton-completed.
  std::vector<Subset> extra;
  for (const auto& b : blocks) {
    if (b.size() < 2) continue;
    std::vector<std::uint32_t> piece;
    for (auto x : b) {
      if (std::uniform_int_distribution<int>(0, 1)(rng)) piece.push_back(x);
    }
    if (!piece.empty()) extra.push_back(Subset(ground, piece));
  }
  for (std::uint32_t x = 0; x < n; ++x) extra.push_back(Subset::single(ground, x));

  return RandomSpace{make_space(ground, {partition, Scale(ground, std::move(extra))}),
                     std::move(blocks)};
}

// A uniformly bounded random scale: random pieces inside the blocks plus the
// singleton completion.
inline Scale random_bounded_scale(const RandomSpace& rs, Rng& rng) {
  const auto& ground = rs.space->ground();
  std::vector<Subset> elems;
  for (const auto& b : rs.blocks) {
    std::size_t pieces = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    for (std::size_t p = 0; p < pieces; ++p) {
      std::vector<std::uint32_t> piece;
      for (auto x : b) {
        if (std::uniform_int_distribution<int>(0, 1)(rng)) piece.push_back(x);
      }
      if (!piece.empty()) elems.push_back(Subset(ground, piece));
    }
  }
  for (std::uint32_t x = 0; x < ground->size(); ++x) elems.push_back(Subset::single(ground, x));
  return Scale(ground, std::move(elems));
}

// An arbitrary random scale (not necessarily uniformly bounded).
inline Scale random_scale(const GroundPtr& ground, Rng& rng) {
  std::size_t n = ground->size();
  std::size_t count = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(2, n))(rng);
  std::vector<Subset> elems;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::uint32_t> piece;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) piece.push_back(x);
    }
    if (!piece.empty()) elems.push_back(Subset(ground, piece));
  }
  for (std::uint32_t x = 0; x < n; ++x) elems.push_back(Subset::single(ground, x));
  return Scale(ground, std::move(elems));
}

inline SpaceMap random_map(const SpacePtr& src, const SpacePtr& tgt, Rng& rng) {
  std::vector<std::uint32_t> tbl(src->ground()->size());
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(tgt->ground()->size() - 1));
  for (auto& v : tbl) v = pick(rng);
  return SpaceMap(src, tgt, std::move(tbl));
}

// A random coarse equivalence: matched component counts, each source block
// mapped onto its partner block. When `surjective` is set every target point
// is hit (requires source blocks at least as large, which the construction
// arranges).
struct EquivalencePair {
  RandomSpace source;
  RandomSpace target;
  SpaceMap map;
};

inline EquivalencePair random_equivalence(Rng& rng, std::size_t max_n = 8, bool surjective = false) {
  std::size_t comp_count = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  auto make_side = [&](const std::vector<std::size_t>& sizes, const char* prefix) {
    std::vector<std::string> labels;
    std::vector<std::vector<std::uint32_t>> blocks;
    std::uint32_t next = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      std::vector<std::uint32_t> block;
      for (std::size_t i = 0; i < sizes[c]; ++i) {
        labels.push_back(std::string(prefix) + std::to_string(c) + "_" + std::to_string(i));
        block.push_back(next++);
      }
      blocks.push_back(std::move(block));
    }
    auto ground = make_ground(std::move(labels));
    std::vector<Subset> block_sets;
    for (const auto& b : blocks) block_sets.push_back(Subset(ground, b));
    return RandomSpace{make_space(ground, {Scale(ground, std::move(block_sets))}), std::move(blocks)};
  };

  std::size_t per_side = std::max<std::size_t>(1, max_n / comp_count);
  std::vector<std::size_t> src_sizes(comp_count), tgt_sizes(comp_count);
  for (std::size_t c = 0; c < comp_count; ++c) {
    std::size_t a = std::uniform_int_distribution<std::size_t>(1, per_side)(rng);
    std::size_t b = std::uniform_int_distribution<std::size_t>(1, per_side)(rng);
    if (surjective && a < b) std::swap(a, b);
    src_sizes[c] = a;
    tgt_sizes[c] = b;
  }

  auto source = make_side(src_sizes, "s");
  auto target = make_side(tgt_sizes, "t");

  std::vector<std::uint32_t> tbl(source.space->ground()->size());
  for (std::size_t c = 0; c < comp_count; ++c) {
    const auto& sb = source.blocks[c];
    const auto& tb = target.blocks[c];
    for (std::size_t i = 0; i < sb.size(); ++i) {
      if (surjective && i < tb.size()) {
        tbl[sb[i]] = tb[i];  // hit every target point first
      } else {
        tbl[sb[i]] = tb[std::uniform_int_distribution<std::size_t>(0, tb.size() - 1)(rng)];
      }
    }
  }
  SpaceMap f(source.space, target.space, std::move(tbl));
  return EquivalencePair{std::move(source), std::move(target), std::move(f)};
}

}  // namespace lsskit::testing
