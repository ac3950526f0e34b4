#include <doctest.h>

#include <set>

#include "helpers.hpp"

using namespace lsskit;
using namespace lsskit::testing;

namespace {

// Brute-force bounded-set oracle: seed with singletons and generator
// elements, close under overlapping unions, and test membership by subset.
std::set<std::uint64_t> oracle_bounded_masks(const GroundPtr& g, const std::vector<Scale>& gens) {
  std::set<std::uint64_t> family;
  for (std::uint32_t x = 0; x < g->size(); ++x) family.insert(std::uint64_t(1) << x);
  for (const auto& gen : gens) {
    for (const auto& e : gen.elements()) {
      std::uint64_t m = 0;
      for (auto id : e.ids()) m |= std::uint64_t(1) << id;
      family.insert(m);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::uint64_t> items(family.begin(), family.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        if (items[i] & items[j]) {
          changed |= family.insert(items[i] | items[j]).second;
        }
      }
    }
  }
  return family;
}

bool oracle_is_bounded(const std::set<std::uint64_t>& family, std::uint64_t mask) {
  if (mask == 0) return false;
  for (auto m : family) {
    if ((mask & ~m) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("singleton generators give the discrete structure") {
  auto g = make_ground({"a", "b", "c"});
  auto space = build_lss(g, {singleton_cover(g)});
  CHECK(space.maximal_bounded() == static_cast<const SetFamily&>(singleton_cover(g)));
  CHECK(space.component_count() == 3);
}

TEST_CASE("overlapping unit balls along a path merge into one bounded block") {
  PathFixture p5(5);
  auto space = build_lss(p5.space->ground(), {p5.balls1});
  REQUIRE(space.component_count() == 1);
  CHECK(space.component(0) == Subset::full(p5.space->ground()));
}

TEST_CASE("disjoint generator elements stay separate") {
  ComponentsFixture d23;
  auto g = d23.ground();
  auto comp_scale = scale_of(g, {{0, 1}, {2, 3, 4}});
  auto space = build_lss(g, {comp_scale});
  CHECK(space.maximal_bounded() == static_cast<const SetFamily&>(comp_scale));
  CHECK_FALSE(space.is_bounded(sub(g, {0, 2})));  // {a1, b1}
  CHECK(space.is_bounded(sub(g, {2, 4})));
}

TEST_CASE("bounded-set lattice matches the closure oracle") {
  Rng rng(7101);
  for (int trial = 0; trial < 40; ++trial) {
    auto rs = random_space(rng, 6);
    auto g = rs.space->ground();
    auto oracle = oracle_bounded_masks(g, rs.space->generators());
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << g->size()); ++mask) {
      std::vector<std::uint32_t> ids;
      for (std::uint32_t b = 0; b < g->size(); ++b) {
        if (mask & (std::uint64_t(1) << b)) ids.push_back(b);
      }
      CHECK(rs.space->is_bounded(Subset(g, ids)) == oracle_is_bounded(oracle, mask));
    }
  }
}

TEST_CASE("uniform boundedness disregards one-point sets") {
  ComponentsFixture d23;
  auto g = d23.ground();
  CHECK(is_uniformly_bounded(singleton_cover(g), *d23.space).uniformly_bounded);

  auto crossing = family_of(g, {{0, 2}});
  auto report = is_uniformly_bounded(crossing, *d23.space);
  CHECK_FALSE(report.uniformly_bounded);
  CHECK(report.offender == 0);

  auto comp_report = is_uniformly_bounded(d23.comp, *d23.space);
  REQUIRE(comp_report.uniformly_bounded);
  REQUIRE(comp_report.dominated_by.size() == d23.comp.size());
  for (std::uint32_t i = 0; i < d23.comp.size(); ++i) {
    REQUIRE(comp_report.dominated_by[i].has_value());
    CHECK(is_subset(d23.comp.element(i), d23.space->component(*comp_report.dominated_by[i])));
  }
}

TEST_CASE("star of two uniformly bounded families is uniformly bounded") {
  Rng rng(7102);
  for (int trial = 0; trial < 40; ++trial) {
    auto rs = random_space(rng, 8);
    auto u = random_bounded_scale(rs, rng);
    auto v = random_bounded_scale(rs, rng);
    CHECK(is_uniformly_bounded(star_family(u, v), *rs.space).uniformly_bounded);
    for (const auto& gen_u : rs.space->generators()) {
      for (const auto& gen_v : rs.space->generators()) {
        SetFamily starred = star_family(gen_u, gen_v);
        for (const auto& e : starred.elements()) {
          CHECK(rs.space->is_bounded(e));
        }
      }
    }
  }
}

TEST_CASE("subspace over the whole set preserves the bounded sets") {
  ComponentsFixture d23;
  auto whole = subspace(*d23.space, Subset::full(d23.ground()));
  CHECK(whole.maximal_bounded().size() == d23.space->maximal_bounded().size());
  for (std::uint32_t i = 0; i < whole.maximal_bounded().size(); ++i) {
    CHECK(whole.maximal_bounded().element(i).ids() == d23.space->maximal_bounded().element(i).ids());
  }
}

TEST_CASE("subspace of one group keeps it bounded") {
  ComponentsFixture d23;
  auto sub_space = subspace(*d23.space, sub(d23.ground(), {0, 1}));
  REQUIRE(sub_space.component_count() == 1);
  CHECK(sub_space.component(0).count() == 2);
}

TEST_CASE("subspace crossing two groups splits into points") {
  ComponentsFixture d23;
  auto sub_space = subspace(*d23.space, sub(d23.ground(), {0, 2}));
  CHECK(sub_space.component_count() == 2);
}

TEST_CASE("subspace of an empty subset is rejected") {
  ComponentsFixture d23;
  CHECK_THROWS_AS(subspace(*d23.space, Subset::empty(d23.ground())), PreconditionError);
}

TEST_CASE("traces of parent-bounded sets stay bounded in the subspace") {
  // A family on Y is uniformly bounded in the subspace exactly when some
  // uniformly bounded family upstairs traces to a coarsening of it, which on
  // the lattice model means its elements fit inside traces of parent blocks.
  Rng rng(7103);
  for (int trial = 0; trial < 40; ++trial) {
    auto rs = random_space(rng, 6);
    auto g = rs.space->ground();
    std::vector<std::uint32_t> y_ids;
    for (std::uint32_t x = 0; x < g->size(); ++x) {
      if (std::uniform_int_distribution<int>(0, 1)(rng)) y_ids.push_back(x);
    }
    if (y_ids.empty()) continue;
    Subset y(g, y_ids);
    auto sub_space = subspace(*rs.space, y);
    auto sub_ground = sub_space.ground();

    auto probe = random_scale(sub_ground, rng);
    bool lhs = is_uniformly_bounded(probe, sub_space).uniformly_bounded;

    bool rhs = true;
    for (const auto& e : probe.elements()) {
      if (e.count() < 2) continue;
      bool inside_some_trace = false;
      for (const auto& block : rs.space->maximal_bounded().elements()) {
        Bitset trace(sub_ground->size());
        for (std::uint32_t ni = 0; ni < y_ids.size(); ++ni) {
          if (block.contains(y_ids[ni])) trace.set(ni);
        }
        if (e.bits().is_subset_of(trace)) inside_some_trace = true;
      }
      rhs = rhs && inside_some_trace;
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("metric with no finite links is discrete") {
  auto g = make_ground({"a", "b", "c"});
  std::vector<std::vector<std::uint64_t>> d = {
      {0, kInfDist, kInfDist}, {kInfDist, 0, kInfDist}, {kInfDist, kInfDist, 0}};
  auto space = metric_lss(InfMetric(g, d));
  CHECK(space.maximal_bounded() == static_cast<const SetFamily&>(singleton_cover(g)));
}

TEST_CASE("path metric is one bounded block") {
  PathFixture p5(5);
  REQUIRE(p5.space->component_count() == 1);
  CHECK(p5.space->component(0) == Subset::full(p5.space->ground()));
}

TEST_CASE("grouped metric keeps the groups as blocks") {
  ComponentsFixture d23;
  CHECK(d23.space->maximal_bounded() == static_cast<const SetFamily&>(
                                            scale_of(d23.ground(), {{0, 1}, {2, 3, 4}})));
}

TEST_CASE("metric boundedness is exactly finite diameter") {
  Rng rng(7104);
  for (int trial = 0; trial < 20; ++trial) {
    // Random graph metric: shortest-path distances, infinite across pieces.
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    auto g = make_ground(std::move(labels));
    std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kInfDist));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) d[i][j] = d[j][i] = 1;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (d[i][k] != kInfDist && d[k][j] != kInfDist) {
            d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
          }
        }
      }
    }
    InfMetric metric(g, d);
    auto space = metric_lss(metric);
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
      std::vector<std::uint32_t> ids;
      for (std::uint32_t b = 0; b < n; ++b) {
        if (mask & (std::uint64_t(1) << b)) ids.push_back(b);
      }
      Subset a(g, ids);
      CHECK(space.is_bounded(a) == (metric.diameter(a) != kInfDist));
    }
  }
}

TEST_CASE("metric invariants are enforced") {
  auto g = make_ground({"a", "b"});
  CHECK_THROWS_AS(InfMetric(g, {{0, 1}, {2, 0}}), InvariantError);       // asymmetric
  CHECK_THROWS_AS(InfMetric(g, {{1, 1}, {1, 0}}), InvariantError);       // diagonal
  CHECK_THROWS_AS(InfMetric(g, {{0, 0}, {0, 0}}), InvariantError);       // vanishing
  auto g3 = make_ground({"a", "b", "c"});
  CHECK_THROWS_AS(InfMetric(g3, {{0, 1, 9}, {1, 0, 1}, {9, 1, 0}}), InvariantError);  // triangle
}
