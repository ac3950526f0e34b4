#include <benchmark/benchmark.h>

#include "lsskit/coarse.hpp"
#include "lsskit/fixtures.hpp"
#include "lsskit/nets.hpp"
#include "lsskit/property_a.hpp"

using namespace lsskit;

namespace {

static void BM_StarFamily(benchmark::State& state) {
  auto metric = path_metric(static_cast<std::size_t>(state.range(0)));
  Scale balls = ball_cover(metric, 1);
  for (auto _ : state) {
    auto starred = star_family(balls, balls);
    benchmark::DoNotOptimize(starred);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StarFamily)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void BM_BuildSpace(benchmark::State& state) {
  auto metric = grid_metric(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    auto space = metric_lss(metric);
    benchmark::DoNotOptimize(space);
  }
}
BENCHMARK(BM_BuildSpace)->DenseRange(3, 7);

static void BM_EnumerateNets(benchmark::State& state) {
  auto metric = path_metric(static_cast<std::size_t>(state.range(0)));
  Scale balls = ball_cover(metric, 1);
  ProximityGraph graph(balls);
  Subset ambient = Subset::full(metric.ground());
  OracleLimits limits;
  limits.net_enumeration_ambient = 64;
  for (auto _ : state) {
    auto nets = enumerate_nets(ambient, graph, limits);
    benchmark::DoNotOptimize(nets);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumerateNets)->DenseRange(8, 24, 4)->Complexity();

static void BM_MinCover(benchmark::State& state) {
  auto metric = grid_metric(5, static_cast<std::size_t>(state.range(0)));
  Scale big = ball_cover(metric, 2);
  Scale small = ball_cover(metric, 1);
  OracleLimits limits;
  limits.cover_universe = 200;
  limits.cover_base = 200;
  for (auto _ : state) {
    auto cert = covering_number(big, small, limits);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_MinCover)->DenseRange(1, 3);

static void BM_CoarseClosure(benchmark::State& state) {
  auto metric = path_metric(static_cast<std::size_t>(state.range(0)));
  auto space = metric_lss(metric);
  for (auto _ : state) {
    auto cs = lss_to_coarse(space);
    benchmark::DoNotOptimize(cs);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CoarseClosure)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_TowerWitness(benchmark::State& state) {
  auto metric = path_metric(static_cast<std::size_t>(state.range(0)));
  auto space = metric_lss(metric);
  Scale balls = ball_cover(metric, 1);
  AsdimCertificate cert;
  cert.n = 1;
  for (std::size_t i = 0; i < space.generators().size(); ++i) {
    cert.coarsenings.push_back(space.maximal_bounded());
  }
  for (auto _ : state) {
    auto built = construct_witness_asdim(space, cert, Rational(5), balls);
    benchmark::DoNotOptimize(built);
  }
}
BENCHMARK(BM_TowerWitness)->DenseRange(25, 100, 25);

}  // namespace

BENCHMARK_MAIN();
