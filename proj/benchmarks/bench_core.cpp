#include <benchmark/benchmark.h>

#include <vector>

#include "revsim/evolution.hpp"
#include "revsim/replicator.hpp"
#include "revsim/road.hpp"
#include "revsim/world.hpp"

using namespace revsim;

namespace {

SimConfig desk_like() {
  SimConfig cfg;
  cfg.grid_rows = 20;
  cfg.grid_cols = 20;
  cfg.n_honest = 4900;
  cfg.n_dishonest = 100;
  cfg.detection_prob = 2.5e-8;
  cfg.total_time_units = 400;
  return cfg;
}

void BM_world_tick(benchmark::State& state) {
  World w(desk_like(), 1);
  for (auto _ : state) {
    w.tick();
    benchmark::DoNotOptimize(w.now());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_world_tick)->Unit(benchmark::kMicrosecond);

void BM_world_unit(benchmark::State& state) {
  World w(desk_like(), 1);
  const std::int64_t ticks = w.config().ticks_per_unit();
  for (auto _ : state) {
    for (std::int64_t t = 0; t < ticks; ++t) w.tick();
    benchmark::DoNotOptimize(w.living_dishonest());
  }
  state.SetItemsProcessed(state.iterations() * ticks);
}
BENCHMARK(BM_world_unit)->Unit(benchmark::kMillisecond)->Iterations(20);

void BM_step_vehicle(benchmark::State& state) {
  RoadNetwork net = build_network(20, 20, 1000.0);
  Rng rng = make_rng(3);
  Position p = random_position(net, rng);
  for (auto _ : state) {
    p = step_vehicle(p, net, 10.0, 1.0, rng);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_step_vehicle);

void BM_replicator_step_dim100(benchmark::State& state) {
  Rng rng = make_rng(9);
  std::vector<double> x(100), u(100);
  double s = 0.0;
  for (auto& v : x) {
    v = uniform01(rng);
    s += v;
  }
  for (auto& v : x) v /= s;
  for (auto& v : u) v = 20.0 * uniform01(rng);
  for (auto _ : state) {
    Trajectory tr = integrate_replicator(x, u, 0.01, 1);
    benchmark::DoNotOptimize(tr.states.back()[0]);
  }
}
BENCHMARK(BM_replicator_step_dim100);

void BM_overall_utility_dim100(benchmark::State& state) {
  Rng rng = make_rng(10);
  std::vector<double> fr(100), ut(100);
  for (auto& v : fr) v = uniform01(rng) / 100.0;
  for (auto& v : ut) v = 1e6 * uniform01(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(overall_utility(fr, ut));
  }
}
BENCHMARK(BM_overall_utility_dim100);

}  // namespace

BENCHMARK_MAIN();
