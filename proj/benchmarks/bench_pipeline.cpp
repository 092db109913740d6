// Microbenchmarks for the hot path: single force query, full risk matrix,
// and the end-to-end per-frame assessment.

#include <benchmark/benchmark.h>

#include <react/advisory.hpp>
#include <react/field.hpp>
#include <react/grid.hpp>
#include <react/metrics.hpp>
#include <react/risk_map.hpp>

namespace {

react::NormalizationConfig calibrated_norm() {
  react::NormalizationConfig norm;
  norm.reference_energy = react::calibrate_reference_energy(
      react::ModelParams{}, react::GridConfig{}, norm);
  return norm;
}

void bm_field_force(benchmark::State& state) {
  react::ModelParams params;
  react::AgentState ego;
  ego.id = 0;
  ego.velocity = {5.5556, 0.0};
  auto others = react::make_bench_scene(4, 7);
  react::LaneGeometry lane;
  for (auto _ : state) {
    auto f = react::field_force_at(ego.position, ego.velocity, others, ego,
                                   lane, params);
    benchmark::DoNotOptimize(f);
  }
}

void bm_risk_matrix(benchmark::State& state) {
  react::ModelParams params;
  react::GridConfig grid_cfg;
  react::LaneGeometry lane;
  react::AgentState ego;
  ego.id = 0;
  ego.velocity = {5.5556, 0.0};
  auto participants = react::make_bench_scene(
      static_cast<std::size_t>(state.range(0)), 42);
  auto grid = react::build_grid(ego, grid_cfg);
  for (auto _ : state) {
    auto m = react::compute_risk_matrix(grid, ego, participants, lane, params);
    benchmark::DoNotOptimize(m.cells.data());
  }
  state.counters["cells"] = static_cast<double>(grid.rows * grid.cols);
}

void bm_assess_frame(benchmark::State& state) {
  react::ModelParams params;
  react::GridConfig grid_cfg;
  react::LaneGeometry lane;
  react::ThresholdConfig thresholds;
  auto norm = calibrated_norm();
  react::AgentState ego;
  ego.id = 0;
  ego.velocity = {5.5556, 0.0};
  auto participants = react::make_bench_scene(
      static_cast<std::size_t>(state.range(0)), 42);
  react::EgoControlState ctrl;
  for (auto _ : state) {
    auto fa = react::assess_frame(ego, participants, lane, ctrl, params,
                                  grid_cfg, norm, thresholds);
    benchmark::DoNotOptimize(fa.global_risk);
  }
}

}  // namespace

BENCHMARK(bm_field_force);
BENCHMARK(bm_risk_matrix)->Arg(5)->Arg(10)->Arg(20);
BENCHMARK(bm_assess_frame)->Arg(5)->Arg(10)->Arg(20);

BENCHMARK_MAIN();
