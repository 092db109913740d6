#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "react/config.hpp"

namespace react {

struct RunLabels {
  double t_f = 0.0;
  double hazard_start = 0.0;
  double hazard_end = 0.0;
  bool hazard_run = true;  // false for the maneuver-disabled controls
};

struct LatencyStats {
  double mean_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
};

struct RunMetrics {
  double false_alarm_rate = 0.0;  // single run: 0 or 1
  double miss_rate = 0.0;
  std::optional<double> t_w;  // first advisory of level >= 1
  std::optional<double> warning_lead_time;  // t_w - t_f, signed
  LatencyStats latency;
  std::size_t per_frame_records = 0;
};

// Scores one assessment stream against its run labels. A hazard run is a
// miss when no level >= 1 advisory lands inside the hazard window; a
// no-hazard run is a false alarm when any level >= 1 advisory fires.
RunMetrics evaluate_run(const std::vector<FrameAssessment>& assessments,
                        const RunLabels& labels);

// Assesses every frame of a trace. s_brake must be frame-aligned when
// non-empty; an empty span reads as zero brake throughout.
std::vector<FrameAssessment> assess_trace(const Trace& trace,
                                          std::span<const double> s_brake,
                                          const EngineConfig& config);

// Reproducible pseudo-random participants scattered over the ROI.
std::vector<AgentState> make_bench_scene(std::size_t participants,
                                         std::uint64_t seed);

struct BenchRow {
  std::size_t participants = 0;
  std::size_t cells = 0;
  std::size_t iterations = 0;
  LatencyStats latency;
};

// Times assess_frame per participant count; the first 10 iterations of
// each size warm caches and are discarded.
std::vector<BenchRow> latency_bench(const EngineConfig& config,
                                    std::span<const std::size_t> sizes,
                                    std::size_t repetitions);

}  // namespace react
