#include "react/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace react {

namespace {

LatencyStats latency_stats(std::vector<double> seconds) {
  LatencyStats out;
  if (seconds.empty()) return out;
  double sum = 0.0;
  for (double s : seconds) sum += s;
  out.mean_ms = 1e3 * sum / static_cast<double>(seconds.size());
  std::sort(seconds.begin(), seconds.end());
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(0.95 * static_cast<double>(seconds.size())));
  out.p95_ms = 1e3 * seconds[std::min(rank == 0 ? 0 : rank - 1,
                                      seconds.size() - 1)];
  out.max_ms = 1e3 * seconds.back();
  return out;
}

}  // namespace

RunMetrics evaluate_run(const std::vector<FrameAssessment>& assessments,
                        const RunLabels& labels) {
  if (!(labels.hazard_start <= labels.hazard_end) ||
      !std::isfinite(labels.t_f))
    throw InputError("run labels missing or invalid");

  RunMetrics m;
  m.per_frame_records = assessments.size();

  bool any_warning_in_window = false;
  std::vector<double> latencies;
  latencies.reserve(assessments.size());
  for (const FrameAssessment& a : assessments) {
    latencies.push_back(a.latency_seconds);
    if (a.advisory.level >= 1) {
      if (!m.t_w) m.t_w = a.t;
      if (a.t >= labels.hazard_start && a.t <= labels.hazard_end)
        any_warning_in_window = true;
    }
  }
  m.latency = latency_stats(std::move(latencies));

  if (labels.hazard_run) {
    m.miss_rate = any_warning_in_window ? 0.0 : 1.0;
    if (m.t_w) m.warning_lead_time = *m.t_w - labels.t_f;
  } else {
    m.false_alarm_rate = m.t_w ? 1.0 : 0.0;
  }
  return m;
}

std::vector<FrameAssessment> assess_trace(const Trace& trace,
                                          std::span<const double> s_brake,
                                          const EngineConfig& config) {
  if (!s_brake.empty() && s_brake.size() != trace.frames.size())
    throw InputError("s_brake stream not frame-aligned with trace");

  std::vector<FrameAssessment> out;
  out.reserve(trace.frames.size());
  std::vector<AgentState> others;
  for (std::size_t k = 0; k < trace.frames.size(); ++k) {
    const TraceFrame& frame = trace.frames[k];
    const AgentState* ego = find_agent(frame, trace.ego_id);
    if (ego == nullptr)
      throw InputError("ego id " + std::to_string(trace.ego_id) +
                       " missing at frame " + std::to_string(k));
    others.clear();
    for (const AgentState& a : frame.agents)
      if (a.id != trace.ego_id) others.push_back(a);

    EgoControlState ctrl;
    ctrl.brake_state = s_brake.empty() ? 0.0 : s_brake[k];

    FrameAssessment fa =
        assess_frame(*ego, others, config.lane, ctrl, config.model,
                     config.grid, config.norm, config.thresholds);
    fa.t = frame.t;
    out.push_back(std::move(fa));
  }
  return out;
}

std::vector<AgentState> make_bench_scene(std::size_t participants,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-25.0, 45.0);
  std::uniform_real_distribution<double> uy(-9.0, 9.0);
  std::uniform_real_distribution<double> uspeed(0.0, 15.0);
  std::uniform_real_distribution<double> uangle(0.0, 2.0 * 3.141592653589793);

  constexpr ClassTag kTags[] = {ClassTag::Car, ClassTag::Truck,
                                ClassTag::Cyclist, ClassTag::Pedestrian};
  std::vector<AgentState> out;
  out.reserve(participants);
  for (std::size_t i = 0; i < participants; ++i) {
    AgentState a;
    a.id = static_cast<std::int64_t>(i) + 1;
    a.position = {ux(rng), uy(rng)};
    const double speed = uspeed(rng);
    const double ang = uangle(rng);
    a.velocity = {speed * std::cos(ang), speed * std::sin(ang)};
    a.cls = AgentClass::for_tag(kTags[i % 4]);
    a.mass = default_mass_kg(a.cls.tag);
    out.push_back(a);
  }
  return out;
}

std::vector<BenchRow> latency_bench(const EngineConfig& config,
                                    std::span<const std::size_t> sizes,
                                    std::size_t repetitions) {
  constexpr std::size_t kWarmup = 10;
  std::vector<BenchRow> rows;
  rows.reserve(sizes.size());

  AgentState ego;
  ego.id = 0;
  ego.position = {0.0, 0.0};
  ego.velocity = {5.5556, 0.0};

  for (std::size_t n : sizes) {
    const std::vector<AgentState> scene = make_bench_scene(n, 42);
    std::vector<double> seconds;
    seconds.reserve(repetitions);
    for (std::size_t i = 0; i < kWarmup + repetitions; ++i) {
      const FrameAssessment fa =
          assess_frame(ego, scene, config.lane, EgoControlState{},
                       config.model, config.grid, config.norm,
                       config.thresholds);
      if (i >= kWarmup) seconds.push_back(fa.latency_seconds);
    }
    BenchRow row;
    row.participants = n;
    const Grid g = build_grid(ego, config.grid);
    row.cells = g.rows * g.cols;
    row.iterations = repetitions;
    row.latency = latency_stats(std::move(seconds));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace react
