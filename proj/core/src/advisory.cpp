#include "react/advisory.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "react/field.hpp"

namespace react {

void validate(const ThresholdConfig& t) {
  if (!(t.t1_base > 0.0) || !std::isfinite(t.t1_base))
    throw ConfigError("threshold t1_base must be positive and finite");
  if (!(t.t2_base > 0.0) || !std::isfinite(t.t2_base))
    throw ConfigError("threshold t2_base must be positive and finite");
  if (!(t.t1_base < t.t2_base))
    throw ConfigError("threshold t1_base must be below t2_base");
  if (!(t.delta_v_scale > 0.0))
    throw ConfigError("threshold delta_v_scale must be positive");
  if (!(t.brake_full > 0.0 && t.brake_full <= 1.0))
    throw ConfigError("threshold brake_full must lie in (0, 1]");
}

AdjustedThresholds adjust_thresholds(const ThresholdConfig& cfg,
                                     const EgoControlState& ctrl) {
  AdjustedThresholds out;
  const double dv = std::max(0.0, ctrl.threat_speed_delta);
  out.t1 = std::max(0.0, cfg.t1_base * (1.0 + dv / cfg.delta_v_scale));
  out.t2 = cfg.t2_base * (1.0 - std::clamp(ctrl.brake_state, 0.0, 1.0));
  return out;
}

int classify(double global_risk, const AdjustedThresholds& th,
             const EgoControlState& ctrl, const ThresholdConfig& cfg) {
  if (ctrl.brake_state >= cfg.brake_full) return 0;
  if (global_risk < th.t1) return 0;
  if (global_risk >= th.t2) return 2;
  return 1;
}

std::string compose_command(int level, Direction dominant) {
  switch (level) {
    case 1:
      return std::string("Reduce speed to avoid risk in ") +
             direction_name(dominant);
    case 2:
      return std::string("Emergency action toward opposite of ") +
             direction_name(dominant);
    default:
      return "Normal driving";
  }
}

namespace {

struct TopContributor {
  bool found = false;
  std::size_t index = 0;  // into participants
  double energy = 0.0;
};

// Re-sweeps only the dominant sector's cells, per participant, to find the
// agent carrying the most field energy there. Ties keep the earlier agent.
TopContributor dominant_contributor(const RiskMatrix& m, Direction dominant,
                                    SectorConvention convention,
                                    const AgentState& ego,
                                    std::span<const AgentState> participants,
                                    const ModelParams& p) {
  TopContributor best;
  if (participants.empty()) return best;

  std::vector<std::size_t> sector_cells;
  sector_cells.reserve(m.centers_ego.size() / 8 + 1);
  for (std::size_t i = 0; i < m.centers_ego.size(); ++i) {
    const Vec2 c = m.centers_ego[i];
    if (sector_index(c.x, c.y, convention) == static_cast<int>(dominant))
      sector_cells.push_back(i);
  }
  if (sector_cells.empty()) return best;

  for (std::size_t a = 0; a < participants.size(); ++a) {
    double e = 0.0;
    for (std::size_t i : sector_cells) {
      const Vec2 c = m.centers_ego[i];
      const Vec2 world{m.origin.x + c.x * m.axis_long.x + c.y * m.axis_lat.x,
                       m.origin.y + c.x * m.axis_long.y + c.y * m.axis_lat.y};
      e += interaction_field_at(world, ego.velocity, participants[a], p);
    }
    if (!best.found || e > best.energy) {
      best.found = true;
      best.index = a;
      best.energy = e;
    }
  }
  if (best.energy <= 0.0) best.found = false;
  return best;
}

}  // namespace

FrameAssessment assess_frame(const AgentState& ego,
                             std::span<const AgentState> participants,
                             const LaneGeometry& lane,
                             const EgoControlState& ctrl,
                             const ModelParams& params,
                             const GridConfig& grid_cfg,
                             const NormalizationConfig& norm,
                             const ThresholdConfig& thresholds) {
  validate(params);
  validate(grid_cfg);
  validate(norm);
  validate(thresholds);

  const auto t0 = std::chrono::steady_clock::now();

  const Grid grid = build_grid(ego, grid_cfg);
  FrameAssessment out;
  out.matrix = compute_risk_matrix(grid, ego, participants, lane, params);
  out.global_risk = global_risk(out.matrix, norm);
  out.sectors = sector_risks(out.matrix);

  const TopContributor top =
      dominant_contributor(out.matrix, out.sectors.dominant,
                           SectorConvention::EdgeAligned, ego, participants,
                           params);

  EgoControlState effective = ctrl;
  effective.threat_speed_delta = 0.0;
  if (top.found) {
    const double dv_ms =
        react::norm(participants[top.index].velocity) - react::norm(ego.velocity);
    effective.threat_speed_delta = std::max(0.0, dv_ms * 3.6);
    out.advisory.threat_class = participants[top.index].cls.tag;
  }

  out.advisory.thresholds = adjust_thresholds(thresholds, effective);
  out.advisory.level =
      classify(out.global_risk, out.advisory.thresholds, effective, thresholds);
  out.advisory.dominant = out.sectors.dominant;
  out.advisory.command =
      compose_command(out.advisory.level, out.sectors.dominant);
  out.advisory.threat_speed_delta = effective.threat_speed_delta;

  const auto t1 = std::chrono::steady_clock::now();
  out.latency_seconds = std::chrono::duration<double>(t1 - t0).count();
  return out;
}

}  // namespace react
