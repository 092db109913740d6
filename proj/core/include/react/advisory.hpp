#pragma once

#include <optional>
#include <string>

#include "react/risk_map.hpp"

namespace react {

struct EgoControlState {
  double brake_state = 0.0;        // S in [0, 1]; 1 = full braking
  double threat_speed_delta = 0.0; // km/h, >= 0
};

struct ThresholdConfig {
  double t1_base = 0.3;
  double t2_base = 0.7;
  double delta_v_scale = 30.0;  // km/h
  double brake_full = 0.99;     // braking this deep suppresses advisories
};

void validate(const ThresholdConfig& t);  // throws ConfigError

struct AdjustedThresholds {
  double t1 = 0.3;
  double t2 = 0.7;
};

// t1 = t1_base * (1 + dv / scale), floored at 0; t2 = t2_base * (1 - S).
AdjustedThresholds adjust_thresholds(const ThresholdConfig& cfg,
                                     const EgoControlState& ctrl);

// 0 below t1 or under deep braking, 2 at or above t2, 1 between.
// Both boundaries are inclusive upward: risk == t1 warns, risk == t2 escalates.
int classify(double global_risk, const AdjustedThresholds& th,
             const EgoControlState& ctrl, const ThresholdConfig& cfg);

std::string compose_command(int level, Direction dominant);

struct Advisory {
  int level = 0;
  Direction dominant = Direction::F;
  std::string command;
  std::optional<ClassTag> threat_class;  // most contributing agent, if any
  double threat_speed_delta = 0.0;       // km/h, derived from the scene
  AdjustedThresholds thresholds;
};

struct FrameAssessment {
  double t = 0.0;
  double global_risk = 0.0;
  SectorRisks sectors;
  Advisory advisory;
  double latency_seconds = 0.0;
  RiskMatrix matrix;
};

// One full sensing-to-advisory step: field sweep over the ROI, normalized
// aggregation, sector attribution, threshold adaptation, classification.
// ctrl.threat_speed_delta is ignored on input; the delta is re-derived each
// frame from the agent contributing most to the dominant sector.
FrameAssessment assess_frame(const AgentState& ego,
                             std::span<const AgentState> participants,
                             const LaneGeometry& lane,
                             const EgoControlState& ctrl,
                             const ModelParams& params,
                             const GridConfig& grid_cfg,
                             const NormalizationConfig& norm,
                             const ThresholdConfig& thresholds);

}  // namespace react
