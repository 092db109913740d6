#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "react/params.hpp"
#include "react/trace.hpp"

namespace react {

enum class ScenarioKind {
  CarFollowingBraking,
  CutIn,
  RearApproaching,
  IntersectionConflict,
};

const char* scenario_kind_name(ScenarioKind k);
// Accepts the short tags CF, CI, RV, IC and the full names above.
ScenarioKind parse_scenario_kind(const std::string& text);  // throws InputError

// Constant longitudinal acceleration from t_start onward. When until_speed
// is set the speed saturates there and acceleration drops to zero.
struct MotionSegment {
  double t_start = 0.0;
  double accel = 0.0;  // m/s^2, signed, along the agent heading
  std::optional<double> until_speed;
};

// Linear lateral slide between two displacements from the start position,
// measured along perp(heading).
struct LateralRamp {
  double t_start = 0.0;
  double t_end = 0.0;
  double offset_from = 0.0;  // m
  double offset_to = 0.0;
};

struct AgentProgram {
  std::int64_t id = 0;
  ClassTag cls = ClassTag::Car;
  double mass = 1500.0;  // kg
  Vec2 start;            // world position at t = 0
  Vec2 heading{1.0, 0.0};
  double speed0 = 0.0;  // m/s
  std::vector<MotionSegment> segments;  // ordered by t_start
  std::optional<LateralRamp> lateral;
};

struct ScenarioScript {
  ScenarioKind kind = ScenarioKind::CarFollowingBraking;
  std::vector<AgentProgram> agents;  // ego first
  std::int64_t ego_id = 0;
  double t_f = 0.0;
  double hazard_start = 0.0;
  double hazard_end = 0.0;
  LaneGeometry lane;  // disabled unless configured otherwise
  double duration = 10.0;
  double dt = 0.05;
};

void validate(const ScenarioScript& s);  // throws ConfigError

struct ScenarioOverrides {
  std::optional<double> gap;       // m: initial bumper gap (CF, CI, RV),
                                   // approach arm length (IC)
  std::optional<double> t_f;       // s
  std::optional<double> duration;  // s
  std::optional<double> dt;        // s
  std::optional<double> maneuver_accel;  // m/s^2 magnitude
  std::optional<double> merge_duration;  // s, CutIn only
  std::optional<double> cf_lead_final_speed;  // m/s, CarFollowingBraking only
  bool nominal = false;  // disable the conflict maneuver (no-hazard control)
};

ScenarioScript build_scenario(ScenarioKind kind,
                              const ScenarioOverrides& overrides = {});

// Fixed-step forward Euler at script.dt: positions advance on the current
// velocity, then speeds integrate the active acceleration and are floored
// at zero. Bit-deterministic for identical scripts.
Trace run(const ScenarioScript& script);

enum class DriverMode { NoWarning, WithWarning };

struct DriverParams {
  double decel = 2.5;           // m/s^2
  double reaction_delay = 0.3;  // s after the first level >= 1 advisory
  double brake_ramp = 0.2;      // s for S_brake to travel 0 -> 1
  double surrogate_reaction_after_tf = 4.5;  // s, unassisted-driver onset
};

void validate(const DriverParams& p);  // throws ConfigError

struct DriverResponse {
  Trace trace;                  // ego re-integrated from the braking onset
  std::vector<double> s_brake;  // per frame, [0, 1]
  std::optional<double> brake_onset_t;
};

// Grafts the ego braking response onto an open-loop trace. WithWarning
// brakes reaction_delay after the first advisory level >= 1; NoWarning
// brakes at t_f + surrogate_reaction_after_tf regardless of advisories.
// advisory_levels must be frame-aligned with the trace (may be empty for
// NoWarning).
DriverResponse ego_driver_model(const Trace& open_loop,
                                std::span<const int> advisory_levels,
                                DriverMode mode, const DriverParams& params);

}  // namespace react
