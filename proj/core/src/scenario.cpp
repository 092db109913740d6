#include "react/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "react/geometry.hpp"

namespace react {

namespace {

constexpr double kVehicleLength = 4.5;  // m, shared bumper-gap convention
constexpr double kLaneWidth = 3.5;      // m

constexpr double kmh(double v) { return v / 3.6; }

double lateral_offset(const std::optional<LateralRamp>& ramp, double t) {
  if (!ramp) return 0.0;
  if (t <= ramp->t_start) return ramp->offset_from;
  if (t >= ramp->t_end) return ramp->offset_to;
  const double u = (t - ramp->t_start) / (ramp->t_end - ramp->t_start);
  return ramp->offset_from + u * (ramp->offset_to - ramp->offset_from);
}

double lateral_velocity(const std::optional<LateralRamp>& ramp, double t) {
  if (!ramp || t < ramp->t_start || t >= ramp->t_end) return 0.0;
  return (ramp->offset_to - ramp->offset_from) / (ramp->t_end - ramp->t_start);
}

const MotionSegment* active_segment(const AgentProgram& agent, double t) {
  const MotionSegment* seg = nullptr;
  for (const MotionSegment& m : agent.segments) {
    if (m.t_start <= t) seg = &m;
    else break;
  }
  return seg;
}

double step_speed(const AgentProgram& agent, double t, double speed, double dt) {
  const MotionSegment* seg = active_segment(agent, t);
  if (seg == nullptr) return speed;
  double v = speed + seg->accel * dt;
  // saturate at the segment target so scripted end speeds are exact
  if (seg->until_speed) {
    if (seg->accel < 0.0 && speed >= *seg->until_speed)
      v = std::max(v, *seg->until_speed);
    if (seg->accel > 0.0 && speed <= *seg->until_speed)
      v = std::min(v, *seg->until_speed);
  }
  return std::max(0.0, v);
}

}  // namespace

const char* scenario_kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::CarFollowingBraking: return "CarFollowingBraking";
    case ScenarioKind::CutIn: return "CutIn";
    case ScenarioKind::RearApproaching: return "RearApproaching";
    case ScenarioKind::IntersectionConflict: return "IntersectionConflict";
  }
  return "CarFollowingBraking";
}

ScenarioKind parse_scenario_kind(const std::string& text) {
  if (text == "CF" || text == "CarFollowingBraking")
    return ScenarioKind::CarFollowingBraking;
  if (text == "CI" || text == "CutIn") return ScenarioKind::CutIn;
  if (text == "RV" || text == "RearApproaching")
    return ScenarioKind::RearApproaching;
  if (text == "IC" || text == "IntersectionConflict")
    return ScenarioKind::IntersectionConflict;
  throw InputError("unknown scenario kind: " + text);
}

void validate(const ScenarioScript& s) {
  if (s.agents.empty()) throw ConfigError("scenario has no agents");
  if (!(s.duration > 0.0)) throw ConfigError("scenario duration must be positive");
  if (!(s.dt > 0.0)) throw ConfigError("scenario dt must be positive");
  if (s.t_f < 0.0 || s.t_f > s.duration)
    throw ConfigError("scenario t_f must lie within [0, duration]");
  if (s.hazard_start < 0.0 || s.hazard_end > s.duration ||
      s.hazard_start > s.hazard_end)
    throw ConfigError("scenario hazard window must lie within [0, duration]");
  bool ego_found = false;
  for (const AgentProgram& a : s.agents) {
    if (a.id == s.ego_id) ego_found = true;
    const double h = norm(a.heading);
    if (std::abs(h - 1.0) > 1e-9)
      throw ConfigError("agent heading must be a unit vector");
    if (!(a.mass > 0.0)) throw ConfigError("agent mass must be positive");
    if (a.speed0 < 0.0) throw ConfigError("agent speed must be non-negative");
    if (a.lateral && !(a.lateral->t_end > a.lateral->t_start))
      throw ConfigError("lateral ramp must have positive duration");
    for (std::size_t i = 1; i < a.segments.size(); ++i)
      if (a.segments[i].t_start < a.segments[i - 1].t_start)
        throw ConfigError("motion segments must be ordered by t_start");
  }
  if (!ego_found) throw ConfigError("scenario ego_id not among agents");
}

ScenarioScript build_scenario(ScenarioKind kind, const ScenarioOverrides& o) {
  ScenarioScript s;
  s.kind = kind;
  s.ego_id = 0;
  s.dt = o.dt.value_or(0.05);

  AgentProgram ego;
  ego.id = 0;
  AgentProgram other;
  other.id = 1;

  switch (kind) {
    case ScenarioKind::CarFollowingBraking: {
      const double gap = o.gap.value_or(15.0);
      s.t_f = o.t_f.value_or(5.0);
      s.duration = o.duration.value_or(12.0);
      ego.start = {0.0, 0.0};
      ego.speed0 = kmh(19.0);
      other.start = {gap + kVehicleLength, 0.0};
      other.speed0 = kmh(18.0);
      if (!o.nominal) {
        // lead slows to a rolling residual rather than a dead stop: a
        // stationary body carries no kinetic energy and would vanish from
        // the field, leaving the approach invisible
        const double decel = o.maneuver_accel.value_or(3.0);
        const double final_speed = o.cf_lead_final_speed.value_or(2.0);
        other.segments.push_back({s.t_f, -decel, final_speed});
      }
      break;
    }
    case ScenarioKind::CutIn: {
      const double gap = o.gap.value_or(10.0);
      s.t_f = o.t_f.value_or(4.0);
      s.duration = o.duration.value_or(12.0);
      ego.start = {0.0, 0.0};
      ego.speed0 = kmh(20.0);
      other.start = {gap + kVehicleLength, kLaneWidth};
      other.speed0 = kmh(20.0);
      if (!o.nominal) {
        const double accel = o.maneuver_accel.value_or(1.4);
        const double merge = o.merge_duration.value_or(3.0);
        other.segments.push_back({s.t_f, accel, kmh(25.0)});
        other.lateral = LateralRamp{s.t_f, s.t_f + merge, 0.0, -kLaneWidth};
      }
      break;
    }
    case ScenarioKind::RearApproaching: {
      const double gap = o.gap.value_or(20.0);
      s.t_f = o.t_f.value_or(5.0);
      s.duration = o.duration.value_or(20.0);
      ego.start = {0.0, 0.0};
      ego.speed0 = kmh(15.0);
      other.start = {-(gap + kVehicleLength), 0.0};
      other.speed0 = kmh(15.0);
      if (!o.nominal) {
        const double accel = o.maneuver_accel.value_or(1.4);
        other.segments.push_back({s.t_f, accel, kmh(20.0)});
      }
      break;
    }
    case ScenarioKind::IntersectionConflict: {
      const double arm = o.gap.value_or(40.0);
      s.t_f = o.t_f.value_or(0.0);
      s.duration = o.duration.value_or(9.0);
      ego.start = {-arm, 0.0};
      ego.speed0 = kmh(20.0);
      other.heading = {0.0, 1.0};
      other.speed0 = kmh(20.0);
      // the no-hazard control starts the crosser far enough out that it
      // reaches the junction long after the ego has cleared it
      other.start = {0.0, o.nominal ? -2.0 * arm : -arm};
      break;
    }
  }

  s.hazard_start = s.t_f;
  s.hazard_end = s.duration;
  s.agents = {ego, other};
  validate(s);
  return s;
}

Trace run(const ScenarioScript& script) {
  validate(script);

  Trace tr;
  tr.ego_id = script.ego_id;
  tr.dt = script.dt;
  tr.labels = {script.t_f, script.hazard_start, script.hazard_end};

  struct State {
    double s = 0.0;  // longitudinal arc length from start
    double v = 0.0;
  };
  std::vector<State> st(script.agents.size());
  for (std::size_t i = 0; i < st.size(); ++i)
    st[i].v = script.agents[i].speed0;

  const auto n_steps =
      static_cast<std::size_t>(std::llround(script.duration / script.dt));
  tr.frames.reserve(n_steps + 1);

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * script.dt;
    TraceFrame frame;
    frame.t = t;
    frame.agents.reserve(script.agents.size());
    for (std::size_t i = 0; i < script.agents.size(); ++i) {
      const AgentProgram& prog = script.agents[i];
      const Vec2 lat = perp(prog.heading);
      AgentState a;
      a.id = prog.id;
      a.cls = AgentClass::for_tag(prog.cls);
      a.mass = prog.mass;
      a.position = prog.start + st[i].s * prog.heading +
                   lateral_offset(prog.lateral, t) * lat;
      a.velocity =
          st[i].v * prog.heading + lateral_velocity(prog.lateral, t) * lat;
      frame.agents.push_back(a);
    }
    tr.frames.push_back(std::move(frame));

    for (std::size_t i = 0; i < script.agents.size(); ++i) {
      st[i].s += st[i].v * script.dt;
      st[i].v = step_speed(script.agents[i], t, st[i].v, script.dt);
    }
  }
  return tr;
}

void validate(const DriverParams& p) {
  if (!(p.decel > 0.0)) throw ConfigError("driver decel must be positive");
  if (p.reaction_delay < 0.0)
    throw ConfigError("driver reaction_delay must be non-negative");
  if (!(p.brake_ramp > 0.0))
    throw ConfigError("driver brake_ramp must be positive");
  if (p.surrogate_reaction_after_tf < 0.0)
    throw ConfigError("driver surrogate reaction must be non-negative");
}

DriverResponse ego_driver_model(const Trace& open_loop,
                                std::span<const int> advisory_levels,
                                DriverMode mode, const DriverParams& params) {
  validate(params);

  DriverResponse out;
  out.trace = open_loop;
  out.s_brake.assign(open_loop.frames.size(), 0.0);

  std::optional<double> onset;
  if (mode == DriverMode::WithWarning) {
    if (advisory_levels.size() != open_loop.frames.size())
      throw InputError("advisory stream not frame-aligned with trace");
    for (std::size_t i = 0; i < advisory_levels.size(); ++i) {
      if (advisory_levels[i] >= 1) {
        onset = open_loop.frames[i].t + params.reaction_delay;
        break;
      }
    }
  } else {
    onset = open_loop.labels.t_f + params.surrogate_reaction_after_tf;
  }
  if (!onset) return out;

  std::size_t k0 = open_loop.frames.size();
  for (std::size_t i = 0; i < open_loop.frames.size(); ++i) {
    if (open_loop.frames[i].t >= *onset) {
      k0 = i;
      break;
    }
  }
  if (k0 == open_loop.frames.size()) return out;  // onset past trace end
  out.brake_onset_t = onset;

  const AgentState* e0 = find_agent(open_loop.frames[k0], open_loop.ego_id);
  if (e0 == nullptr) throw InputError("ego missing at braking onset frame");

  double v = norm(e0->velocity);
  const Vec2 dir = v > kSpeedTol
                       ? Vec2{e0->velocity.x / v, e0->velocity.y / v}
                       : Vec2{1.0, 0.0};
  Vec2 pos = e0->position;
  const double dt = open_loop.dt;

  for (std::size_t k = k0; k < out.trace.frames.size(); ++k) {
    for (AgentState& a : out.trace.frames[k].agents) {
      if (a.id == open_loop.ego_id) {
        a.position = pos;
        a.velocity = v * dir;
      }
    }
    out.s_brake[k] = std::clamp(
        (out.trace.frames[k].t - *onset) / params.brake_ramp, 0.0, 1.0);
    pos = pos + (v * dt) * dir;
    v = std::max(0.0, v - params.decel * dt);
  }
  return out;
}

}  // namespace react
