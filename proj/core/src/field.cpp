#include "react/field.hpp"

#include <cmath>

namespace react {

void validate(const ModelParams& p) {
  if (!(p.beta >= 0.0)) throw ConfigError("model.beta must be >= 0");
  if (!(p.epsilon > 0.0)) throw ConfigError("model.epsilon must be > 0");
  if (!(p.k_time > 0.0)) throw ConfigError("model.k_time must be > 0");
  if (!(p.a_min > 0.0)) throw ConfigError("model.a_min must be > 0");
  if (!(p.b_lat > 0.0)) throw ConfigError("model.b_lat must be > 0");
  if (!(p.k_lane >= 0.1 && p.k_lane <= 1.0))
    throw ConfigError("model.k_lane must lie in [0.1, 1.0]");
  if (!(p.lambda_dashed > 0.0) || !(p.lambda_solid > 0.0))
    throw ConfigError("lane-line severities must be > 0");
  if (!(p.y_max > 0.0)) throw ConfigError("model.y_max must be > 0");
}

void validate(const LaneGeometry& lane) {
  if (lane.enabled && !(lane.y_left > lane.y_right))
    throw ConfigError("lane.y_left must exceed lane.y_right");
}

InteractionGeometry relative_kinematics(Vec2 query_pos, Vec2 query_vel,
                                        const AgentState& source) {
  InteractionGeometry g;
  g.rel_pos = query_pos - source.position;
  g.rel_vel = query_vel - source.velocity;
  g.dist = norm(g.rel_pos);
  g.rel_speed = norm(g.rel_vel);
  if (g.dist >= kDistanceTol && g.rel_speed >= kSpeedTol) {
    // Positive when the separation shrinks along the relative velocity.
    g.cos_closing = -dot(g.rel_pos, g.rel_vel) / (g.dist * g.rel_speed);
  }
  return g;
}

double elliptical_distance_sq(const InteractionGeometry& geom,
                              Vec2 source_velocity, const ModelParams& p) {
  const double speed = norm(source_velocity);
  const double a = std::max(p.k_time * speed, p.a_min);
  const double b = p.b_lat;
  double dxi = geom.rel_pos.x;
  double deta = geom.rel_pos.y;
  if (speed >= kSpeedTol) {
    const Vec2 u{source_velocity.x / speed, source_velocity.y / speed};
    dxi = dot(geom.rel_pos, u);
    deta = dot(geom.rel_pos, perp(u));
  }
  return (dxi * dxi) / (a * a) + (deta * deta) / (b * b);
}

double base_risk_energy(const AgentState& source) {
  const double speed_sq = dot(source.velocity, source.velocity);
  return 0.5 * source.cls.severity * source.mass * speed_sq;
}

namespace {

// Directional amplification of Eq-style anisotropic fields; evaluated at the
// query point and reused by both the field and its frozen-direction gradient.
double directional_factor(const InteractionGeometry& g,
                          const AgentState& source, const ModelParams& p) {
  const double speed_sq = dot(source.velocity, source.velocity);
  const double ratio =
      g.rel_speed * g.rel_speed / (speed_sq + p.epsilon);
  return 1.0 + p.beta * g.cos_closing * ratio;
}

}  // namespace

double interaction_field_at(Vec2 query_pos, Vec2 query_vel,
                            const AgentState& source, const ModelParams& p) {
  const InteractionGeometry g = relative_kinematics(query_pos, query_vel, source);
  const double u_j = base_risk_energy(source);
  const double factor = directional_factor(g, source, p);
  const double r2 = elliptical_distance_sq(g, source.velocity, p);
  return u_j * factor * std::exp(-r2);
}

double road_field_at(Vec2 query_pos, const AgentState& ego,
                     const LaneGeometry& lane, const ModelParams& p) {
  if (!lane.enabled) return 0.0;
  const double kinetic = 0.5 * ego.mass * dot(ego.velocity, ego.velocity);
  const double lam_l =
      lane.left_type == LineType::Solid ? p.lambda_solid : p.lambda_dashed;
  const double lam_r =
      lane.right_type == LineType::Solid ? p.lambda_solid : p.lambda_dashed;
  const double dr = (query_pos.y - lane.y_right) / p.y_max;
  const double dl = (query_pos.y - lane.y_left) / p.y_max;
  return kinetic * p.k_lane * (lam_r * dr * dr + lam_l * dl * dl);
}

double total_field_at(Vec2 query_pos, Vec2 query_vel,
                      std::span<const AgentState> participants,
                      const AgentState& ego, const LaneGeometry& lane,
                      const ModelParams& p) {
  double sum = 0.0;
  for (const AgentState& src : participants)
    sum += interaction_field_at(query_pos, query_vel, src, p);
  sum += road_field_at(query_pos, ego, lane, p);
  return sum;
}

ForceVector field_force_at(Vec2 query_pos, Vec2 query_vel,
                           std::span<const AgentState> participants,
                           const AgentState& ego, const LaneGeometry& lane,
                           const ModelParams& p) {
  ForceVector f;
  for (const AgentState& src : participants) {
    const InteractionGeometry g = relative_kinematics(query_pos, query_vel, src);
    const double u_j = base_risk_energy(src);
    const double factor = directional_factor(g, src, p);
    const double speed = norm(src.velocity);
    const double a = std::max(p.k_time * speed, p.a_min);
    const double b = p.b_lat;

    Vec2 u{1.0, 0.0};
    if (speed >= kSpeedTol) u = {src.velocity.x / speed, src.velocity.y / speed};
    const Vec2 v = perp(u);
    const double dxi = dot(g.rel_pos, u);
    const double deta = dot(g.rel_pos, v);
    const double r2 = (dxi * dxi) / (a * a) + (deta * deta) / (b * b);

    // grad r~^2 back-rotated to the world frame.
    const double gxi = 2.0 * dxi / (a * a);
    const double geta = 2.0 * deta / (b * b);
    const Vec2 grad_r2{gxi * u.x + geta * v.x, gxi * u.y + geta * v.y};

    const double scale = u_j * factor * std::exp(-r2);
    f.fx += scale * grad_r2.x;
    f.fy += scale * grad_r2.y;
  }
  if (lane.enabled) {
    const double kinetic = 0.5 * ego.mass * dot(ego.velocity, ego.velocity);
    const double lam_l =
        lane.left_type == LineType::Solid ? p.lambda_solid : p.lambda_dashed;
    const double lam_r =
        lane.right_type == LineType::Solid ? p.lambda_solid : p.lambda_dashed;
    const double dy = kinetic * p.k_lane * 2.0 *
                      (lam_r * (query_pos.y - lane.y_right) +
                       lam_l * (query_pos.y - lane.y_left)) /
                      (p.y_max * p.y_max);
    f.fy += -dy;
  }
  return f;
}

}  // namespace react
