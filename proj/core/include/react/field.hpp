#pragma once

#include <span>

#include "react/agent.hpp"
#include "react/params.hpp"

namespace react {

// Kinematic relation between a query point and a field source.
// cos_closing is +1 when the query point and source approach head-on,
// -1 when they recede, and 0 whenever distance or relative speed is
// below tolerance (direction undefined).
struct InteractionGeometry {
  Vec2 rel_pos;        // query - source, m
  Vec2 rel_vel;        // query - source, m/s
  double dist = 0.0;   // |rel_pos|
  double rel_speed = 0.0;  // |rel_vel|
  double cos_closing = 0.0;
};

struct ForceVector {
  double fx = 0.0;  // J/m
  double fy = 0.0;
};

InteractionGeometry relative_kinematics(Vec2 query_pos, Vec2 query_vel,
                                        const AgentState& source);

// Squared elliptical distance r~^2 = dxi^2/a^2 + deta^2/b^2 where
// a = max(k_time * |source_vel|, a_min), b = b_lat and (dxi, deta) are the
// offset components in the frame whose x-axis is the source velocity
// direction (world frame when the source is slower than tolerance).
double elliptical_distance_sq(const InteractionGeometry& geom,
                              Vec2 source_velocity, const ModelParams& p);

// U_j = 1/2 * severity * mass * speed^2. Zero for a stationary source.
double base_risk_energy(const AgentState& source);

// Single-source anisotropic field:
// U = U_j * (1 + beta * cos_closing * rel_speed^2 / (speed_j^2 + eps)) * exp(-r~^2)
double interaction_field_at(Vec2 query_pos, Vec2 query_vel,
                            const AgentState& source, const ModelParams& p);

// Dual lane-spring term, driven by the ego's kinetic energy and the query
// point's world lateral coordinate. Zero when the lane is disabled.
double road_field_at(Vec2 query_pos, const AgentState& ego,
                     const LaneGeometry& lane, const ModelParams& p);

// Superposition over all sources plus the road term, accumulated in input
// order (deterministic).
double total_field_at(Vec2 query_pos, Vec2 query_vel,
                      std::span<const AgentState> participants,
                      const AgentState& ego, const LaneGeometry& lane,
                      const ModelParams& p);

// Negative spatial gradient of the total field under the frozen-direction
// approximation: the directional factor is evaluated at the query point and
// held constant, so only exp(-r~^2) is differentiated. Exact for beta = 0.
ForceVector field_force_at(Vec2 query_pos, Vec2 query_vel,
                           std::span<const AgentState> participants,
                           const AgentState& ego, const LaneGeometry& lane,
                           const ModelParams& p);

}  // namespace react
