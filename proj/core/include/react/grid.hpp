#pragma once

#include <cstddef>
#include <vector>

#include "react/agent.hpp"
#include "react/params.hpp"

namespace react {

struct GridConfig {
  double half_length_fwd = 50.0;   // m ahead of the ego
  double half_length_back = 30.0;  // m behind
  double half_width = 10.0;        // m to each side
  double cell_size = 1.0;          // m
  std::size_t max_cells = 10000;
};

void validate(const GridConfig& g);  // throws ConfigError

// Region of interest anchored at the ego, x-axis along the ego heading
// (world +x when the ego is slower than tolerance). Rows sweep the
// longitudinal extent back-to-front; columns sweep right-to-left.
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double cell_size = 1.0;
  Vec2 origin;       // ego position, world frame
  Vec2 axis_long;    // unit heading
  Vec2 axis_lat;     // unit left-perpendicular
  std::vector<Vec2> centers_ego;  // row-major, ego frame

  Vec2 center_world(std::size_t idx) const {
    const Vec2 c = centers_ego[idx];
    return origin + c.x * axis_long + c.y * axis_lat;
  }
};

Grid build_grid(const AgentState& ego, const GridConfig& cfg);

}  // namespace react
