#include "react/grid.hpp"

#include <cmath>

namespace react {

void validate(const GridConfig& g) {
  if (!(g.half_length_fwd > 0.0) || !(g.half_length_back >= 0.0) ||
      !(g.half_width > 0.0))
    throw ConfigError("grid extents must be positive");
  if (!(g.cell_size > 0.0)) throw ConfigError("grid.cell_size must be > 0");
  const double length = g.half_length_fwd + g.half_length_back;
  const auto rows =
      static_cast<std::size_t>(std::max(1.0, std::round(length / g.cell_size)));
  const auto cols = static_cast<std::size_t>(
      std::max(1.0, std::round(2.0 * g.half_width / g.cell_size)));
  if (rows * cols > g.max_cells)
    throw ConfigError("grid exceeds max_cells; coarsen cell_size or shrink extents");
}

Grid build_grid(const AgentState& ego, const GridConfig& cfg) {
  validate(cfg);
  Grid grid;
  const double length = cfg.half_length_fwd + cfg.half_length_back;
  grid.rows =
      static_cast<std::size_t>(std::max(1.0, std::round(length / cfg.cell_size)));
  grid.cols = static_cast<std::size_t>(
      std::max(1.0, std::round(2.0 * cfg.half_width / cfg.cell_size)));
  grid.cell_size = cfg.cell_size;
  grid.origin = ego.position;

  const double speed = norm(ego.velocity);
  grid.axis_long = speed >= kSpeedTol
                       ? Vec2{ego.velocity.x / speed, ego.velocity.y / speed}
                       : Vec2{1.0, 0.0};
  grid.axis_lat = perp(grid.axis_long);

  grid.centers_ego.resize(grid.rows * grid.cols);
  for (std::size_t i = 0; i < grid.rows; ++i) {
    const double cx = -cfg.half_length_back + (static_cast<double>(i) + 0.5) * cfg.cell_size;
    for (std::size_t j = 0; j < grid.cols; ++j) {
      const double cy = -cfg.half_width + (static_cast<double>(j) + 0.5) * cfg.cell_size;
      grid.centers_ego[i * grid.cols + j] = {cx, cy};
    }
  }
  return grid;
}

}  // namespace react
