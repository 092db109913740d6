#pragma once

#include <stdexcept>

namespace react {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Below these magnitudes a relative direction is undefined and the closing
// cosine is reported as 0.
inline constexpr double kDistanceTol = 1e-9;  // m
inline constexpr double kSpeedTol = 1e-9;     // m/s

struct ModelParams {
  double beta = 0.5;          // directional gain, dimensionless
  double epsilon = 1e-6;      // guards the speed ratio at standstill
  double k_time = 0.2;        // s, speed-to-ellipse-length scale
  double a_min = 1.0;         // m, floor of the longitudinal semi-axis
  double b_lat = 5.0;         // m, lateral semi-axis
  double k_lane = 0.5;        // lane spring stiffness, dimensionless
  double lambda_dashed = 1.0; // lane-line severity, crossable
  double lambda_solid = 1.5;  // lane-line severity, not crossable
  double y_max = 1.75;        // m, permissible lateral deviation
};

void validate(const ModelParams& p);  // throws ConfigError

enum class LineType { Dashed, Solid };

struct LaneGeometry {
  double y_left = 1.75;   // m, world lateral coordinate of the left line
  double y_right = -1.75; // m, world lateral coordinate of the right line
  LineType left_type = LineType::Dashed;
  LineType right_type = LineType::Dashed;
  bool enabled = false;
};

void validate(const LaneGeometry& lane);  // throws ConfigError

}  // namespace react
