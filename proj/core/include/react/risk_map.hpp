#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "react/field.hpp"
#include "react/grid.hpp"

namespace react {

struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Clamped field samples over the ROI. Cells are candidate ego positions and
// are evaluated with the ego's current velocity; negative superpositions are
// floored at zero.
struct RiskMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double cell_size = 1.0;
  Vec2 origin;                    // ego position, world frame
  Vec2 axis_long;                 // grid heading basis
  Vec2 axis_lat;
  std::vector<double> cells;      // row-major, J
  std::vector<Vec2> centers_ego;  // row-major, m, ego frame
};

RiskMatrix compute_risk_matrix(const Grid& grid, const AgentState& ego,
                               std::span<const AgentState> participants,
                               const LaneGeometry& lane, const ModelParams& p);

enum class AggregationMode {
  // Arithmetic mean of every ROI cell. Translation-invariant: a source
  // contributes the same amount anywhere inside the ROI.
  MeanOverRoi,
  // Mean weighted by an ego-anchored reachability kernel
  // w = exp(-(x/sigma_long)^2 - (y/sigma_lat)^2), so energy near the ego's
  // short-horizon path dominates the score.
  ReachabilityWeightedMean,
};

struct NormalizationConfig {
  double reference_energy = 1.0;  // J, set by calibrate_reference_energy
  AggregationMode mode = AggregationMode::ReachabilityWeightedMean;
  double sigma_long = 8.0;  // m, roughly 1.5 s of travel at urban speed
  double sigma_lat = 1.75;  // m, half a lane
};

void validate(const NormalizationConfig& n);  // throws ConfigError

// Raw aggregated cell energy in joules, before normalization.
double aggregate_energy(const RiskMatrix& m, const NormalizationConfig& n);

// clamp(aggregate / reference_energy, 0, 1)
double global_risk(const RiskMatrix& m, const NormalizationConfig& n);

// Eight bearing sectors, counterclockwise from the heading ray.
enum class Direction { F = 0, FL, L, RL, B, RR, R, FR };

const char* direction_name(Direction d);
Direction opposite_of(Direction d);

enum class SectorConvention {
  EdgeAligned,  // sectors begin at the cardinal rays: F = [0, 45) deg
  Centered,     // sectors straddle the cardinal rays: F = [-22.5, 22.5) deg
};

// Sector holding an ego-frame point; the origin reads as ahead. Indices
// follow the Direction enum.
int sector_index(double x_ego, double y_ego, SectorConvention conv);

struct SectorRisks {
  std::array<double, 8> value{};  // mean cell energy per sector, J
  Direction dominant = Direction::F;
};

SectorRisks sector_risks(const RiskMatrix& m,
                         SectorConvention convention = SectorConvention::EdgeAligned);

// Freezes the [0, 1] risk scale: evaluates the canonical near-miss scene
// (see risk_map.cpp) under the given parameters and pins its score to 0.7.
// Throws CalibrationError when the scene aggregates to zero energy.
double calibrate_reference_energy(const ModelParams& p, const GridConfig& grid_cfg,
                                  const NormalizationConfig& norm);

// Scene used by calibrate_reference_energy; exposed so tests and tools can
// reproduce the fixed point. Returns ego plus one oncoming participant.
struct CalibrationScene {
  AgentState ego;
  AgentState threat;
};
CalibrationScene canonical_calibration_scene();

void write_matrix_csv(std::ostream& os, const RiskMatrix& m);
void write_matrix_csv(const std::string& path, const RiskMatrix& m);

}  // namespace react
