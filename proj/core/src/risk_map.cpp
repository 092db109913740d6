#include "react/risk_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>

namespace react {

void validate(const NormalizationConfig& n) {
  if (!(n.reference_energy > 0.0))
    throw ConfigError("normalization.reference_energy must be > 0");
  if (!(n.sigma_long > 0.0) || !(n.sigma_lat > 0.0))
    throw ConfigError("normalization reachability scales must be > 0");
}

RiskMatrix compute_risk_matrix(const Grid& grid, const AgentState& ego,
                               std::span<const AgentState> participants,
                               const LaneGeometry& lane, const ModelParams& p) {
  RiskMatrix m;
  m.rows = grid.rows;
  m.cols = grid.cols;
  m.cell_size = grid.cell_size;
  m.origin = grid.origin;
  m.axis_long = grid.axis_long;
  m.axis_lat = grid.axis_lat;
  m.centers_ego = grid.centers_ego;
  m.cells.resize(grid.rows * grid.cols);
  for (std::size_t idx = 0; idx < m.cells.size(); ++idx) {
    const Vec2 world = grid.center_world(idx);
    const double u =
        total_field_at(world, ego.velocity, participants, ego, lane, p);
    m.cells[idx] = std::max(0.0, u);
  }
  return m;
}

double aggregate_energy(const RiskMatrix& m, const NormalizationConfig& n) {
  if (m.cells.empty()) return 0.0;
  if (n.mode == AggregationMode::MeanOverRoi) {
    double sum = 0.0;
    for (double v : m.cells) sum += v;
    return sum / static_cast<double>(m.cells.size());
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t idx = 0; idx < m.cells.size(); ++idx) {
    const Vec2 c = m.centers_ego[idx];
    const double ax = c.x / n.sigma_long;
    const double ay = c.y / n.sigma_lat;
    const double w = std::exp(-(ax * ax) - (ay * ay));
    num += w * m.cells[idx];
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

double global_risk(const RiskMatrix& m, const NormalizationConfig& n) {
  validate(n);
  const double r = aggregate_energy(m, n) / n.reference_energy;
  return std::clamp(r, 0.0, 1.0);
}

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::F:  return "F";
    case Direction::FL: return "FL";
    case Direction::L:  return "L";
    case Direction::RL: return "RL";
    case Direction::B:  return "B";
    case Direction::RR: return "RR";
    case Direction::R:  return "R";
    case Direction::FR: return "FR";
  }
  return "F";
}

Direction opposite_of(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 4) % 8);
}

int sector_index(double cx, double cy, SectorConvention conv) {
  if (cx == 0.0 && cy == 0.0) return 0;  // origin cell reads as ahead
  double deg = std::atan2(cy, cx) * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 360.0;
  if (conv == SectorConvention::Centered) deg = std::fmod(deg + 22.5, 360.0);
  int idx = static_cast<int>(deg / 45.0);
  return std::clamp(idx, 0, 7);
}

SectorRisks sector_risks(const RiskMatrix& m, SectorConvention conv) {
  std::array<double, 8> sum{};
  std::array<std::size_t, 8> count{};

  // Columns walk outward from the centerline, adding each +/- lateral pair
  // as one term so a mirrored scene accumulates bit-identical sector sums.
  std::vector<std::size_t> upper(m.cols / 2), lower(m.cols / 2);
  for (std::size_t k = 0; k < m.cols / 2; ++k) {
    upper[k] = m.cols / 2 + k;
    lower[k] = m.cols / 2 - 1 - k;
  }
  const bool odd = m.cols % 2 != 0;

  for (std::size_t i = 0; i < m.rows; ++i) {
    const std::size_t base = i * m.cols;
    if (odd) {
      const std::size_t j = m.cols / 2;
      const Vec2 c = m.centers_ego[base + j];
      const int s = sector_index(c.x, c.y, conv);
      sum[s] += m.cells[base + j];
      ++count[s];
    }
    for (std::size_t k = 0; k < upper.size(); ++k) {
      const std::size_t ju = upper[k];
      const std::size_t jl = lower[k];
      const Vec2 cu = m.centers_ego[base + ju];
      const Vec2 cl = m.centers_ego[base + jl];
      const int su = sector_index(cu.x, cu.y, conv);
      const int sl = sector_index(cl.x, cl.y, conv);
      if (su == sl) {
        sum[su] += m.cells[base + ju] + m.cells[base + jl];
        count[su] += 2;
      } else {
        sum[su] += m.cells[base + ju];
        ++count[su];
        sum[sl] += m.cells[base + jl];
        ++count[sl];
      }
    }
  }

  SectorRisks out;
  for (int s = 0; s < 8; ++s)
    out.value[s] = count[s] > 0 ? sum[s] / static_cast<double>(count[s]) : 0.0;

  // Ties resolve toward the ego's travel direction.
  static constexpr Direction priority[8] = {
      Direction::F,  Direction::FL, Direction::FR, Direction::L,
      Direction::R,  Direction::RL, Direction::RR, Direction::B};
  Direction best = Direction::F;
  for (Direction d : priority)
    if (out.value[static_cast<int>(d)] > out.value[static_cast<int>(best)])
      best = d;
  out.dominant = best;
  return out;
}

// The reference scene pins the emergency threshold to a concrete conflict:
// two cars meeting head-on at urban speed, a couple of car lengths clear.
// Anything scoring 0.7 is as pressing as that.
namespace {
constexpr double kCanonSpeed = 20.0 / 3.6;  // m/s
constexpr double kCanonGap = 13.0;          // m, center to center
}  // namespace

CalibrationScene canonical_calibration_scene() {
  CalibrationScene s;
  s.ego.id = 0;
  s.ego.position = {0.0, 0.0};
  s.ego.velocity = {kCanonSpeed, 0.0};
  s.ego.mass = 1500.0;
  s.ego.cls = AgentClass::for_tag(ClassTag::Car);
  s.threat.id = 1;
  s.threat.position = {kCanonGap, 0.0};
  s.threat.velocity = {-kCanonSpeed, 0.0};
  s.threat.mass = 1500.0;
  s.threat.cls = AgentClass::for_tag(ClassTag::Car);
  return s;
}

double calibrate_reference_energy(const ModelParams& p, const GridConfig& grid_cfg,
                                  const NormalizationConfig& norm) {
  validate(p);
  const CalibrationScene scene = canonical_calibration_scene();
  const Grid grid = build_grid(scene.ego, grid_cfg);
  const LaneGeometry no_lane{};  // disabled
  const AgentState participants[] = {scene.threat};
  const RiskMatrix m =
      compute_risk_matrix(grid, scene.ego, participants, no_lane, p);
  const double raw = aggregate_energy(m, norm);
  if (!(raw > 0.0))
    throw CalibrationError("calibration scene aggregates to zero energy");
  double ref = raw / 0.7;
  // Division rounding must not land the fixed point below the inclusive
  // emergency threshold; nudge by ulps until raw/ref >= 0.7.
  while (raw / ref < 0.7) ref = std::nextafter(ref, 0.0);
  return ref;
}

void write_matrix_csv(std::ostream& os, const RiskMatrix& m) {
  os << "# rows=" << m.rows << " cols=" << m.cols << " cell_size=" << m.cell_size
     << " origin=" << m.origin.x << "," << m.origin.y
     << " heading=" << m.axis_long.x << "," << m.axis_long.y << "\n";
  os.precision(17);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) os << ',';
      os << m.cells[i * m.cols + j];
    }
    os << '\n';
  }
}

void write_matrix_csv(const std::string& path, const RiskMatrix& m) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open for writing: " + path);
  write_matrix_csv(f, m);
  if (!f) throw InputError("write failed: " + path);
}

}  // namespace react
