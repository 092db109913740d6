#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "react/params.hpp"
#include "react/trace.hpp"

namespace react {

// Longitudinal car-following snapshot: bumper gap plus scalar speeds.
struct LongitudinalPair {
  double gap = 0.0;        // m, bumper to bumper
  double ego_speed = 0.0;  // m/s
  double lead_speed = 0.0; // m/s
};

struct RssParams {
  double reaction_time = 0.5;  // s
  double max_brake = 5.0;      // m/s^2
};

void validate(const RssParams& p);  // throws ConfigError

// gap / closing speed; +infinity when the ego is not faster than the lead.
double ttc(const LongitudinalPair& pair);

// gap / ego speed; +infinity for a stationary ego.
double thw(const LongitudinalPair& pair);

// speed * reaction_time + speed^2 / (2 * max_brake)
double rss_required_gap(double ego_speed, const RssParams& params);

bool rss_violated(const LongitudinalPair& pair, const RssParams& params);

struct LeadSelector {
  double lane_tolerance = 2.0;   // m, lateral window for "same lane"
  double vehicle_length = 4.5;   // m, subtracted to get bumper gaps
};

struct BaselineRecord {
  std::size_t frame = 0;
  double t = 0.0;
  bool has_lead = false;
  std::int64_t lead_id = -1;
  double gap = 0.0;   // m, bumper gap, valid when has_lead
  double ttc = 0.0;   // s, +infinity when not closing
  double thw = 0.0;   // s
  bool rss_violated = false;
};

// Per-frame surrogate metrics for the ego against its nearest same-lane
// lead (ahead along the ego heading). Frames without a lead report
// infinities and no violation.
std::vector<BaselineRecord> baseline_series(const Trace& trace,
                                            const LeadSelector& selector,
                                            const RssParams& rss);

// frame,t,lead_id,gap,ttc,thw,rss_violated rows; infinities print as "inf".
void write_baseline_csv(const std::string& path,
                        const std::vector<BaselineRecord>& records);

}  // namespace react
