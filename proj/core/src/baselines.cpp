#include "react/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "react/geometry.hpp"

namespace react {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void validate(const RssParams& p) {
  if (!(p.reaction_time > 0.0) || !std::isfinite(p.reaction_time))
    throw ConfigError("rss reaction_time must be positive and finite");
  if (!(p.max_brake > 0.0) || !std::isfinite(p.max_brake))
    throw ConfigError("rss max_brake must be positive and finite");
}

double ttc(const LongitudinalPair& pair) {
  if (pair.ego_speed <= pair.lead_speed) return kInf;
  return pair.gap / (pair.ego_speed - pair.lead_speed);
}

double thw(const LongitudinalPair& pair) {
  if (pair.ego_speed <= 0.0) return kInf;
  return pair.gap / pair.ego_speed;
}

double rss_required_gap(double ego_speed, const RssParams& params) {
  return ego_speed * params.reaction_time +
         ego_speed * ego_speed / (2.0 * params.max_brake);
}

bool rss_violated(const LongitudinalPair& pair, const RssParams& params) {
  return pair.gap < rss_required_gap(pair.ego_speed, params);
}

namespace {

// Nearest agent ahead of the ego along its heading, within the lateral
// lane window. Heading falls back to world +x for a stationary ego.
const AgentState* select_lead(const TraceFrame& frame, const AgentState& ego,
                              const LeadSelector& sel) {
  Vec2 axis = ego.velocity;
  const double speed = norm(axis);
  if (speed < kSpeedTol) axis = {1.0, 0.0};
  else axis = {axis.x / speed, axis.y / speed};
  const Vec2 lat = perp(axis);

  const AgentState* best = nullptr;
  double best_ahead = kInf;
  for (const AgentState& a : frame.agents) {
    if (a.id == ego.id) continue;
    const Vec2 d = a.position - ego.position;
    const double ahead = dot(d, axis);
    const double offset = std::abs(dot(d, lat));
    if (ahead <= 0.0 || offset > sel.lane_tolerance) continue;
    if (ahead < best_ahead) {
      best_ahead = ahead;
      best = &a;
    }
  }
  return best;
}

}  // namespace

std::vector<BaselineRecord> baseline_series(const Trace& trace,
                                            const LeadSelector& selector,
                                            const RssParams& rss) {
  validate(rss);
  std::vector<BaselineRecord> out;
  out.reserve(trace.frames.size());

  for (std::size_t i = 0; i < trace.frames.size(); ++i) {
    const TraceFrame& frame = trace.frames[i];
    const AgentState* ego = find_agent(frame, trace.ego_id);
    if (ego == nullptr)
      throw InputError("baseline_series: ego id " +
                       std::to_string(trace.ego_id) + " missing at frame " +
                       std::to_string(i));

    BaselineRecord rec;
    rec.frame = i;
    rec.t = frame.t;
    rec.ttc = kInf;
    rec.thw = kInf;
    rec.gap = kInf;

    if (const AgentState* lead = select_lead(frame, *ego, selector)) {
      const double center_dist = norm(lead->position - ego->position);
      LongitudinalPair pair;
      pair.gap = std::max(0.0, center_dist - selector.vehicle_length);
      pair.ego_speed = norm(ego->velocity);
      pair.lead_speed = norm(lead->velocity);

      rec.has_lead = true;
      rec.lead_id = lead->id;
      rec.gap = pair.gap;
      rec.ttc = ttc(pair);
      rec.thw = thw(pair);
      rec.rss_violated = rss_violated(pair, rss);
    }
    out.push_back(rec);
  }
  return out;
}

void write_baseline_csv(const std::string& path,
                        const std::vector<BaselineRecord>& records) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open for writing: " + path);
  f.precision(17);
  f << "frame,t,lead_id,gap,ttc,thw,rss_violated\n";
  for (const BaselineRecord& r : records) {
    f << r.frame << ',' << r.t << ',';
    if (r.has_lead) f << r.lead_id;
    f << ',';
    auto num = [&f](double v) {
      if (std::isinf(v)) f << "inf";
      else f << v;
    };
    num(r.gap);
    f << ',';
    num(r.ttc);
    f << ',';
    num(r.thw);
    f << ',' << (r.rss_violated ? 1 : 0) << '\n';
  }
  if (!f) throw InputError("write failed: " + path);
}

}  // namespace react
