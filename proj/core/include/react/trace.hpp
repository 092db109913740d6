#pragma once

#include <cstdint>
#include <vector>

#include "react/agent.hpp"

namespace react {

struct TraceFrame {
  double t = 0.0;
  std::vector<AgentState> agents;
};

struct TraceLabels {
  double t_f = 0.0;           // conflict-vehicle state-change time
  double hazard_start = 0.0;  // window for miss/false-alarm bookkeeping
  double hazard_end = 0.0;
};

struct Trace {
  std::vector<TraceFrame> frames;  // strictly increasing t, constant dt
  TraceLabels labels;
  std::int64_t ego_id = 0;
  double dt = 0.05;
};

// nullptr when the id is absent from the frame.
const AgentState* find_agent(const TraceFrame& frame, std::int64_t id);

}  // namespace react
