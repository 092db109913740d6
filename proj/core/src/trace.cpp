#include "react/trace.hpp"

namespace react {

const AgentState* find_agent(const TraceFrame& frame, std::int64_t id) {
  for (const AgentState& a : frame.agents)
    if (a.id == id) return &a;
  return nullptr;
}

}  // namespace react
