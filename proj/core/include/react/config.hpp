#pragma once

#include <string>

#include "react/advisory.hpp"
#include "react/baselines.hpp"
#include "react/scenario.hpp"
#include "react/trace_io.hpp"

namespace react {

// Everything the pipelines need, loadable from one JSON document with
// sections model, grid, normalization, thresholds, scenario, io. Every
// section and key is optional; unknown keys are rejected loudly.
struct EngineConfig {
  ModelParams model;
  GridConfig grid;
  NormalizationConfig norm;
  ThresholdConfig thresholds;

  // scenario section
  ScenarioOverrides scenario;
  DriverParams driver;
  LaneGeometry lane;  // applies to scenario runs and replays alike

  // io section
  TraceSchema schema;
  RssParams rss;
  LeadSelector lead;

  // set false when the config pins reference_energy explicitly
  bool auto_calibrate = true;
};

void validate(const EngineConfig& c);  // throws ConfigError

// Freezes norm.reference_energy from the canonical scene unless the config
// already pinned it. Idempotent.
void ensure_calibrated(EngineConfig& c);

EngineConfig parse_engine_config(const std::string& json_text);
EngineConfig load_engine_config(const std::string& path);

}  // namespace react
