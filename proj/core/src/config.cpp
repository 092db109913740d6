#include "react/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

namespace react {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& section,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) { known = true; break; }
    if (!known)
      throw ConfigError("unknown key '" + item.key() + "' in " + section);
  }
}

double get_num(const json& obj, const char* key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number())
    throw ConfigError(std::string("key '") + key + "' must be a number");
  return it->get<double>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean())
    throw ConfigError(std::string("key '") + key + "' must be a boolean");
  return it->get<bool>();
}

std::string get_str(const json& obj, const char* key, std::string fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string())
    throw ConfigError(std::string("key '") + key + "' must be a string");
  return it->get<std::string>();
}

void maybe_num(const json& obj, const char* key, std::optional<double>& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number())
    throw ConfigError(std::string("key '") + key + "' must be a number");
  out = it->get<double>();
}

LineType parse_line_type(const std::string& text) {
  if (text == "dashed") return LineType::Dashed;
  if (text == "solid") return LineType::Solid;
  throw ConfigError("line type must be 'dashed' or 'solid', got '" + text +
                    "'");
}

const char* line_type_name(LineType t) {
  return t == LineType::Solid ? "solid" : "dashed";
}

AggregationMode parse_aggregation_mode(const std::string& text) {
  if (text == "mean_over_roi") return AggregationMode::MeanOverRoi;
  if (text == "reachability_weighted_mean")
    return AggregationMode::ReachabilityWeightedMean;
  throw ConfigError(
      "normalization mode must be 'mean_over_roi' or "
      "'reachability_weighted_mean', got '" +
      text + "'");
}

const char* aggregation_mode_name(AggregationMode m) {
  return m == AggregationMode::MeanOverRoi ? "mean_over_roi"
                                           : "reachability_weighted_mean";
}

}  // namespace

void validate(const EngineConfig& c) {
  validate(c.model);
  validate(c.grid);
  validate(c.norm);
  validate(c.thresholds);
  validate(c.driver);
  validate(c.lane);
  validate(c.schema);
  validate(c.rss);
  if (!(c.lead.lane_tolerance > 0.0))
    throw ConfigError("io lane_tolerance must be positive");
  if (c.lead.vehicle_length < 0.0)
    throw ConfigError("io vehicle_length must be non-negative");
}

EngineConfig parse_engine_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(root, "config root",
                 {"model", "grid", "normalization", "thresholds", "scenario",
                  "io"});

  EngineConfig c;

  if (root.contains("model")) {
    const json& m = root["model"];
    reject_unknown(m, "model",
                   {"beta", "epsilon", "k_time", "a_min", "b_lat", "k_lane",
                    "lambda_dashed", "lambda_solid", "y_max"});
    c.model.beta = get_num(m, "beta", c.model.beta);
    c.model.epsilon = get_num(m, "epsilon", c.model.epsilon);
    c.model.k_time = get_num(m, "k_time", c.model.k_time);
    c.model.a_min = get_num(m, "a_min", c.model.a_min);
    c.model.b_lat = get_num(m, "b_lat", c.model.b_lat);
    c.model.k_lane = get_num(m, "k_lane", c.model.k_lane);
    c.model.lambda_dashed = get_num(m, "lambda_dashed", c.model.lambda_dashed);
    c.model.lambda_solid = get_num(m, "lambda_solid", c.model.lambda_solid);
    c.model.y_max = get_num(m, "y_max", c.model.y_max);
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    reject_unknown(g, "grid",
                   {"half_length_fwd", "half_length_back", "half_width",
                    "cell_size", "max_cells"});
    c.grid.half_length_fwd =
        get_num(g, "half_length_fwd", c.grid.half_length_fwd);
    c.grid.half_length_back =
        get_num(g, "half_length_back", c.grid.half_length_back);
    c.grid.half_width = get_num(g, "half_width", c.grid.half_width);
    c.grid.cell_size = get_num(g, "cell_size", c.grid.cell_size);
    c.grid.max_cells = static_cast<std::size_t>(
        get_num(g, "max_cells", static_cast<double>(c.grid.max_cells)));
  }

  if (root.contains("normalization")) {
    const json& n = root["normalization"];
    reject_unknown(n, "normalization",
                   {"reference_energy", "mode", "sigma_long", "sigma_lat"});
    if (n.contains("reference_energy")) c.auto_calibrate = false;
    c.norm.reference_energy =
        get_num(n, "reference_energy", c.norm.reference_energy);
    c.norm.mode = parse_aggregation_mode(
        get_str(n, "mode", aggregation_mode_name(c.norm.mode)));
    c.norm.sigma_long = get_num(n, "sigma_long", c.norm.sigma_long);
    c.norm.sigma_lat = get_num(n, "sigma_lat", c.norm.sigma_lat);
  }

  if (root.contains("thresholds")) {
    const json& t = root["thresholds"];
    reject_unknown(t, "thresholds",
                   {"t1_base", "t2_base", "delta_v_scale", "brake_full"});
    c.thresholds.t1_base = get_num(t, "t1_base", c.thresholds.t1_base);
    c.thresholds.t2_base = get_num(t, "t2_base", c.thresholds.t2_base);
    c.thresholds.delta_v_scale =
        get_num(t, "delta_v_scale", c.thresholds.delta_v_scale);
    c.thresholds.brake_full = get_num(t, "brake_full", c.thresholds.brake_full);
  }

  if (root.contains("scenario")) {
    const json& s = root["scenario"];
    reject_unknown(
        s, "scenario",
        {"gap", "t_f", "duration", "dt", "maneuver_accel", "merge_duration",
         "cf_lead_final_speed", "nominal", "lane_enabled", "y_left", "y_right",
         "left_line", "right_line", "driver_decel", "driver_reaction_delay",
         "driver_brake_ramp", "driver_surrogate_reaction_after_tf"});
    maybe_num(s, "gap", c.scenario.gap);
    maybe_num(s, "t_f", c.scenario.t_f);
    maybe_num(s, "duration", c.scenario.duration);
    maybe_num(s, "dt", c.scenario.dt);
    maybe_num(s, "maneuver_accel", c.scenario.maneuver_accel);
    maybe_num(s, "merge_duration", c.scenario.merge_duration);
    maybe_num(s, "cf_lead_final_speed", c.scenario.cf_lead_final_speed);
    c.scenario.nominal = get_bool(s, "nominal", c.scenario.nominal);
    c.lane.enabled = get_bool(s, "lane_enabled", c.lane.enabled);
    c.lane.y_left = get_num(s, "y_left", c.lane.y_left);
    c.lane.y_right = get_num(s, "y_right", c.lane.y_right);
    c.lane.left_type =
        parse_line_type(get_str(s, "left_line", line_type_name(c.lane.left_type)));
    c.lane.right_type = parse_line_type(
        get_str(s, "right_line", line_type_name(c.lane.right_type)));
    c.driver.decel = get_num(s, "driver_decel", c.driver.decel);
    c.driver.reaction_delay =
        get_num(s, "driver_reaction_delay", c.driver.reaction_delay);
    c.driver.brake_ramp = get_num(s, "driver_brake_ramp", c.driver.brake_ramp);
    c.driver.surrogate_reaction_after_tf =
        get_num(s, "driver_surrogate_reaction_after_tf",
                c.driver.surrogate_reaction_after_tf);
  }

  if (root.contains("io")) {
    const json& io = root["io"];
    reject_unknown(io, "io",
                   {"frame_rate", "col_frame", "col_id", "col_x", "col_y",
                    "col_vx", "col_vy", "col_class", "rss_reaction_time",
                    "rss_max_brake", "lane_tolerance", "vehicle_length"});
    c.schema.frame_rate = get_num(io, "frame_rate", c.schema.frame_rate);
    c.schema.col_frame = get_str(io, "col_frame", c.schema.col_frame);
    c.schema.col_id = get_str(io, "col_id", c.schema.col_id);
    c.schema.col_x = get_str(io, "col_x", c.schema.col_x);
    c.schema.col_y = get_str(io, "col_y", c.schema.col_y);
    c.schema.col_vx = get_str(io, "col_vx", c.schema.col_vx);
    c.schema.col_vy = get_str(io, "col_vy", c.schema.col_vy);
    c.schema.col_class = get_str(io, "col_class", c.schema.col_class);
    c.rss.reaction_time =
        get_num(io, "rss_reaction_time", c.rss.reaction_time);
    c.rss.max_brake = get_num(io, "rss_max_brake", c.rss.max_brake);
    c.lead.lane_tolerance =
        get_num(io, "lane_tolerance", c.lead.lane_tolerance);
    c.lead.vehicle_length =
        get_num(io, "vehicle_length", c.lead.vehicle_length);
  }

  validate(c);
  return c;
}

EngineConfig load_engine_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open config file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_engine_config(buf.str());
}

void ensure_calibrated(EngineConfig& c) {
  if (!c.auto_calibrate) return;
  c.norm.reference_energy = calibrate_reference_energy(c.model, c.grid, c.norm);
  c.auto_calibrate = false;
}

}  // namespace react
