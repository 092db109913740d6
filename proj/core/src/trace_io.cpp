#include "react/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace react {

using ordered_json = nlohmann::ordered_json;

void validate(const TraceSchema& s) {
  if (!(s.frame_rate > 0.0) || !std::isfinite(s.frame_rate))
    throw ConfigError("trace schema frame_rate must be positive and finite");
  for (const std::string* col :
       {&s.col_frame, &s.col_id, &s.col_x, &s.col_y, &s.col_vx, &s.col_vy,
        &s.col_class})
    if (col->empty()) throw ConfigError("trace schema column names must be non-empty");
}

double MassDefaults::for_tag(ClassTag tag) const {
  switch (tag) {
    case ClassTag::Car: return car;
    case ClassTag::Truck: return truck;
    case ClassTag::Cyclist: return cyclist;
    case ClassTag::Pedestrian: return pedestrian;
  }
  return car;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& cell, std::size_t line_no,
                    const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw InputError("line " + std::to_string(line_no) + ": bad " +
                     std::string(what) + " value '" + cell + "'");
  }
}

std::int64_t parse_int(const std::string& cell, std::size_t line_no,
                       const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return static_cast<std::int64_t>(v);
  } catch (const std::exception&) {
    throw InputError("line " + std::to_string(line_no) + ": bad " +
                     std::string(what) + " value '" + cell + "'");
  }
}

}  // namespace

Trace load_trace(const std::string& path, const TraceSchema& schema,
                 std::int64_t ego_id, const MassDefaults& masses) {
  validate(schema);

  std::ifstream f(path);
  if (!f) throw InputError("cannot open trace file: " + path);

  std::string header;
  if (!std::getline(f, header)) throw InputError("empty trace file: " + path);
  if (!header.empty() && header.back() == '\r') header.pop_back();

  const std::vector<std::string> cols = split_csv_line(header);
  auto col_index = [&](const std::string& name) {
    const auto it = std::find(cols.begin(), cols.end(), name);
    if (it == cols.end())
      throw InputError("trace file missing column '" + name + "': " + path);
    return static_cast<std::size_t>(it - cols.begin());
  };
  const std::size_t ci_frame = col_index(schema.col_frame);
  const std::size_t ci_id = col_index(schema.col_id);
  const std::size_t ci_x = col_index(schema.col_x);
  const std::size_t ci_y = col_index(schema.col_y);
  const std::size_t ci_vx = col_index(schema.col_vx);
  const std::size_t ci_vy = col_index(schema.col_vy);
  const std::size_t ci_class = col_index(schema.col_class);
  const std::size_t need =
      1 + std::max({ci_frame, ci_id, ci_x, ci_y, ci_vx, ci_vy, ci_class});

  std::map<std::int64_t, TraceFrame> frames;  // ordered by frame index
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() < need)
      throw InputError("line " + std::to_string(line_no) +
                       ": expected at least " + std::to_string(need) +
                       " columns, got " + std::to_string(cells.size()));

    const std::int64_t frame_idx = parse_int(cells[ci_frame], line_no, "frame");
    AgentState a;
    a.id = parse_int(cells[ci_id], line_no, "id");
    a.position = {parse_double(cells[ci_x], line_no, "x"),
                  parse_double(cells[ci_y], line_no, "y")};
    a.velocity = {parse_double(cells[ci_vx], line_no, "xVelocity"),
                  parse_double(cells[ci_vy], line_no, "yVelocity")};
    if (!std::isfinite(a.position.x) || !std::isfinite(a.position.y))
      throw InputError("line " + std::to_string(line_no) +
                       ": non-finite position");

    ClassTag tag = ClassTag::Car;
    if (!parse_class_tag(cells[ci_class], tag))
      throw InputError("line " + std::to_string(line_no) +
                       ": unknown class '" + cells[ci_class] + "'");
    a.cls = AgentClass::for_tag(tag);
    a.mass = masses.for_tag(a.cls.tag);

    TraceFrame& fr = frames[frame_idx];
    for (const AgentState& seen : fr.agents)
      if (seen.id == a.id)
        throw InputError("line " + std::to_string(line_no) +
                         ": duplicate (frame, id) pair (" +
                         std::to_string(frame_idx) + ", " +
                         std::to_string(a.id) + ")");
    fr.agents.push_back(a);
  }
  if (frames.empty()) throw InputError("trace file has no data rows: " + path);

  Trace tr;
  tr.ego_id = ego_id;
  tr.dt = 1.0 / schema.frame_rate;
  tr.frames.reserve(frames.size());

  std::optional<AgentState> last_ego;
  double last_ego_t = 0.0;  // time of the last real ego observation
  for (auto& [idx, fr] : frames) {
    fr.t = static_cast<double>(idx) / schema.frame_rate;
    const AgentState* ego = find_agent(fr, ego_id);
    if (ego == nullptr) {
      if (last_ego && fr.t - last_ego_t <= 0.5) {
        fr.agents.push_back(*last_ego);  // short occlusion: hold last state
      } else {
        throw InputError("ego id " + std::to_string(ego_id) +
                         " missing near t=" + std::to_string(fr.t) +
                         " for longer than the 0.5 s gap-fill horizon");
      }
    } else {
      last_ego = *ego;
      last_ego_t = fr.t;
    }
    tr.frames.push_back(std::move(fr));
  }
  return tr;
}

void write_assessments(const std::string& path,
                       const std::vector<FrameAssessment>& assessments) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open for writing: " + path);

  for (const FrameAssessment& a : assessments) {
    ordered_json j;
    j["t"] = a.t;
    j["global_risk"] = a.global_risk;
    j["sectors"] = a.sectors.value;
    j["dominant"] = direction_name(a.sectors.dominant);
    j["level"] = a.advisory.level;
    j["command"] = a.advisory.command;
    if (a.advisory.threat_class)
      j["threat_class"] = class_name(*a.advisory.threat_class);
    else
      j["threat_class"] = nullptr;
    j["threat_speed_delta"] = a.advisory.threat_speed_delta;
    j["t1"] = a.advisory.thresholds.t1;
    j["t2"] = a.advisory.thresholds.t2;
    j["latency_seconds"] = a.latency_seconds;
    f << j.dump() << '\n';
  }
  if (!f) throw InputError("write failed: " + path);
}

std::vector<FrameAssessment> read_assessments(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open assessments file: " + path);

  std::vector<FrameAssessment> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const std::exception& e) {
      throw InputError("line " + std::to_string(line_no) +
                       ": bad JSON: " + e.what());
    }
    FrameAssessment a;
    a.t = j.at("t").get<double>();
    a.global_risk = j.at("global_risk").get<double>();
    const auto& sectors = j.at("sectors");
    if (sectors.size() != a.sectors.value.size())
      throw InputError("line " + std::to_string(line_no) +
                       ": expected 8 sector values");
    for (std::size_t i = 0; i < a.sectors.value.size(); ++i)
      a.sectors.value[i] = sectors.at(i).get<double>();
    bool dominant_ok = false;
    for (int d = 0; d < 8; ++d) {
      if (j.at("dominant").get<std::string>() ==
          direction_name(static_cast<Direction>(d))) {
        a.sectors.dominant = static_cast<Direction>(d);
        dominant_ok = true;
        break;
      }
    }
    if (!dominant_ok)
      throw InputError("line " + std::to_string(line_no) +
                       ": unknown dominant sector");
    a.advisory.dominant = a.sectors.dominant;
    a.advisory.level = j.at("level").get<int>();
    a.advisory.command = j.at("command").get<std::string>();
    if (!j.at("threat_class").is_null()) {
      ClassTag tag = ClassTag::Car;
      if (!parse_class_tag(j.at("threat_class").get<std::string>(), tag))
        throw InputError("line " + std::to_string(line_no) +
                         ": unknown threat class");
      a.advisory.threat_class = tag;
    }
    a.advisory.threat_speed_delta = j.at("threat_speed_delta").get<double>();
    a.advisory.thresholds.t1 = j.at("t1").get<double>();
    a.advisory.thresholds.t2 = j.at("t2").get<double>();
    a.latency_seconds = j.at("latency_seconds").get<double>();
    out.push_back(std::move(a));
  }
  return out;
}

void write_trace_csv(const std::string& path, const Trace& trace) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open for writing: " + path);
  f.precision(17);
  f << "frame,id,x,y,xVelocity,yVelocity,class\n";
  for (std::size_t k = 0; k < trace.frames.size(); ++k) {
    const TraceFrame& fr = trace.frames[k];
    const auto frame_idx =
        static_cast<std::int64_t>(std::llround(fr.t / trace.dt));
    for (const AgentState& a : fr.agents) {
      f << frame_idx << ',' << a.id << ',' << a.position.x << ','
        << a.position.y << ',' << a.velocity.x << ',' << a.velocity.y << ','
        << class_name(a.cls.tag) << '\n';
    }
  }
  if (!f) throw InputError("write failed: " + path);
}

}  // namespace react
