#pragma once

#include <string>
#include <vector>

#include "react/advisory.hpp"
#include "react/trace.hpp"

namespace react {

// Column names for trajectory CSVs, modeled on the common drone-recorded
// highway dataset layout. Extra columns are ignored.
struct TraceSchema {
  std::string col_frame = "frame";
  std::string col_id = "id";
  std::string col_x = "x";
  std::string col_y = "y";
  std::string col_vx = "xVelocity";
  std::string col_vy = "yVelocity";
  std::string col_class = "class";
  double frame_rate = 25.0;  // Hz
};

void validate(const TraceSchema& s);  // throws ConfigError

struct MassDefaults {
  double car = 1500.0;  // kg
  double truck = 10000.0;
  double cyclist = 90.0;
  double pedestrian = 70.0;

  double for_tag(ClassTag tag) const;
};

// Reads a comma-separated file with a header row; groups rows by frame
// index; timestamps are frame / frame_rate. A frame missing the ego is
// back-filled from its last known state for up to 0.5 s, after which
// loading fails. Malformed rows and unknown class strings fail with the
// offending line number.
Trace load_trace(const std::string& path, const TraceSchema& schema,
                 std::int64_t ego_id, const MassDefaults& masses = {});

// One JSON object per line, insertion-ordered keys, round-trip-exact
// number formatting. The risk matrix itself is not serialized; matrix
// snapshots have their own CSV writer.
void write_assessments(const std::string& path,
                       const std::vector<FrameAssessment>& assessments);

// Parses the JSONL written by write_assessments (matrices come back empty).
std::vector<FrameAssessment> read_assessments(const std::string& path);

// frame,id,x,y,xVelocity,yVelocity,class rows; loadable via load_trace
// with frame_rate = 1 / trace.dt.
void write_trace_csv(const std::string& path, const Trace& trace);

}  // namespace react
