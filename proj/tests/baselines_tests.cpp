#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <react/baselines.hpp>

#include "test_support.hpp"

using namespace react;
using testsup::make_agent;

namespace {

Trace two_car_trace() {
  Trace trace;
  trace.ego_id = 0;
  trace.dt = 0.1;
  for (int i = 0; i < 3; ++i) {
    TraceFrame f;
    f.t = 0.1 * i;
    f.agents.push_back(make_agent(0, {2.0 * i, 0.0}, {20.0, 0.0}));
    f.agents.push_back(make_agent(1, {24.5 + 1.0 * i, 0.0}, {10.0, 0.0}));
    trace.frames.push_back(f);
  }
  return trace;
}

}  // namespace

TEST_CASE("pointwise surrogate formulas") {
  LongitudinalPair pair{20.0, 20.0, 10.0};
  CHECK(ttc(pair) == doctest::Approx(2.0));
  CHECK(thw(pair) == doctest::Approx(1.0));

  pair = {15.0, 19.0 / 3.6, 0.0};
  CHECK(thw(pair) == doctest::Approx(15.0 / (19.0 / 3.6)));

  // not closing: no collision course
  CHECK(std::isinf(ttc({30.0, 5.0, 5.0})));
  CHECK(std::isinf(ttc({30.0, 5.0, 8.0})));
  // stationary ego never reaches the lead
  CHECK(std::isinf(thw({30.0, 0.0, 8.0})));

  RssParams rss;
  CHECK(rss_required_gap(20.0, rss) == doctest::Approx(20.0 * 0.5 + 400.0 / 10.0));
  CHECK(rss_violated({49.9, 20.0, 10.0}, rss));
  CHECK(!rss_violated({50.0, 20.0, 10.0}, rss));
}

TEST_CASE("rss parameter validation") {
  RssParams rss;
  CHECK_NOTHROW(validate(rss));
  rss.reaction_time = 0.0;
  CHECK_THROWS_AS(validate(rss), ConfigError);
  rss = RssParams{};
  rss.max_brake = -1.0;
  CHECK_THROWS_AS(validate(rss), ConfigError);
}

TEST_CASE("lead selection picks the nearest same-lane agent ahead") {
  Trace trace;
  trace.ego_id = 7;
  TraceFrame f;
  f.t = 0.0;
  f.agents.push_back(make_agent(7, {0, 0}, {10, 0}));
  f.agents.push_back(make_agent(1, {30, 0.5}, {8, 0}));   // same lane, far
  f.agents.push_back(make_agent(2, {12, -1.0}, {9, 0}));  // same lane, near
  f.agents.push_back(make_agent(3, {6, 3.5}, {9, 0}));    // adjacent lane
  f.agents.push_back(make_agent(4, {-8, 0}, {12, 0}));    // behind
  trace.frames.push_back(f);

  const auto records = baseline_series(trace, LeadSelector{}, RssParams{});
  REQUIRE(records.size() == 1);
  const auto& r = records.front();
  CHECK(r.has_lead);
  CHECK(r.lead_id == 2);
  // bumper gap: center distance minus one vehicle length
  CHECK(r.gap == doctest::Approx(std::hypot(12.0, 1.0) - 4.5));
  CHECK(r.ttc == doctest::Approx(r.gap / (10.0 - 9.0)));
  CHECK(r.thw == doctest::Approx(r.gap / 10.0));
}

TEST_CASE("frames without a lead report infinities") {
  Trace trace;
  trace.ego_id = 0;
  TraceFrame f;
  f.t = 1.5;
  f.agents.push_back(make_agent(0, {0, 0}, {10, 0}));
  f.agents.push_back(make_agent(1, {-20, 0}, {10, 0}));
  trace.frames.push_back(f);

  const auto records = baseline_series(trace, LeadSelector{}, RssParams{});
  REQUIRE(records.size() == 1);
  CHECK(!records.front().has_lead);
  CHECK(std::isinf(records.front().gap));
  CHECK(std::isinf(records.front().ttc));
  CHECK(std::isinf(records.front().thw));
  CHECK(!records.front().rss_violated);
}

TEST_CASE("missing ego is an input error naming the frame") {
  Trace trace = two_car_trace();
  trace.frames[1].agents.erase(trace.frames[1].agents.begin());
  try {
    baseline_series(trace, LeadSelector{}, RssParams{});
    FAIL("expected InputError");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("frame 1") != std::string::npos);
  }
}

TEST_CASE("baseline csv round trip format") {
  const auto records = baseline_series(two_car_trace(), LeadSelector{},
                                       RssParams{});
  REQUIRE(records.size() == 3);
  CHECK(records[0].gap == doctest::Approx(20.0));
  CHECK(records[0].ttc == doctest::Approx(2.0));
  CHECK(records[2].rss_violated);  // gap 18, required 50

  const auto path = std::filesystem::temp_directory_path() / "baseline_t.csv";
  write_baseline_csv(path.string(), records);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "frame,t,lead_id,gap,ttc,thw,rss_violated");
  int rows = 0;
  bool saw_violation_flag = false;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) ++col;
    CHECK(col == 7);
    if (line.back() == '1') saw_violation_flag = true;
  }
  CHECK(rows == 3);
  CHECK(saw_violation_flag);
  std::filesystem::remove(path);
}

TEST_CASE("infinite metrics serialize as inf") {
  Trace trace;
  trace.ego_id = 0;
  TraceFrame f;
  f.t = 0.0;
  f.agents.push_back(make_agent(0, {0, 0}, {10, 0}));
  trace.frames.push_back(f);

  const auto path = std::filesystem::temp_directory_path() / "baseline_inf.csv";
  write_baseline_csv(path.string(),
                     baseline_series(trace, LeadSelector{}, RssParams{}));
  std::ifstream in(path);
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  CHECK(row.find("inf") != std::string::npos);
  CHECK(row.find(",,") != std::string::npos);  // empty lead id column
  std::filesystem::remove(path);
}
