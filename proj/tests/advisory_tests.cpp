#include <doctest.h>

#include <string>
#include <vector>

#include <react/advisory.hpp>

#include "test_support.hpp"

using namespace react;
using testsup::make_agent;

namespace {

EgoControlState ctrl(double brake, double dv) {
  EgoControlState c;
  c.brake_state = brake;
  c.threat_speed_delta = dv;
  return c;
}

int level_of(double risk, double brake, double dv) {
  ThresholdConfig cfg;
  const EgoControlState c = ctrl(brake, dv);
  return classify(risk, adjust_thresholds(cfg, c), c, cfg);
}

}  // namespace

TEST_CASE("threshold adaptation endpoints") {
  ThresholdConfig cfg;

  const auto rest = adjust_thresholds(cfg, ctrl(0.0, 0.0));
  CHECK(rest.t1 == 0.3);
  CHECK(rest.t2 == 0.7);

  const auto braking = adjust_thresholds(cfg, ctrl(1.0, 0.0));
  CHECK(braking.t2 == 0.0);

  const auto fast_threat = adjust_thresholds(cfg, ctrl(0.0, 30.0));
  CHECK(fast_threat.t1 == doctest::Approx(0.6));

  const auto mixed = adjust_thresholds(cfg, ctrl(0.5, 15.0));
  CHECK(mixed.t1 == doctest::Approx(0.45));
  CHECK(mixed.t2 == doctest::Approx(0.35));

  // overshooting brake readings clamp instead of going negative
  const auto deep = adjust_thresholds(cfg, ctrl(1.5, 0.0));
  CHECK(deep.t2 == 0.0);
}

TEST_CASE("classification truth table") {
  CHECK(level_of(0.0, 0.0, 0.0) == 0);
  CHECK(level_of(0.299, 0.0, 0.0) == 0);
  CHECK(level_of(0.3, 0.0, 0.0) == 1);  // lower boundary is inclusive
  CHECK(level_of(0.5, 0.0, 0.0) == 1);
  CHECK(level_of(0.699, 0.0, 0.0) == 1);
  CHECK(level_of(0.7, 0.0, 0.0) == 2);  // upper boundary is inclusive
  CHECK(level_of(1.0, 0.0, 0.0) == 2);

  // a faster threat demands more risk before warning
  CHECK(level_of(0.3, 0.0, 30.0) == 0);
  CHECK(level_of(0.6, 0.0, 30.0) == 1);

  // braking lowers the escalation bar
  CHECK(level_of(0.5, 0.5, 0.0) == 2);

  // deep braking suppresses advisories entirely
  CHECK(level_of(0.95, 0.99, 0.0) == 0);
  CHECK(level_of(0.95, 1.0, 0.0) == 0);
  CHECK(level_of(0.95, 0.989, 0.0) == 2);
}

TEST_CASE("brake override sweeps clean across the risk range") {
  for (int i = 0; i < 100; ++i) {
    const double risk = static_cast<double>(i) / 99.0;
    CHECK(level_of(risk, 0.995, 0.0) == 0);
  }
}

TEST_CASE("threshold validation") {
  ThresholdConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.t1_base = 0.8;  // would invert the band
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = ThresholdConfig{};
  cfg.delta_v_scale = 0.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("command strings") {
  CHECK(compose_command(0, Direction::F) == "Normal driving");
  CHECK(compose_command(1, Direction::F) == "Reduce speed to avoid risk in F");
  CHECK(compose_command(1, Direction::RR) == "Reduce speed to avoid risk in RR");
  CHECK(compose_command(2, Direction::FL) ==
        "Emergency action toward opposite of FL");
}

TEST_CASE("frame assessment on an empty road") {
  ModelParams params;
  GridConfig grid_cfg;
  NormalizationConfig norm;
  norm.reference_energy = 100.0;
  ThresholdConfig thresholds;
  LaneGeometry lane;

  const auto fa = assess_frame(make_agent(0, {0, 0}, {8, 0}), {}, lane,
                               ctrl(0.0, 0.0), params, grid_cfg, norm,
                               thresholds);
  CHECK(fa.global_risk == 0.0);
  CHECK(fa.advisory.level == 0);
  CHECK(fa.advisory.command == "Normal driving");
  CHECK(fa.advisory.dominant == Direction::F);
  CHECK(!fa.advisory.threat_class.has_value());
  CHECK(fa.advisory.threat_speed_delta == 0.0);
  CHECK(fa.matrix.rows == 80);
  CHECK(fa.matrix.cols == 20);
  CHECK(fa.latency_seconds > 0.0);
}

TEST_CASE("frame assessment escalates on the canonical conflict") {
  ModelParams params;
  GridConfig grid_cfg;
  NormalizationConfig norm;
  norm.reference_energy = calibrate_reference_energy(params, grid_cfg, norm);
  ThresholdConfig thresholds;
  LaneGeometry lane;
  const auto scene = canonical_calibration_scene();
  std::vector<AgentState> parts{scene.threat};

  const auto fa = assess_frame(scene.ego, parts, lane, ctrl(0.0, 0.0), params,
                               grid_cfg, norm, thresholds);
  CHECK(fa.global_risk >= 0.7);
  CHECK(fa.advisory.level == 2);
  CHECK(fa.advisory.dominant == Direction::F);
  CHECK(fa.advisory.command == "Emergency action toward opposite of F");
  REQUIRE(fa.advisory.threat_class.has_value());
  CHECK(*fa.advisory.threat_class == ClassTag::Car);
  // oncoming car at equal speed: no positive speed surplus
  CHECK(fa.advisory.threat_speed_delta == 0.0);
  CHECK(fa.advisory.thresholds.t1 == 0.3);
  CHECK(fa.advisory.thresholds.t2 == 0.7);

  SUBCASE("deep braking silences the same scene") {
    const auto quiet = assess_frame(scene.ego, parts, lane, ctrl(1.0, 0.0),
                                    params, grid_cfg, norm, thresholds);
    CHECK(quiet.advisory.level == 0);
    CHECK(quiet.advisory.command == "Normal driving");
  }
}

TEST_CASE("speed surplus is read off the top contributor") {
  ModelParams params;
  GridConfig grid_cfg;
  NormalizationConfig norm;
  norm.reference_energy = 1000.0;
  ThresholdConfig thresholds;
  LaneGeometry lane;

  // overtaking truck closing from behind at +6 m/s
  const AgentState ego = make_agent(0, {0, 0}, {5, 0});
  std::vector<AgentState> parts{
      make_agent(1, {-14, 0}, {11, 0}, ClassTag::Truck, 10000.0)};
  const auto fa = assess_frame(ego, parts, lane, ctrl(0.0, 0.0), params,
                               grid_cfg, norm, thresholds);
  REQUIRE(fa.advisory.threat_class.has_value());
  CHECK(*fa.advisory.threat_class == ClassTag::Truck);
  CHECK(fa.advisory.threat_speed_delta == doctest::Approx(6.0 * 3.6));
  CHECK(fa.advisory.thresholds.t1 ==
        doctest::Approx(0.3 * (1.0 + 6.0 * 3.6 / 30.0)));
}
