#include <doctest.h>

#include <cmath>
#include <vector>

#include <react/field.hpp>

#include "test_support.hpp"

using namespace react;
using testsup::make_agent;

namespace {

LaneGeometry two_dashed_lines() {
  LaneGeometry lane;
  lane.enabled = true;
  return lane;
}

// Central finite difference of the scalar field, step h.
ForceVector fd_force(Vec2 q, Vec2 qv, std::span<const AgentState> parts,
                     const AgentState& ego, const LaneGeometry& lane,
                     const ModelParams& p, double h) {
  const double fx = -(total_field_at({q.x + h, q.y}, qv, parts, ego, lane, p) -
                      total_field_at({q.x - h, q.y}, qv, parts, ego, lane, p)) /
                    (2.0 * h);
  const double fy = -(total_field_at({q.x, q.y + h}, qv, parts, ego, lane, p) -
                      total_field_at({q.x, q.y - h}, qv, parts, ego, lane, p)) /
                    (2.0 * h);
  return {fx, fy};
}

}  // namespace

TEST_CASE("kinetic risk energy of a source") {
  CHECK(base_risk_energy(make_agent(1, {0, 0}, {10, 0})) == doctest::Approx(75000.0));
  CHECK(base_risk_energy(make_agent(1, {0, 0}, {20, 0}, ClassTag::Truck, 10000.0)) ==
        doctest::Approx(3000000.0));
  CHECK(base_risk_energy(make_agent(1, {0, 0}, {2, 0}, ClassTag::Pedestrian, 70.0)) ==
        doctest::Approx(112.0));
  CHECK(base_risk_energy(make_agent(1, {0, 0}, {5, 0}, ClassTag::Cyclist, 90.0)) ==
        doctest::Approx(1012.5));
  CHECK(base_risk_energy(make_agent(1, {3, 4}, {0, 0})) == 0.0);
}

TEST_CASE("closing cosine sign convention") {
  // source driving +x, probe sitting ahead on the axis: head-on approach
  const AgentState source = make_agent(1, {0, 0}, {10, 0});
  CHECK(relative_kinematics({2, 0}, {0, 0}, source).cos_closing ==
        doctest::Approx(1.0));
  // source driving away from the probe: receding
  const AgentState fleeing = make_agent(1, {0, 0}, {-10, 0});
  CHECK(relative_kinematics({2, 0}, {0, 0}, fleeing).cos_closing ==
        doctest::Approx(-1.0));
  // degenerate: coincident points and zero relative speed read as 0
  CHECK(relative_kinematics({0, 0}, {0, 0}, source).cos_closing == 0.0);
  const AgentState still = make_agent(1, {0, 0}, {0, 0});
  CHECK(relative_kinematics({2, 0}, {0, 0}, still).cos_closing == 0.0);
  // purely lateral motion: zero closing component
  const AgentState side = make_agent(1, {0, 0}, {0, 7});
  CHECK(relative_kinematics({2, 0}, {0, 7}, side).cos_closing == 0.0);
}

TEST_CASE("elliptical distance stretches with source speed") {
  ModelParams p;
  const AgentState fast = make_agent(1, {0, 0}, {10, 0});  // a = 2, b = 5
  auto geom = relative_kinematics({2, 0}, {0, 0}, fast);
  CHECK(elliptical_distance_sq(geom, fast.velocity, p) == doctest::Approx(1.0));

  geom = relative_kinematics({0, 0}, {0, 0}, fast);
  CHECK(elliptical_distance_sq(geom, fast.velocity, p) == doctest::Approx(0.0));

  const AgentState still = make_agent(1, {0, 0}, {0, 0});  // a floors at 1
  geom = relative_kinematics({1, 5}, {0, 0}, still);
  CHECK(elliptical_distance_sq(geom, still.velocity, p) == doctest::Approx(2.0));
}

TEST_CASE("elliptical frame follows the source velocity direction") {
  ModelParams p;
  // same geometry rotated 90 degrees must give the same distance
  const AgentState north = make_agent(1, {0, 0}, {0, 10});
  auto geom = relative_kinematics({0, 2}, {0, 0}, north);
  CHECK(elliptical_distance_sq(geom, north.velocity, p) == doctest::Approx(1.0));
  // lateral offset in the rotated frame uses b, not a
  geom = relative_kinematics({5, 0}, {0, 0}, north);
  CHECK(elliptical_distance_sq(geom, north.velocity, p) == doctest::Approx(1.0));
}

TEST_CASE("single-source field matches hand-computed values") {
  ModelParams p;
  const AgentState source = make_agent(1, {0, 0}, {10, 0});

  SUBCASE("directional gain active") {
    const double u = interaction_field_at({2, 0}, {0, 0}, source, p);
    const double expected =
        75000.0 * (1.0 + 0.5 * 100.0 / (100.0 + 1e-6)) * std::exp(-1.0);
    CHECK(u == doctest::Approx(expected));
    CHECK(u == doctest::Approx(41386.4).epsilon(1e-4));
  }

  SUBCASE("gain disabled") {
    p.beta = 0.0;
    const double u = interaction_field_at({2, 0}, {0, 0}, source, p);
    CHECK(u == doctest::Approx(75000.0 * std::exp(-1.0)));
    CHECK(u == doctest::Approx(27590.958087858172));
  }

  SUBCASE("stationary source radiates nothing") {
    const AgentState still = make_agent(1, {0, 0}, {0, 0});
    CHECK(interaction_field_at({2, 0}, {5, 0}, still, p) == 0.0);
  }

  SUBCASE("receding geometry discounts the field") {
    const double closing = interaction_field_at({2, 0}, {0, 0}, source, p);
    // Same query point, source now driving away from it. The ellipse axis
    // flips with the velocity, so the normalized distance is unchanged and
    // only the directional gain differs.
    const AgentState fleeing = make_agent(1, {0, 0}, {-10, 0});
    const double receding = interaction_field_at({2, 0}, {0, 0}, fleeing, p);
    CHECK(receding < closing);
    CHECK(receding ==
          doctest::Approx(75000.0 * (1.0 - 0.5 * 100.0 / (100.0 + 1e-6)) *
                          std::exp(-1.0)));
  }
}

TEST_CASE("road term doubles up the two lane springs") {
  ModelParams p;
  LaneGeometry lane = two_dashed_lines();
  const AgentState ego = make_agent(0, {0, 0}, {10, 0});

  CHECK(road_field_at({0, 0}, ego, lane, p) == doctest::Approx(75000.0));
  CHECK(road_field_at({0, 0.875}, ego, lane, p) == doctest::Approx(93750.0));

  SUBCASE("solid lines weigh more") {
    LaneGeometry solid = lane;
    solid.left_type = LineType::Solid;
    solid.right_type = LineType::Solid;
    CHECK(road_field_at({0, 0.875}, ego, solid, p) ==
          doctest::Approx(1.5 * road_field_at({0, 0.875}, ego, lane, p)));
  }

  SUBCASE("a heavier left line penalizes drifting away from it") {
    // Each line term grows with distance from that line, so upgrading the
    // left line to solid raises the cost on the right half of the lane.
    lane.left_type = LineType::Solid;
    CHECK(road_field_at({0, -0.875}, ego, lane, p) >
          road_field_at({0, 0.875}, ego, lane, p));
  }

  SUBCASE("disabled lane contributes nothing") {
    lane.enabled = false;
    CHECK(road_field_at({0, 0.875}, ego, lane, p) == 0.0);
  }
}

TEST_CASE("superposition accumulates sources in input order") {
  ModelParams p;
  LaneGeometry lane = two_dashed_lines();
  const AgentState ego = make_agent(0, {0, 0}, {8, 0});
  testsup::SceneGen gen(11);
  const auto parts = gen.scene(5);
  const Vec2 q{3.0, 1.0};
  const Vec2 qv = ego.velocity;

  double manual = 0.0;
  for (const auto& a : parts) manual += interaction_field_at(q, qv, a, p);
  manual += road_field_at(q, ego, lane, p);

  CHECK(total_field_at(q, qv, parts, ego, lane, p) == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("force points down the field gradient") {
  ModelParams p;
  p.beta = 0.0;
  LaneGeometry lane;  // disabled
  const AgentState ego = make_agent(0, {-20, 0}, {0, 0});
  const AgentState source = make_agent(1, {0, 0}, {10, 0});
  std::vector<AgentState> parts{source};

  SUBCASE("axis case equals the closed form") {
    const auto f = field_force_at({2, 0}, {0, 0}, parts, ego, lane, p);
    // d(r~^2)/dx = 2*dx/a^2 = 1 at dx = 2, a = 2
    CHECK(f.fx == doctest::Approx(27590.958087858172));
    CHECK(f.fy == doctest::Approx(0.0));
  }

  SUBCASE("matches central differences away from the axis") {
    for (double y : {-3.0, -0.4, 0.7, 4.0}) {
      const Vec2 q{1.5, y};
      const auto f = field_force_at(q, {0, 0}, parts, ego, lane, p);
      const auto fd = fd_force(q, {0, 0}, parts, ego, lane, p, 1e-4);
      CHECK(f.fx == doctest::Approx(fd.fx).epsilon(1e-5));
      CHECK(f.fy == doctest::Approx(fd.fy).epsilon(1e-5));
    }
  }

  SUBCASE("lane springs push back toward the center") {
    LaneGeometry lively = two_dashed_lines();
    const AgentState fast_ego = make_agent(0, {0, 0}, {10, 0});
    const auto f = field_force_at({0, 0.875}, fast_ego.velocity, {}, fast_ego,
                                  lively, p);
    CHECK(f.fy < 0.0);
    const auto centered = field_force_at({0, 0}, fast_ego.velocity, {}, fast_ego,
                                         lively, p);
    CHECK(centered.fy == doctest::Approx(0.0));
  }
}

TEST_CASE("field decays monotonically along the approach ray") {
  ModelParams p;
  const AgentState source = make_agent(1, {0, 0}, {10, 0});
  double prev = interaction_field_at({1, 0}, {0, 0}, source, p);
  for (double x = 2.0; x < 12.0; x += 1.0) {
    const double u = interaction_field_at({x, 0}, {0, 0}, source, p);
    CHECK(u < prev);
    prev = u;
  }
}

TEST_CASE("faster sources project more risk") {
  ModelParams p;
  double prev = 0.0;
  for (double v = 2.0; v <= 14.0; v += 2.0) {
    const AgentState source = make_agent(1, {0, 0}, {v, 0});
    const double u = interaction_field_at({6, 0}, {0, 0}, source, p);
    CHECK(u > prev);
    prev = u;
  }
}

TEST_CASE("class severity scales the field linearly") {
  ModelParams p;
  const AgentState car = make_agent(1, {0, 0}, {10, 0});
  const AgentState truck = make_agent(1, {0, 0}, {10, 0}, ClassTag::Truck, 10000.0);
  const double uc = interaction_field_at({3, 1}, {0, 0}, car, p);
  const double ut = interaction_field_at({3, 1}, {0, 0}, truck, p);
  // severity 1.5 and mass ratio 10000/1500
  CHECK(ut == doctest::Approx(uc * 1.5 * 10000.0 / 1500.0));
}

TEST_CASE("model parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(validate(p));
  p.k_lane = 0.05;
  CHECK_THROWS_AS(validate(p), ConfigError);
  p.k_lane = 1.5;
  CHECK_THROWS_AS(validate(p), ConfigError);
  p.k_lane = 0.1;
  CHECK_NOTHROW(validate(p));
  p.k_lane = 1.0;
  CHECK_NOTHROW(validate(p));
}
