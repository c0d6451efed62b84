/*
 Copyright 2026 The skidnav Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "skidnav/error.hpp"
#include "skidnav/plant_sim.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace skidnav;
using namespace skidnav::plant;

TEST_SUITE("plant") {
  TEST_CASE("rest equilibrium") {
    const PlantParams p;
    const PlantState s = plant_step(PlantState{}, p, 0.0, 0.0, 0.001);
    CHECK(s.v_right == 0.0);
    CHECK(s.v_left == 0.0);
    CHECK(s.t == doctest::Approx(0.001));
  }

  TEST_CASE("constant input without drag") {
    PlantParams p;
    p.tau = std::numeric_limits<double>::infinity();
    const PlantState s = plant_step(PlantState{}, p, 1140.0, 1140.0, 0.001);
    CHECK(std::abs(s.v_right - 0.00076) <= 1e-9);
    CHECK(std::abs(s.v_left - 0.00076) <= 1e-9);
  }

  TEST_CASE("steady state matches the feedforward calibration") {
    const PlantParams p;
    PlantState s;
    for (int k = 0; k < 20000; ++k) s = plant_step(s, p, 1140.0, -1140.0, 0.001);
    CHECK(s.v_right == doctest::Approx(0.38).epsilon(1e-9));
    CHECK(s.v_left == doctest::Approx(-0.38).epsilon(1e-9));
  }

  TEST_CASE("rk4 matches the closed-form first-order response") {
    const PlantParams p;
    PlantState s;
    for (int k = 0; k < 1000; ++k) s = plant_step(s, p, 600.0, 600.0, 0.001);
    const double v_ss = 600.0 * p.g_nominal * p.tau;
    CHECK(s.v_right == doctest::Approx(v_ss * (1 - std::exp(-1.0 / p.tau))).epsilon(1e-10));
  }

  TEST_CASE("body motion examples") {
    const kinematics::RobotGeometry g;
    PlantState s;
    s.v_right = s.v_left = 0.38;
    PlantState n = body_step(s, g, 1.0);
    CHECK(n.pose.x() == doctest::Approx(0.38));
    CHECK(n.pose.y() == 0.0);
    CHECK(n.pose.theta() == 0.0);
    CHECK(n.t == 0.0);

    s.v_right = 0.3;
    s.v_left = -0.3;
    n = body_step(s, g, 0.5);
    CHECK(n.pose.x() == 0.0);
    CHECK(n.pose.y() == 0.0);
    CHECK(n.pose.theta() == doctest::Approx(0.15));
  }

  TEST_CASE("constant twist traces a circle of radius v / omega") {
    const kinematics::RobotGeometry g;
    PlantState s;
    s.v_right = 0.48;
    s.v_left = 0.28;
    const double v = 0.38, omega = 0.1, dt = 1e-4;
    const int steps = static_cast<int>(std::round(2 * std::numbers::pi / omega / dt));
    double max_dev = 0.0;
    for (int k = 0; k < steps; ++k) {
      s = body_step(s, g, dt);
      const double r = std::hypot(s.pose.x(), s.pose.y() - v / omega);
      max_dev = std::max(max_dev, std::abs(r - v / omega));
    }
    CHECK(max_dev < 1e-3 * v / omega);
    CHECK(std::hypot(s.pose.x(), s.pose.y()) < 1e-2);
  }

  TEST_CASE("slip schedule") {
    CHECK(schedule_slip({}, 3.0).right.g_scale == 1.0);
    CHECK(schedule_slip({}, 3.0).left.delta_add == 0.0);
    const std::vector<SlipEvent> one{{10, 20, Side::Both, 0.5, -0.03}};
    auto fx = schedule_slip(one, 15.0);
    CHECK(fx.right.g_scale == 0.5);
    CHECK(fx.left.delta_add == -0.03);
    CHECK(schedule_slip(one, 20.0).right.g_scale == 1.0);
    CHECK(schedule_slip(one, 10.0).right.g_scale == 0.5);
    const std::vector<SlipEvent> two{{10, 20, Side::Right, 0.5, 0.0}, {12, 18, Side::Right, 0.8, 0.0}};
    fx = schedule_slip(two, 15.0);
    CHECK(fx.right.g_scale == doctest::Approx(0.4));
    CHECK(fx.left.g_scale == 1.0);
  }

  TEST_CASE("disturbance cap is enforced") {
    PlantParams p;
    p.slip_events = {{1, 2, Side::Left, 0.6, -0.2}};
    CHECK_THROWS_AS(p.validate(), Error);
    p.slip_events = {{1, 2, Side::Left, 0.6, -0.05}, {1.5, 3, Side::Left, 1.0, -0.06}};
    CHECK_THROWS_AS(p.validate(), Error);
    p.slip_events = {{1, 2, Side::Left, 0.6, -0.05}};
    CHECK_NOTHROW(p.validate());
    p.slip_events = {{2, 1, Side::Left, 0.6, 0.0}};
    CHECK_THROWS_AS(p.validate(), Error);
  }

  TEST_CASE("identical inputs give identical states") {
    PlantParams p;
    p.g_variation = 0.2;
    p.g_variation_hz = 0.3;
    p.delta_amplitude = 0.05;
    p.delta_hz = 0.7;
    PlantState a, b;
    for (int k = 0; k < 1000; ++k) {
      a = plant_step(a, p, 900.0, 700.0, 0.001);
      b = plant_step(b, p, 900.0, 700.0, 0.001);
    }
    CHECK(a.v_right == b.v_right);
    CHECK(a.v_left == b.v_left);
  }

  TEST_CASE("side names") {
    CHECK(parse_side("R") == Side::Right);
    CHECK(parse_side("left") == Side::Left);
    CHECK(parse_side("both") == Side::Both);
    CHECK_THROWS_AS(parse_side("up"), Error);
  }
}
