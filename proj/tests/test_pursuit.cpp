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
#include "skidnav/path_following.hpp"
#include "skidnav/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace skidnav;
using namespace skidnav::pursuit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("pursuit") {
  TEST_CASE("target selection examples") {
    WaypointPath path;
    path.waypoints = {Vec2(5, 0)};
    auto s = select_target(Pose2D(0, 0, 0), path, {});
    CHECK(s.target == Vec2(5, 0));
    CHECK(s.distance == doctest::Approx(5.0));
    CHECK(!s.state.finished);

    path.waypoints = {Vec2(0.5, 0), Vec2(2, 0)};
    s = select_target(Pose2D(0, 0, 0), path, {});
    CHECK(s.target == Vec2(2, 0));
    CHECK(s.distance == doctest::Approx(2.0));
    CHECK(s.state.target_index == 1);

    s = select_target(Pose2D(1.9, 0.1, 0), path, s.state);
    CHECK(s.state.finished);
    CHECK_THROWS_AS(select_target(Pose2D(1.9, 0.1, 0), path, s.state), Error);
  }

  TEST_CASE("target index never decreases") {
    WaypointPath path;
    path.waypoints = {Vec2(2, 0), Vec2(4, 0), Vec2(6, 0)};
    PursuitState st;
    st.target_index = 2;
    const auto s = select_target(Pose2D(0, 0, 0), path, st);
    CHECK(s.state.target_index == 2);
    CHECK(s.target == Vec2(6, 0));
  }

  TEST_CASE("steering examples") {
    CHECK(steering_angle(Pose2D(0, 0, 0), Vec2(3, 0), 3.0, 1.0) == 0.0);
    CHECK(steering_angle(Pose2D(0, 0, 0), Vec2(1, 1), std::sqrt(2.0), 1.0) ==
          doctest::Approx(kPi / 4).epsilon(1e-14));
    const Vec2 behind_left(2 * std::cos(3 * kPi / 4), 2 * std::sin(3 * kPi / 4));
    CHECK(steering_angle(Pose2D(0, 0, 0), behind_left, 2.0, 1.0) ==
          doctest::Approx(std::atan(std::sqrt(2.0) / 2)).epsilon(1e-14));
    CHECK(std::atan(std::sqrt(2.0) / 2) == doctest::Approx(0.6155).epsilon(1e-4));
  }

  TEST_CASE("angular velocity examples") {
    CHECK(angular_velocity(0.38, 0.0, 2.0) == 0.0);
    CHECK(angular_velocity(0.38, kPi / 4, std::sqrt(2.0)) == doctest::Approx(2 * 0.38 / std::sqrt(2.0)));
    CHECK(angular_velocity(0.38, kPi / 4, std::sqrt(2.0)) == doctest::Approx(0.5374).epsilon(1e-4));
    CHECK(angular_velocity(0.0, 0.7, 2.0) == 0.0);
  }

  TEST_CASE("step examples") {
    const kinematics::RobotGeometry g;
    WaypointPath path;
    path.waypoints = {Vec2(10, 0)};
    auto st = step(Pose2D(0, 0, 0), path, {}, g);
    CHECK(st.command.v == doctest::Approx(0.38));
    CHECK(st.command.omega == 0.0);

    PursuitState done;
    done.finished = true;
    st = step(Pose2D(0, 0, 0), path, done, g);
    CHECK(st.command.v == 0.0);
    CHECK(st.command.omega == 0.0);
    CHECK(st.state.finished);
  }

  TEST_CASE("mirror symmetry") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
      const double x = 10 * (synthetic::unit_uniform(rng) - 0.5);
      const double y = 10 * (synthetic::unit_uniform(rng) - 0.5);
      const double d = std::hypot(x, y);
      if (d < 1e-6) continue;
      const double lookahead = 0.5 + synthetic::unit_uniform(rng);
      const double a = steering_angle(Pose2D(0, 0, 0), Vec2(x, y), d, lookahead);
      const double b = steering_angle(Pose2D(0, 0, 0), Vec2(x, -y), d, lookahead);
      CHECK(std::abs(a + b) <= 1e-12);
      CHECK(std::abs(a) < kPi / 2);
      const double v = synthetic::unit_uniform(rng);
      CHECK(std::abs(angular_velocity(v, a, d) + angular_velocity(v, b, d)) <= 1e-12);
    }
  }

  TEST_CASE("circle waypoints") {
    const auto w = circle_waypoints(Vec2(0, -5), 5.0, 8, kPi / 2, true);
    REQUIRE(w.size() == 8);
    for (const Vec2& p : w) CHECK((p - Vec2(0, -5)).norm() == doctest::Approx(5.0));
    CHECK((w.back() - Vec2(0, 0)).norm() < 1e-12);
    CHECK(w.front().x() > 0.0);
  }

  TEST_CASE("waypoint csv round trip") {
    const std::vector<Vec2> w{{0.1, 2.0}, {-3.5, 1e-3}};
    std::ostringstream out;
    write_waypoints_csv(out, w);
    std::istringstream in(out.str());
    const auto back = read_waypoints_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == w[0]);
    CHECK(back[1] == w[1]);
    std::istringstream bad("x,y\n1,2\nfoo,3\n");
    CHECK_THROWS_AS(read_waypoints_csv(bad), Error);
  }

  TEST_CASE("path validation") {
    WaypointPath p;
    CHECK_THROWS_AS(p.validate(), Error);
    p.waypoints = {Vec2(1, 0)};
    p.lookahead = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
  }
}
