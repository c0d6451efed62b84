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
#include "skidnav/kinematics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace skidnav;
using namespace skidnav::kinematics;

TEST_SUITE("kinematics") {
  TEST_CASE("wheel speed examples") {
    const RobotGeometry g;
    auto r = wheel_speeds(0.38, 0.0, g);
    CHECK(r.right == doctest::Approx(0.38));
    CHECK(r.left == doctest::Approx(0.38));
    r = wheel_speeds(0.0, 0.2, g);
    CHECK(r.right == doctest::Approx(0.2));
    CHECK(r.left == doctest::Approx(-0.2));
    r = wheel_speeds(0.38, 0.1, g);
    CHECK(r.right == doctest::Approx(0.48));
    CHECK(r.left == doctest::Approx(0.28));
    CHECK(r.right_rate == 0.0);
    CHECK(r.left_rate == 0.0);
  }

  TEST_CASE("speed cap examples") {
    const RobotGeometry g;
    CHECK(cap_speed(10.0, 0.0, 5.0, g) == doctest::Approx(0.485));
    CHECK(cap_speed(0.38, 0.0, 5.0, g) == doctest::Approx(0.38));
    CHECK(cap_speed(0.0, 0.3, 5.0, g) == 0.0);
    CHECK(cap_speed(10.0, std::numbers::pi / 4, 2.0, g) == doctest::Approx(0.2425));
    CHECK(cap_speed(10.0, -std::numbers::pi / 4, 2.0, g) == doctest::Approx(0.2425));
  }

  TEST_CASE("capped references stay within half of v_max") {
    const RobotGeometry g;
    for (int i = -20; i <= 20; ++i) {
      const double delta = 0.07 * i;
      for (double d : {0.5, 1.0, 2.0, 5.0}) {
        const double v = cap_speed(1.0, delta, d, g);
        const double omega = 2.0 * v * std::tan(delta) / d;
        const auto r = wheel_speeds(v, omega, g);
        CHECK(std::abs(r.right) <= g.v_max / 2 + 1e-12);
        CHECK(std::abs(r.left) <= g.v_max / 2 + 1e-12);
      }
    }
  }

  TEST_CASE("geometry validation") {
    RobotGeometry g;
    g.wheelbase_width = 0.0;
    CHECK_THROWS_AS(g.validate(), Error);
    g = RobotGeometry{};
    g.v_max = -1.0;
    CHECK_THROWS_AS(g.validate(), Error);
  }

  TEST_CASE("rate filter") {
    ReferenceRateFilter f(0.001, 0.05);
    CHECK(f.update(1.0) == 0.0);
    // A constant ramp converges to its slope.
    double r = 0.0;
    for (int k = 1; k <= 2000; ++k) r = f.update(1.0 + 0.2 * 0.001 * k);
    CHECK(r == doctest::Approx(0.2).epsilon(1e-6));
  }
}
