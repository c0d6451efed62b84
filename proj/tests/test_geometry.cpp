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
#include "skidnav/geometry.hpp"
#include "skidnav/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace skidnav;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const Transform3D& a, const Transform3D& b) {
  return std::max((a.rotation() - b.rotation()).cwiseAbs().maxCoeff(),
                  (a.translation() - b.translation()).cwiseAbs().maxCoeff());
}

Transform3D random_transform(std::mt19937_64& rng) {
  return synthetic::random_offset(rng, 5.0, kPi);
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("wrap_angle lands in (-pi, pi] and is idempotent") {
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
      const double a = (synthetic::unit_uniform(rng) - 0.5) * 100.0;
      const double w = wrap_angle(a);
      CHECK(w > -kPi);
      CHECK(w <= kPi);
      CHECK(wrap_angle(w) == w);
      CHECK(std::abs(std::remainder(a - w, 2 * kPi)) < 1e-9);
    }
  }

  TEST_CASE("Pose2D wraps theta and composes in the body frame") {
    const Pose2D p(1.0, 2.0, 3 * kPi);
    CHECK(p.theta() == doctest::Approx(kPi));
    const Pose2D q = Pose2D(0, 0, kPi / 2).compose(Pose2D(1, 0, kPi));
    CHECK(q.x() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q.y() == doctest::Approx(1.0));
    CHECK(q.theta() == doctest::Approx(-kPi / 2));
  }

  TEST_CASE("compose examples") {
    const Transform3D id = Transform3D::identity();
    CHECK(max_abs_diff(compose(id, id), id) == 0.0);
    const Transform3D t = Transform3D::from_euler({0.3, -1.0, 2.0, 0.2, -0.4, 1.1});
    CHECK(max_abs_diff(compose(t, t.inverse()), id) < 1e-9);
    const Transform3D s = compose(Transform3D::translation(1, 0, 0), Transform3D::translation(0, 2, 0));
    CHECK(max_abs_diff(s, Transform3D::translation(1, 2, 0)) < 1e-15);
  }

  TEST_CASE("relative_transform examples") {
    const Transform3D t = Transform3D::from_euler({1, 2, 3, 0.1, 0.2, 0.3});
    CHECK(max_abs_diff(relative_transform(t, t), Transform3D::identity()) < 1e-9);
    CHECK(max_abs_diff(relative_transform(Transform3D::identity(), Transform3D::translation(1, 0, 0)),
                       Transform3D::translation(1, 0, 0)) < 1e-15);
    const Transform3D r = Transform3D::rot_z(kPi / 2);
    const Transform3D rt = compose(r, Transform3D::translation(1, 0, 0));
    // Hand composition: rotZ(90) then x+1 puts the origin at (0, 1, 0).
    CHECK(rt.translation().isApprox(Vec3(0, 1, 0), 1e-12));
    CHECK(max_abs_diff(relative_transform(r, rt), Transform3D::translation(1, 0, 0)) < 1e-12);
  }

  TEST_CASE("transform_cloud examples") {
    PointCloud c{{Vec3(0, 0, 0), Vec3(1, 2, 3)}, Frame::Sensor};
    const PointCloud same = transform_cloud(Transform3D::identity(), c);
    CHECK(same.points == c.points);
    const PointCloud up = transform_cloud(Transform3D::translation(0, 0, 1), PointCloud{{Vec3(0, 0, 0)}, Frame::Body});
    CHECK(up.points[0] == Vec3(0, 0, 1));
    const PointCloud turned = transform_cloud(Transform3D::rot_z(kPi / 2), PointCloud{{Vec3(1, 0, 0)}, Frame::Body});
    CHECK((turned.points[0] - Vec3(0, 1, 0)).norm() < 1e-12);
  }

  TEST_CASE("compose is associative and distributes over transform_cloud") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
      const Transform3D a = random_transform(rng), b = random_transform(rng), c = random_transform(rng);
      CHECK(max_abs_diff(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-9);
      PointCloud cloud;
      for (int k = 0; k < 5; ++k)
        cloud.points.emplace_back(synthetic::unit_uniform(rng), synthetic::unit_uniform(rng), synthetic::unit_uniform(rng));
      const PointCloud lhs = transform_cloud(compose(a, b), cloud);
      const PointCloud rhs = transform_cloud(a, transform_cloud(b, cloud));
      for (std::size_t k = 0; k < cloud.size(); ++k) CHECK((lhs.points[k] - rhs.points[k]).norm() < 1e-9);
    }
  }

  TEST_CASE("euler round trip") {
    const EulerPose e{0.1, -0.2, 0.3, 0.4, -0.5, 2.9};
    const EulerPose back = Transform3D::from_euler(e).to_euler();
    CHECK(back.tx == doctest::Approx(e.tx));
    CHECK(back.roll == doctest::Approx(e.roll));
    CHECK(back.pitch == doctest::Approx(e.pitch));
    CHECK(back.yaw == doctest::Approx(e.yaw));
  }

  TEST_CASE("Transform3D rejects non-rigid rotations") {
    Mat3 m = Mat3::Identity();
    m(0, 0) = 2.0;
    CHECK_THROWS_AS(Transform3D(m, Vec3::Zero()), Error);
    m = Mat3::Identity();
    m(2, 2) = -1.0;
    CHECK_THROWS_AS(Transform3D(m, Vec3::Zero()), Error);
  }

  TEST_CASE("cloud validation and CSV round trip") {
    PointCloud bad{{Vec3(0, std::nan(""), 0)}, Frame::Sensor};
    CHECK_THROWS_AS(validate(bad), Error);

    PointCloud c{{Vec3(0.1, -2.5, 1e-17), Vec3(3, 4, 5)}, Frame::Sensor};
    std::stringstream ss;
    write_cloud_csv(ss, c);
    const PointCloud back = read_cloud_csv(ss);
    CHECK(back.points == c.points);
  }

  TEST_CASE("cloud CSV errors name the line") {
    std::istringstream no_header("1,2,3\n");
    CHECK_THROWS_WITH_AS(read_cloud_csv(no_header), doctest::Contains("line 1"), Error);
    std::istringstream bad_row("x,y,z\n1,2,3\n# comment\n1,oops,3\n");
    try {
      read_cloud_csv(bad_row);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Io);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    std::istringstream short_row("x,y,z\n1,2\n");
    CHECK_THROWS_AS(read_cloud_csv(short_row), Error);
  }
}
