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
#include "skidnav/geometry.hpp"

#include "skidnav/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace skidnav {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kOrthoTol = 1e-9;
}  // namespace

double wrap_angle(double angle) {
  // std::remainder is exact and lands in [-pi, pi]; fold -pi onto +pi.
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) r = kPi;
  return r;
}

Pose2D Pose2D::compose(const Pose2D& delta) const {
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return {x_ + c * delta.x() - s * delta.y(), y_ + s * delta.x() + c * delta.y(),
          theta_ + delta.theta()};
}

Transform3D::Transform3D(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite())
    fail(ErrorCode::InvalidArgument, "transform has non-finite entries");
  if (!(rotation.transpose() * rotation).isApprox(Mat3::Identity(), kOrthoTol) ||
      std::abs(rotation.determinant() - 1.0) > kOrthoTol)
    fail(ErrorCode::InvalidArgument, "rotation is not a proper orthonormal matrix");
}

Transform3D Transform3D::translation(double x, double y, double z) {
  return {Mat3::Identity(), Vec3(x, y, z)};
}

Transform3D Transform3D::rot_z(double yaw) {
  return from_euler({0, 0, 0, 0, 0, yaw});
}

Transform3D Transform3D::from_euler(const EulerPose& p) {
  const Mat3 r = (Eigen::AngleAxisd(p.yaw, Vec3::UnitZ()) *
                  Eigen::AngleAxisd(p.pitch, Vec3::UnitY()) *
                  Eigen::AngleAxisd(p.roll, Vec3::UnitX()))
                     .toRotationMatrix();
  return {r, Vec3(p.tx, p.ty, p.tz)};
}

EulerPose Transform3D::to_euler() const {
  const Mat3& r = rotation_;
  EulerPose p;
  p.tx = translation_.x();
  p.ty = translation_.y();
  p.tz = translation_.z();
  p.pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  p.roll = std::atan2(r(2, 1), r(2, 2));
  p.yaw = std::atan2(r(1, 0), r(0, 0));
  return p;
}

Transform3D Transform3D::inverse() const {
  Transform3D out;
  out.rotation_ = rotation_.transpose();
  out.translation_ = -(out.rotation_ * translation_);
  return out;
}

double Transform3D::rotation_angle() const {
  const double c = std::clamp((rotation_.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

Transform3D compose(const Transform3D& a, const Transform3D& b) {
  // Products of valid rotations stay valid to rounding; skip re-validation.
  const Mat3 r = a.rotation() * b.rotation();
  const Vec3 t = a.rotation() * b.translation() + a.translation();
  Eigen::Quaterniond q(r);
  q.normalize();
  return Transform3D(q.toRotationMatrix(), t);
}

Transform3D relative_transform(const Transform3D& t_i, const Transform3D& t_ip1) {
  return compose(t_i.inverse(), t_ip1);
}

void validate(const PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (!cloud.points[i].allFinite())
      fail(ErrorCode::InvalidArgument,
           "point " + std::to_string(i) + " has a non-finite coordinate");
  }
}

PointCloud transform_cloud(const Transform3D& t, const PointCloud& cloud) {
  PointCloud out;
  out.frame = cloud.frame;
  out.points.reserve(cloud.points.size());
  for (const Vec3& p : cloud.points) out.points.push_back(t.apply(p));
  return out;
}

PointCloud read_cloud_csv(std::istream& in) {
  PointCloud cloud;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "x,y,z")
        fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected header 'x,y,z'");
      header_seen = true;
      continue;
    }
    std::array<double, 3> v{};
    std::istringstream row(line);
    std::string field;
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(row, field, ','))
        fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected 3 columns");
      try {
        std::size_t used = 0;
        v[k] = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": bad number '" + field + "'");
      }
    }
    if (std::getline(row, field, ','))
      fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected 3 columns");
    cloud.points.emplace_back(v[0], v[1], v[2]);
  }
  if (!header_seen) fail(ErrorCode::Io, "missing 'x,y,z' header");
  validate(cloud);
  return cloud;
}

PointCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  return read_cloud_csv(in);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  out << "x,y,z\n" << std::setprecision(17);
  for (const Vec3& p : cloud.points) out << p.x() << ',' << p.y() << ',' << p.z() << '\n';
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  write_cloud_csv(out, cloud);
}

}  // namespace skidnav
