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
#ifndef SKIDNAV_GEOMETRY_HPP
#define SKIDNAV_GEOMETRY_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace skidnav {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

/// Planar pose. theta is kept wrapped to (-pi, pi].
class Pose2D {
public:
  Pose2D() = default;
  Pose2D(double x, double y, double theta) : x_(x), y_(y), theta_(wrap_angle(theta)) {}

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }
  Vec2 position() const { return {x_, y_}; }

  /// Applies `delta` expressed in this pose's body frame.
  Pose2D compose(const Pose2D& delta) const;

private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

/// Translation and Z-Y-X (yaw, pitch, roll) Euler angles. This is the
/// 6-parameter chart used on the wire and by the scan matcher.
struct EulerPose {
  double tx = 0.0;
  double ty = 0.0;
  double tz = 0.0;
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

/// Rigid transform p -> R p + t with R in SO(3).
class Transform3D {
public:
  Transform3D() = default;

  /// Throws InvalidArgument if `rotation` is not orthonormal with det +1.
  Transform3D(const Mat3& rotation, const Vec3& translation);

  static Transform3D identity() { return {}; }
  static Transform3D translation(double x, double y, double z);
  static Transform3D rot_z(double yaw);
  static Transform3D from_euler(const EulerPose& pose);

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  EulerPose to_euler() const;
  Transform3D inverse() const;
  Vec3 apply(const Vec3& p) const { return rotation_ * p + translation_; }

  /// Rotation angle of R in radians, in [0, pi].
  double rotation_angle() const;

private:
  Mat3 rotation_ = Mat3::Identity();
  Vec3 translation_ = Vec3::Zero();
};

/// Matrix product a * b: b is applied to points first, then a.
Transform3D compose(const Transform3D& a, const Transform3D& b);

/// T_i^-1 * T_{i+1}, the motion between two consecutive poses.
Transform3D relative_transform(const Transform3D& t_i, const Transform3D& t_ip1);

enum class Frame { Sensor, Body, World };

struct PointCloud {
  std::vector<Vec3> points;
  Frame frame = Frame::Sensor;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Throws InvalidArgument on NaN/Inf coordinates.
void validate(const PointCloud& cloud);

PointCloud transform_cloud(const Transform3D& t, const PointCloud& cloud);

// CSV with a header line `x,y,z` and one point per row. Lines starting
// with '#' are treated as comments.
PointCloud read_cloud_csv(std::istream& in);
PointCloud read_cloud_csv(const std::string& path);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_cloud_csv(const std::string& path, const PointCloud& cloud);

}  // namespace skidnav

#endif  // SKIDNAV_GEOMETRY_HPP
