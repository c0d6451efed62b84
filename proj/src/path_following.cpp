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
#include "skidnav/path_following.hpp"

#include "skidnav/error.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace skidnav::pursuit {

void WaypointPath::validate() const {
  if (waypoints.empty()) fail(ErrorCode::Config, "path has no waypoints");
  for (const Vec2& w : waypoints)
    if (!w.allFinite()) fail(ErrorCode::Config, "path waypoint is not finite");
  if (!(lookahead > 0.0) || !std::isfinite(lookahead))
    fail(ErrorCode::Config, "path.lookahead must be > 0");
  if (!(cruise_speed > 0.0) || !std::isfinite(cruise_speed))
    fail(ErrorCode::Config, "path.cruise_speed must be > 0");
  if (!(arrival_tolerance > 0.0)) fail(ErrorCode::Config, "path.arrival_tolerance must be > 0");
}

TargetSelection select_target(const Pose2D& pose, const WaypointPath& path,
                              const PursuitState& state) {
  if (state.finished) fail(ErrorCode::PathExhausted, "path already finished");
  if (path.waypoints.empty()) fail(ErrorCode::InvalidArgument, "path has no waypoints");
  const std::size_t last = path.waypoints.size() - 1;
  std::size_t idx = std::min(state.target_index, last);
  const Vec2 p = pose.position();
  while (idx < last && (path.waypoints[idx] - p).norm() < path.lookahead) ++idx;

  TargetSelection sel;
  sel.target = path.waypoints[idx];
  sel.distance = (sel.target - p).norm();
  sel.state.target_index = idx;
  sel.state.finished = idx == last && sel.distance <= path.arrival_tolerance;
  return sel;
}

double steering_angle(const Pose2D& pose, const Vec2& target, double distance, double lookahead) {
  if (!(distance > 0.0)) fail(ErrorCode::InvalidArgument, "target distance must be positive");
  const Vec2 d = target - pose.position();
  const double alpha = wrap_angle(std::atan2(d.y(), d.x()) - pose.theta());
  return std::atan(2.0 * lookahead * std::sin(alpha) / distance);
}

double angular_velocity(double v, double delta, double distance) {
  if (delta == 0.0) return 0.0;
  if (!(distance > 0.0)) fail(ErrorCode::InvalidArgument, "target distance must be positive");
  return 2.0 * v * std::tan(delta) / distance;
}

PursuitStep step(const Pose2D& pose, const WaypointPath& path, const PursuitState& state,
                 const kinematics::RobotGeometry& geom) {
  PursuitStep out;
  out.state = state;
  if (state.finished) return out;
  const TargetSelection sel = select_target(pose, path, state);
  out.state = sel.state;
  out.target = sel.target;
  out.distance = sel.distance;
  if (sel.state.finished) return out;
  out.delta = steering_angle(pose, sel.target, sel.distance, path.lookahead);
  out.command.v = kinematics::cap_speed(path.cruise_speed, out.delta, sel.distance, geom);
  out.command.omega = angular_velocity(out.command.v, out.delta, sel.distance);
  return out;
}

std::vector<Vec2> circle_waypoints(const Vec2& center, double radius, std::size_t count,
                                   double start_angle, bool clockwise) {
  if (count == 0 || !(radius > 0.0))
    fail(ErrorCode::InvalidArgument, "circle needs count > 0 and radius > 0");
  std::vector<Vec2> out;
  out.reserve(count);
  const double step = (clockwise ? -2.0 : 2.0) * std::numbers::pi / static_cast<double>(count);
  for (std::size_t k = 1; k <= count; ++k) {
    const double a = start_angle + step * static_cast<double>(k);
    out.emplace_back(center.x() + radius * std::cos(a), center.y() + radius * std::sin(a));
  }
  return out;
}

std::vector<Vec2> read_waypoints_csv(std::istream& in) {
  std::vector<Vec2> out;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "x,y")
        fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected header 'x,y'");
      header_seen = true;
      continue;
    }
    std::array<double, 2> v{};
    std::istringstream row(line);
    std::string field;
    for (int k = 0; k < 2; ++k) {
      if (!std::getline(row, field, ','))
        fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected 2 columns");
      try {
        std::size_t used = 0;
        v[k] = std::stod(field, &used);
        if (used != field.size() || !std::isfinite(v[k])) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": bad number '" + field + "'");
      }
    }
    if (std::getline(row, field, ','))
      fail(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected 2 columns");
    out.emplace_back(v[0], v[1]);
  }
  if (!header_seen) fail(ErrorCode::Io, "missing 'x,y' header");
  if (out.empty()) fail(ErrorCode::Io, "no waypoints");
  return out;
}

std::vector<Vec2> read_waypoints_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  try {
    return read_waypoints_csv(in);
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

void write_waypoints_csv(std::ostream& out, const std::vector<Vec2>& waypoints) {
  out << "x,y\n" << std::setprecision(17);
  for (const Vec2& w : waypoints) out << w.x() << ',' << w.y() << '\n';
}

}  // namespace skidnav::pursuit
