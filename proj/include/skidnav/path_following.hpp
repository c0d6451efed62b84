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
#ifndef SKIDNAV_PATH_FOLLOWING_HPP
#define SKIDNAV_PATH_FOLLOWING_HPP

#include "skidnav/geometry.hpp"
#include "skidnav/kinematics.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace skidnav::pursuit {

struct WaypointPath {
  std::vector<Vec2> waypoints;
  double lookahead = 1.0;          // L, meters
  double cruise_speed = 0.38;      // m/s
  double arrival_tolerance = 0.25;  // meters, final waypoint only

  void validate() const;
};

struct PursuitState {
  std::size_t target_index = 0;  // never decreases
  bool finished = false;
};

struct BodyCommand {
  double v = 0.0;
  double omega = 0.0;
};

struct TargetSelection {
  Vec2 target = Vec2::Zero();
  double distance = 0.0;  // D_t
  PursuitState state;
};

/// First waypoint at or after the current index whose distance is at least
/// the lookahead; falls back to the last waypoint. Marks the state finished
/// once the last waypoint is within the arrival tolerance. Throws
/// PathExhausted when called on a finished state.
TargetSelection select_target(const Pose2D& pose, const WaypointPath& path,
                              const PursuitState& state);

/// arctan(2 L sin(alpha) / D_t) with alpha measured from the robot heading.
/// Always inside (-pi/2, pi/2).
double steering_angle(const Pose2D& pose, const Vec2& target, double distance, double lookahead);

/// 2 v tan(delta) / D_t, and exactly 0 when delta is 0.
double angular_velocity(double v, double delta, double distance);

struct PursuitStep {
  BodyCommand command;
  PursuitState state;
  Vec2 target = Vec2::Zero();
  double distance = 0.0;
  double delta = 0.0;
};

/// One planner tick: target selection, steering, speed cap, yaw rate.
PursuitStep step(const Pose2D& pose, const WaypointPath& path, const PursuitState& state,
                 const kinematics::RobotGeometry& geom);

/// `count` waypoints on a circle, starting one step after `start_angle` and
/// ending back at it.
std::vector<Vec2> circle_waypoints(const Vec2& center, double radius, std::size_t count,
                                   double start_angle, bool clockwise);

// Waypoint CSV: header `x,y`, one waypoint per row.
std::vector<Vec2> read_waypoints_csv(std::istream& in);
std::vector<Vec2> read_waypoints_csv(const std::string& path);
void write_waypoints_csv(std::ostream& out, const std::vector<Vec2>& waypoints);

}  // namespace skidnav::pursuit

#endif  // SKIDNAV_PATH_FOLLOWING_HPP
