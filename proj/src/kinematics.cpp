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
#include "skidnav/kinematics.hpp"

#include "skidnav/error.hpp"

#include <algorithm>
#include <cmath>

namespace skidnav::kinematics {

void RobotGeometry::validate() const {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(wheelbase_width)) fail(ErrorCode::Config, "robot.wheelbase_width must be > 0");
  if (!positive(v_max)) fail(ErrorCode::Config, "robot.v_max must be > 0");
  if (!positive(wheel_radius)) fail(ErrorCode::Config, "robot.wheel_radius must be > 0");
  if (!positive(gear_ratio)) fail(ErrorCode::Config, "robot.gear_ratio must be > 0");
}

SideVelocityRefs wheel_speeds(double v, double omega, const RobotGeometry& geom) {
  const double half = omega * geom.wheelbase_width / 2.0;
  return {v + half, v - half, 0.0, 0.0};
}

double cap_speed(double v_desired, double delta, double distance, const RobotGeometry& geom) {
  if (!(distance > 0.0)) fail(ErrorCode::InvalidArgument, "target distance must be positive");
  const double cap =
      geom.v_max / (2.0 * (1.0 + std::abs(std::tan(delta)) * geom.wheelbase_width / distance));
  return std::min(v_desired, cap);
}

ReferenceRateFilter::ReferenceRateFilter(double dt, double tau)
    : dt_(dt), alpha_(dt / (tau + dt)) {
  if (!(dt > 0.0) || !(tau >= 0.0))
    fail(ErrorCode::InvalidArgument, "rate filter needs dt > 0 and tau >= 0");
}

double ReferenceRateFilter::update(double reference) {
  if (!primed_) {
    primed_ = true;
    previous_ = reference;
    return rate_;
  }
  const double raw = (reference - previous_) / dt_;
  previous_ = reference;
  rate_ += alpha_ * (raw - rate_);
  return rate_;
}

}  // namespace skidnav::kinematics
