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
#ifndef SKIDNAV_KINEMATICS_HPP
#define SKIDNAV_KINEMATICS_HPP

namespace skidnav::kinematics {

struct RobotGeometry {
  double wheelbase_width = 2.0;  // L_r, meters
  double v_max = 0.97;           // m/s
  double wheel_radius = 0.5;     // m
  double gear_ratio = 10.0;

  void validate() const;
};

/// Per-side wheel velocity references and their time derivatives.
struct SideVelocityRefs {
  double right = 0.0;
  double left = 0.0;
  double right_rate = 0.0;
  double left_rate = 0.0;
};

/// Skid-steer inverse kinematics: v +/- omega * L_r / 2. Rates are zero.
SideVelocityRefs wheel_speeds(double v, double omega, const RobotGeometry& geom);

/// Largest body speed for which neither side reference exceeds v_max / 2
/// at steering angle `delta` and target distance `distance`:
/// min(v_desired, v_max / (2 (1 + |tan delta| L_r / distance))).
double cap_speed(double v_desired, double delta, double distance, const RobotGeometry& geom);

/// Backward difference of a sampled reference, smoothed by a first-order
/// low-pass with time constant `tau`. The first sample yields rate 0.
class ReferenceRateFilter {
public:
  ReferenceRateFilter(double dt, double tau);

  double update(double reference);
  double rate() const { return rate_; }

private:
  double dt_;
  double alpha_;
  double previous_ = 0.0;
  double rate_ = 0.0;
  bool primed_ = false;
};

}  // namespace skidnav::kinematics

#endif  // SKIDNAV_KINEMATICS_HPP
