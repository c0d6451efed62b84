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
#ifndef SKIDNAV_PLANT_SIM_HPP
#define SKIDNAV_PLANT_SIM_HPP

#include "skidnav/geometry.hpp"
#include "skidnav/kinematics.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace skidnav::plant {

enum class Side { Right, Left, Both };

Side parse_side(const std::string& s);
const char* to_string(Side s);

struct SlipEvent {
  double t_start = 0.0;
  double t_end = 0.0;
  Side side = Side::Both;
  double g_scale = 1.0;
  double delta_add = 0.0;  // m/s^2
};

struct SlipEffect {
  double g_scale = 1.0;
  double delta_add = 0.0;
};

struct SideEffects {
  SlipEffect right;
  SlipEffect left;
};

/// Active on [t_start, t_end). Overlapping events multiply g_scale and add delta_add.
SideEffects schedule_slip(std::span<const SlipEvent> events, double t);

struct PlantParams {
  double g_nominal = 1.0 / 1500.0;  // (m/s^2)/RPM
  double tau = 0.5;                  // s; infinity disables linear drag
  double g_variation = 0.0;          // relative amplitude, in [0, 1)
  double g_variation_hz = 0.0;
  double quadratic_drag = 0.0;  // 1/m
  double delta_amplitude = 0.0;  // m/s^2
  double delta_hz = 0.0;
  double delta_cap = 0.1;  // m/s^2
  std::vector<SlipEvent> slip_events;

  void validate() const;

  double g(double t, const SlipEffect& slip) const;
  double d(double v) const;
  double delta(double t, const SlipEffect& slip) const;
};

struct PlantState {
  double v_right = 0.0;
  double v_left = 0.0;
  Pose2D pose;
  double t = 0.0;
};

/// RK4 on both side velocity equations over [t, t + dt]; advances t.
PlantState plant_step(const PlantState& s, const PlantParams& p, double u_right, double u_left,
                      double dt);

/// Explicit Euler unicycle step of the pose from the current side speeds. Leaves t alone.
PlantState body_step(const PlantState& s, const kinematics::RobotGeometry& geom, double dt);

}  // namespace skidnav::plant

#endif  // SKIDNAV_PLANT_SIM_HPP
