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
#ifndef SKIDNAV_PID_HPP
#define SKIDNAV_PID_HPP

#include "skidnav/raid_control.hpp"

namespace skidnav::pid {

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  raid::ActuatorLimits limits;

  void validate() const;
};

/// kp e + ki e_integral + kd (e - e_prev) / dt, unsaturated. e is v_bar - v.
double pid_step(const PidGains& gains, double e, double e_integral, double e_prev, double dt);

/// Velocity PID with the shared saturation governor. The integrator holds
/// while the output is saturated in the direction of the error.
class PidController {
public:
  explicit PidController(PidGains gains);

  struct Output {
    double u_raw = 0.0;
    raid::SaturationResult sat;
  };

  Output step(double e, double dt);
  double integral() const { return integral_; }

private:
  PidGains gains_;
  double integral_ = 0.0;
  double e_prev_ = 0.0;
  bool primed_ = false;
};

}  // namespace skidnav::pid

#endif  // SKIDNAV_PID_HPP
