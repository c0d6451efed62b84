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
#include "skidnav/pid.hpp"

#include "skidnav/error.hpp"

#include <algorithm>
#include <cmath>

namespace skidnav::pid {

void PidGains::validate() const {
  if (!(kp >= 0.0) || !(ki >= 0.0) || !(kd >= 0.0) || !std::isfinite(kp) || !std::isfinite(ki) ||
      !std::isfinite(kd))
    fail(ErrorCode::Config, "pid gains must be finite and >= 0");
  limits.validate();
}

double pid_step(const PidGains& gains, double e, double e_integral, double e_prev, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "pid_step needs dt > 0");
  return gains.kp * e + gains.ki * e_integral + gains.kd * (e - e_prev) / dt;
}

PidController::PidController(PidGains gains) : gains_(gains) {}

PidController::Output PidController::step(double e, double dt) {
  if (!primed_) {
    e_prev_ = e;
    primed_ = true;
  }
  double candidate = integral_ + e * dt;
  if (gains_.ki > 0.0)
    candidate = std::clamp(candidate, gains_.limits.lower / gains_.ki, gains_.limits.upper / gains_.ki);
  Output out;
  out.u_raw = pid_step(gains_, e, candidate, e_prev_, dt);
  const bool pushing_up = out.u_raw > gains_.limits.upper && e > 0.0;
  const bool pushing_down = out.u_raw < gains_.limits.lower && e < 0.0;
  if (pushing_up || pushing_down) {
    out.u_raw = pid_step(gains_, e, integral_, e_prev_, dt);
  } else {
    integral_ = candidate;
  }
  out.sat = raid::saturate(gains_.limits, out.u_raw);
  e_prev_ = e;
  return out;
}

}  // namespace skidnav::pid
