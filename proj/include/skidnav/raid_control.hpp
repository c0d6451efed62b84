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
#ifndef SKIDNAV_RAID_CONTROL_HPP
#define SKIDNAV_RAID_CONTROL_HPP

#include "skidnav/rbfn.hpp"

#include <cstddef>
#include <string>

namespace skidnav::raid {

struct PerformanceFunnel {
  double o_ov = 0.30;    // transient bound, m/s
  double o_b = 0.11;     // steady-state bound, m/s
  double o_star = 9e-5;  // decay rate, 1/s

  void validate() const;
};

struct FunnelValue {
  double o = 0.0;
  double o_dot = 0.0;
};

/// o(t) = (o_ov - o_b) exp(-o_star t) + o_b and its time derivative.
FunnelValue funnel_value(const PerformanceFunnel& f, double t);

struct ActuatorLimits {
  double upper = 1250.0;  // RPM
  double lower = -1250.0;

  void validate() const;
};

struct SaturationResult {
  double lambda = 1.0;
  double lambda_bar = 0.0;  // RPM
  double u_safe = 0.0;      // RPM
};

/// Saturation governor. lambda = 1 / (|U| + 1) and
/// lambda_bar = limit - U / (|U| + 1) outside the limits, identity inside.
/// u_safe is lambda U + lambda_bar, pinned to the limit it approximates.
SaturationResult saturate(const ActuatorLimits& limits, double u_raw);

/// Hydraulic drive: swash-plate pump feeding a wheel motor through a gearbox.
struct PumpModel {
  double pump_displacement = 1.8e-5;                  // V_p, m^3/rev
  double motor_displacement = 2.8274333882308139e-4;  // V_m, m^3/rev
  double gear_ratio = 10.0;
  double wheel_radius = 0.5;  // m
  double gain_override = 0.0;  // RPM per m/s; used instead of the derived gain when > 0

  void validate() const;
  /// Pump RPM per m/s of wheel speed.
  double feedforward_gain() const;
};

double feedforward(const PumpModel& pump, double v_bar);

enum class FeedforwardMode { Cancel, Retain };

FeedforwardMode parse_feedforward_mode(const std::string& s);
const char* to_string(FeedforwardMode m);

struct ControllerParams {
  double beta = 1.2;
  double kappa = 5.2;
  PerformanceFunnel funnel;
  ActuatorLimits limits;
  PumpModel pump;
  FeedforwardMode feedforward_mode = FeedforwardMode::Cancel;
  double epsilon_guard = -1.0;  // (m/s)^2; negative selects (0.02 o_b)^2
  double phi_hat_initial = 0.1;
  double phi_hat_max = 100.0;

  /// Also checks the Euler step keeps phi_hat non-negative: dt kappa / 2 < 1.
  void validate(double dt) const;
  double guard() const;
};

/// Barrier law. With mode Cancel the -f term is kept; Retain drops it.
double barrier_control(const ControllerParams& p, double phi_hat, double e, double o, double o_dot,
                       const rbfn::RbfOutput& phi, double v_bar_rate, double f);

/// d(phi_hat)/dt = -kappa/2 phi_hat + (e / (o^2 - e^2))^2 phi_hat^3 |Phi|.
double adapt_rate(const ControllerParams& p, double phi_hat, double e, double o,
                  const rbfn::RbfOutput& phi);

/// One explicit Euler step of adapt_rate. Not clamped.
double adapt(const ControllerParams& p, double phi_hat, double e, double o,
             const rbfn::RbfOutput& phi, double dt);

struct ControlOutput {
  double u = 0.0;
  double u_raw = 0.0;
  double u_safe = 0.0;
  double lambda = 1.0;
  double lambda_bar = 0.0;
  double e = 0.0;
  double o = 0.0;
  double o_dot = 0.0;
  double f = 0.0;
  double phi_hat = 0.0;  // value used for this step's law
  bool estop = false;
};

/// Per-side controller. Owns phi_hat and the emergency-stop latch.
class ChannelController {
public:
  ChannelController(ControllerParams params, rbfn::RbfNetwork net);

  /// Latches and returns true when o^2 - e^2 <= guard. Stays true once latched.
  bool estop_check(double e, double o);

  ControlOutput step(double v_measured, double v_bar, double v_bar_rate, double t, double dt);

  double phi_hat() const { return phi_hat_; }
  bool estopped() const { return estopped_; }
  std::size_t clamp_events() const { return clamp_events_; }
  const ControllerParams& params() const { return params_; }
  const rbfn::RbfNetwork& network() const { return net_; }

private:
  ControllerParams params_;
  rbfn::RbfNetwork net_;
  double phi_hat_;
  bool estopped_ = false;
  std::size_t clamp_events_ = 0;
};

}  // namespace skidnav::raid

#endif  // SKIDNAV_RAID_CONTROL_HPP
