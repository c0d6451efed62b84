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
#include "skidnav/raid_control.hpp"

#include "skidnav/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace skidnav::raid {

namespace {

bool finite_positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void PerformanceFunnel::validate() const {
  if (!finite_positive(o_b)) fail(ErrorCode::Config, "controller.funnel.o_b must be > 0");
  if (!(o_ov >= o_b) || !std::isfinite(o_ov))
    fail(ErrorCode::Config, "controller.funnel.o_ov must be >= o_b");
  if (!(o_star >= 0.0) || !std::isfinite(o_star))
    fail(ErrorCode::Config, "controller.funnel.o_star must be >= 0");
}

FunnelValue funnel_value(const PerformanceFunnel& f, double t) {
  if (!(t >= 0.0)) fail(ErrorCode::InvalidArgument, "funnel time must be >= 0");
  const double decay = (f.o_ov - f.o_b) * std::exp(-f.o_star * t);
  return {decay + f.o_b, -f.o_star * decay};
}

void ActuatorLimits::validate() const {
  if (!std::isfinite(upper) || !std::isfinite(lower) || !(lower < upper))
    fail(ErrorCode::Config, "controller.limits: lower must be < upper");
}

SaturationResult saturate(const ActuatorLimits& limits, double u_raw) {
  if (std::isnan(u_raw)) fail(ErrorCode::InvalidArgument, "saturate: input is NaN");
  SaturationResult s;
  if (u_raw > limits.upper || u_raw < limits.lower) {
    const double bound = u_raw > limits.upper ? limits.upper : limits.lower;
    if (std::isinf(u_raw)) {
      s.lambda = 0.0;
      s.lambda_bar = bound;
    } else {
      const double scale = std::abs(u_raw) + 1.0;
      s.lambda = 1.0 / scale;
      s.lambda_bar = bound - u_raw / scale;
    }
    // lambda U + lambda_bar equals the bound up to rounding; emit the bound itself.
    s.u_safe = bound;
  } else {
    s.u_safe = u_raw;
  }
  return s;
}

void PumpModel::validate() const {
  if (!finite_positive(pump_displacement) || !finite_positive(motor_displacement) ||
      !finite_positive(gear_ratio) || !finite_positive(wheel_radius))
    fail(ErrorCode::Config, "controller.pump: displacements, gear ratio and radius must be > 0");
  if (!(gain_override >= 0.0) || !std::isfinite(gain_override))
    fail(ErrorCode::Config, "controller.pump.feedforward_gain must be > 0");
}

double PumpModel::feedforward_gain() const {
  if (gain_override > 0.0) return gain_override;
  // rev/s to RPM
  return 60.0 * gear_ratio * motor_displacement /
         (2.0 * std::numbers::pi * wheel_radius * pump_displacement);
}

double feedforward(const PumpModel& pump, double v_bar) { return pump.feedforward_gain() * v_bar; }

FeedforwardMode parse_feedforward_mode(const std::string& s) {
  if (s == "cancel") return FeedforwardMode::Cancel;
  if (s == "retain") return FeedforwardMode::Retain;
  fail(ErrorCode::Config, "feedforward_mode must be 'cancel' or 'retain', got '" + s + "'");
}

const char* to_string(FeedforwardMode m) {
  return m == FeedforwardMode::Cancel ? "cancel" : "retain";
}

double ControllerParams::guard() const {
  if (epsilon_guard >= 0.0) return epsilon_guard;
  const double g = 0.02 * funnel.o_b;
  return g * g;
}

void ControllerParams::validate(double dt) const {
  if (!finite_positive(beta)) fail(ErrorCode::Config, "controller.beta must be > 0");
  if (!finite_positive(kappa)) fail(ErrorCode::Config, "controller.kappa must be > 0");
  funnel.validate();
  limits.validate();
  pump.validate();
  if (!(phi_hat_initial >= 0.0)) fail(ErrorCode::Config, "controller.phi_hat_initial must be >= 0");
  if (!(phi_hat_max >= phi_hat_initial))
    fail(ErrorCode::Config, "controller.phi_hat_max must be >= phi_hat_initial");
  if (!(guard() < funnel.o_b * funnel.o_b))
    fail(ErrorCode::Config, "controller.epsilon_guard must be < o_b^2");
  if (!(dt > 0.0)) fail(ErrorCode::Config, "control period must be > 0");
  if (!(dt * kappa / 2.0 < 1.0))
    fail(ErrorCode::Config, "controller.kappa too large for the control rate (dt*kappa/2 >= 1)");
}

double barrier_control(const ControllerParams& p, double phi_hat, double e, double o, double o_dot,
                       const rbfn::RbfOutput& phi, double v_bar_rate, double f) {
  const double o2 = o * o;
  const double gap = o2 - e * e;
  if (!(gap > 0.0)) fail(ErrorCode::FunnelBreach, "error outside the funnel");
  const double p2 = phi_hat * phi_hat;
  double u = -0.5 * p.beta * e - (o_dot * o_dot * e * e * e) / (o2 * gap) -
             (e / gap) * (p2 * p2 * phi.norm + phi.norm_sq + v_bar_rate * v_bar_rate + 1.0);
  if (p.feedforward_mode == FeedforwardMode::Cancel) u -= f;
  return u;
}

double adapt_rate(const ControllerParams& p, double phi_hat, double e, double o,
                  const rbfn::RbfOutput& phi) {
  const double gap = o * o - e * e;
  if (!(gap > 0.0)) fail(ErrorCode::FunnelBreach, "error outside the funnel");
  const double r = e / gap;
  return -0.5 * p.kappa * phi_hat + r * r * phi_hat * phi_hat * phi_hat * phi.norm;
}

double adapt(const ControllerParams& p, double phi_hat, double e, double o,
             const rbfn::RbfOutput& phi, double dt) {
  return phi_hat + dt * adapt_rate(p, phi_hat, e, o, phi);
}

ChannelController::ChannelController(ControllerParams params, rbfn::RbfNetwork net)
    : params_(params), net_(std::move(net)), phi_hat_(params.phi_hat_initial) {}

bool ChannelController::estop_check(double e, double o) {
  if (!estopped_ && !(o * o - e * e > params_.guard())) estopped_ = true;
  return estopped_;
}

ControlOutput ChannelController::step(double v_measured, double v_bar, double v_bar_rate, double t,
                                      double dt) {
  ControlOutput out;
  out.e = v_measured - v_bar;
  const FunnelValue fv = funnel_value(params_.funnel, t);
  out.o = fv.o;
  out.o_dot = fv.o_dot;
  out.phi_hat = phi_hat_;
  if (estop_check(out.e, out.o)) {
    out.estop = true;
    out.lambda = 1.0;
    out.u_safe = std::clamp(0.0, params_.limits.lower, params_.limits.upper);
    return out;
  }
  const rbfn::RbfOutput phi = rbfn::activate(net_, v_measured);
  out.f = feedforward(params_.pump, v_bar);
  out.u = barrier_control(params_, phi_hat_, out.e, out.o, out.o_dot, phi, v_bar_rate, out.f);
  double next = adapt(params_, phi_hat_, out.e, out.o, phi, dt);
  if (next < 0.0 || next > params_.phi_hat_max || !std::isfinite(next)) {
    ++clamp_events_;
    next = std::isfinite(next) ? std::clamp(next, 0.0, params_.phi_hat_max) : params_.phi_hat_max;
  }
  phi_hat_ = next;
  out.u_raw = out.u + out.f;
  const SaturationResult s = saturate(params_.limits, out.u_raw);
  out.lambda = s.lambda;
  out.lambda_bar = s.lambda_bar;
  out.u_safe = s.u_safe;
  return out;
}

}  // namespace skidnav::raid
