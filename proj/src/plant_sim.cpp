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
#include "skidnav/plant_sim.hpp"

#include "skidnav/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace skidnav::plant {

Side parse_side(const std::string& s) {
  if (s == "R" || s == "right") return Side::Right;
  if (s == "L" || s == "left") return Side::Left;
  if (s == "both") return Side::Both;
  fail(ErrorCode::Config, "side must be 'R', 'L' or 'both', got '" + s + "'");
}

const char* to_string(Side s) {
  switch (s) {
    case Side::Right: return "R";
    case Side::Left: return "L";
    case Side::Both: return "both";
  }
  return "?";
}

SideEffects schedule_slip(std::span<const SlipEvent> events, double t) {
  SideEffects out;
  for (const SlipEvent& ev : events) {
    if (t < ev.t_start || t >= ev.t_end) continue;
    if (ev.side != Side::Left) {
      out.right.g_scale *= ev.g_scale;
      out.right.delta_add += ev.delta_add;
    }
    if (ev.side != Side::Right) {
      out.left.g_scale *= ev.g_scale;
      out.left.delta_add += ev.delta_add;
    }
  }
  return out;
}

void PlantParams::validate() const {
  if (!(g_nominal > 0.0) || !std::isfinite(g_nominal))
    fail(ErrorCode::Config, "plant.g_nominal must be > 0");
  if (!(tau > 0.0)) fail(ErrorCode::Config, "plant.tau must be > 0");
  if (!(g_variation >= 0.0 && g_variation < 1.0))
    fail(ErrorCode::Config, "plant.g_variation must be in [0, 1)");
  if (!(g_variation_hz >= 0.0) || !(delta_hz >= 0.0))
    fail(ErrorCode::Config, "plant frequencies must be >= 0");
  if (!(quadratic_drag >= 0.0)) fail(ErrorCode::Config, "plant.quadratic_drag must be >= 0");
  if (!(delta_cap >= 0.0)) fail(ErrorCode::Config, "plant.delta_cap must be >= 0");
  for (const SlipEvent& ev : slip_events) {
    if (!(ev.t_start < ev.t_end)) fail(ErrorCode::Config, "slip_events: t_start must be < t_end");
    if (!(ev.g_scale > 0.0) || !std::isfinite(ev.g_scale))
      fail(ErrorCode::Config, "slip_events: g_scale must be > 0");
    if (!std::isfinite(ev.delta_add)) fail(ErrorCode::Config, "slip_events: delta_add not finite");
  }
  // Worst case |delta| is reached at some event boundary or in a gap.
  std::vector<double> probes{0.0};
  for (const SlipEvent& ev : slip_events) {
    probes.push_back(ev.t_start);
    probes.push_back(ev.t_end);
  }
  for (double t : probes) {
    const SideEffects fx = schedule_slip(slip_events, t);
    const double worst = std::abs(delta_amplitude) +
                         std::max(std::abs(fx.right.delta_add), std::abs(fx.left.delta_add));
    if (worst > delta_cap + 1e-12)
      fail(ErrorCode::Config, "plant disturbance can exceed plant.delta_cap");
  }
}

double PlantParams::g(double t, const SlipEffect& slip) const {
  double scale = 1.0;
  if (g_variation > 0.0) scale += g_variation * std::sin(2.0 * std::numbers::pi * g_variation_hz * t);
  return g_nominal * scale * slip.g_scale;
}

double PlantParams::d(double v) const { return -v / tau - quadratic_drag * v * std::abs(v); }

double PlantParams::delta(double t, const SlipEffect& slip) const {
  double out = slip.delta_add;
  if (delta_amplitude != 0.0) out += delta_amplitude * std::sin(2.0 * std::numbers::pi * delta_hz * t);
  if (std::abs(out) > delta_cap + 1e-12)
    fail(ErrorCode::InvalidArgument, "plant disturbance exceeds its declared cap");
  return out;
}

PlantState plant_step(const PlantState& s, const PlantParams& p, double u_right, double u_left,
                      double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "plant_step needs dt > 0");
  const auto rhs = [&](double t, double v, double u, bool right) {
    const SideEffects fx = schedule_slip(p.slip_events, t);
    const SlipEffect& slip = right ? fx.right : fx.left;
    return p.g(t, slip) * u + p.d(v) + p.delta(t, slip);
  };
  const auto rk4 = [&](double v, double u, bool right) {
    const double t = s.t;
    const double k1 = rhs(t, v, u, right);
    const double k2 = rhs(t + dt / 2, v + dt / 2 * k1, u, right);
    const double k3 = rhs(t + dt / 2, v + dt / 2 * k2, u, right);
    const double k4 = rhs(t + dt, v + dt * k3, u, right);
    return v + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  PlantState out = s;
  out.v_right = rk4(s.v_right, u_right, true);
  out.v_left = rk4(s.v_left, u_left, false);
  out.t = s.t + dt;
  return out;
}

PlantState body_step(const PlantState& s, const kinematics::RobotGeometry& geom, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "body_step needs dt > 0");
  const double v = 0.5 * (s.v_right + s.v_left);
  const double omega = (s.v_right - s.v_left) / geom.wheelbase_width;
  const Pose2D& q = s.pose;
  PlantState out = s;
  out.pose = Pose2D(q.x() + v * std::cos(q.theta()) * dt, q.y() + v * std::sin(q.theta()) * dt,
                    q.theta() + omega * dt);
  return out;
}

}  // namespace skidnav::plant
