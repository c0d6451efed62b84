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
#include "skidnav/scenario.hpp"

#include "skidnav/error.hpp"
#include "skidnav/rbfn.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace skidnav::sim {

ControllerKind parse_controller_kind(const std::string& s) {
  if (s == "raid") return ControllerKind::Raid;
  if (s == "pid") return ControllerKind::Pid;
  fail(ErrorCode::Config, "controller_kind must be 'raid' or 'pid', got '" + s + "'");
}

const char* to_string(ControllerKind k) { return k == ControllerKind::Raid ? "raid" : "pid"; }

void ScenarioConfig::validate() const {
  if (!(duration >= 0.0) || !std::isfinite(duration))
    fail(ErrorCode::Config, "duration_s must be >= 0");
  if (!(control_rate > 0.0) || !(planner_rate > 0.0) || planner_rate > control_rate)
    fail(ErrorCode::Config, "rates must be > 0 with planner_rate_hz <= control_rate_hz");
  const double ratio = control_rate / planner_rate;
  if (std::abs(ratio - std::round(ratio)) > 1e-9)
    fail(ErrorCode::Config, "control_rate_hz must be an integer multiple of planner_rate_hz");
  robot.validate();
  controller.validate(dt());
  if (!(reference.slew_rate > 0.0)) fail(ErrorCode::Config, "reference.slew_rate must be > 0");
  if (!(reference.rate_filter_tau >= 0.0))
    fail(ErrorCode::Config, "reference.rate_filter_tau must be >= 0");
  if (rbfn.neurons == 0) fail(ErrorCode::Config, "rbfn.neurons must be >= 1");
  if (!(rbfn.width > 0.0)) fail(ErrorCode::Config, "rbfn.width must be > 0");
  plant.validate();
  path.validate();
  pid.validate();
  if (!(metrics.band > 0.0 && metrics.band < 1.0) || !(metrics.alt_band > 0.0 && metrics.alt_band < 1.0))
    fail(ErrorCode::Config, "metrics bands must be in (0, 1)");
  if (!(metrics.tail_fraction > 0.0 && metrics.tail_fraction <= 1.0) ||
      !(metrics.envelope_tail_fraction > 0.0 && metrics.envelope_tail_fraction < 1.0))
    fail(ErrorCode::Config, "metrics tail fractions must be in (0, 1]");
  if (trajectory_decimation == 0) fail(ErrorCode::Config, "output.trajectory_decimation must be >= 1");
}

namespace {

struct SideLoop {
  double v_bar = 0.0;
  double target = 0.0;
  kinematics::ReferenceRateFilter rate;
  std::optional<raid::ChannelController> raid;
  std::optional<pid::PidController> pid;

  SideSample step(const ScenarioConfig& cfg, double v, double t, double dt) {
    if (cfg.reference.shaping) {
      const double max_step = cfg.reference.slew_rate * dt;
      v_bar += std::clamp(target - v_bar, -max_step, max_step);
    } else {
      v_bar = target;
    }
    SideSample s;
    s.v = v;
    s.v_bar = v_bar;
    s.target = target;
    s.v_bar_rate = rate.update(v_bar);
    if (raid) {
      s.out = raid->step(v, v_bar, s.v_bar_rate, t, dt);
    } else {
      const pid::PidController::Output o = pid->step(v_bar - v, dt);
      s.out.e = v - v_bar;
      const raid::FunnelValue fv = raid::funnel_value(cfg.controller.funnel, t);
      s.out.o = fv.o;
      s.out.o_dot = fv.o_dot;
      s.out.u = o.u_raw;
      s.out.u_raw = o.u_raw;
      s.out.u_safe = o.sat.u_safe;
      s.out.lambda = o.sat.lambda;
      s.out.lambda_bar = o.sat.lambda_bar;
    }
    return s;
  }
};

}  // namespace

RunRecord run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  RunRecord rec;
  rec.scenario = cfg.name;
  rec.seed = cfg.seed;
  rec.config_hash = config_hash(cfg);
  rec.controller_kind = cfg.controller_kind;
  rec.funnel = cfg.controller.funnel;
  rec.limits = cfg.controller.limits;
  rec.guard = cfg.controller.guard();
  for (const plant::SlipEvent& ev : cfg.plant.slip_events)
    if (rec.first_slip_onset < 0.0 || ev.t_start < rec.first_slip_onset) rec.first_slip_onset = ev.t_start;

  const double dt = cfg.dt();
  const rbfn::RbfNetwork net =
      rbfn::init_stochastic(cfg.rbfn.neurons, cfg.rbfn.has_seed ? cfg.rbfn.seed : cfg.seed, cfg.rbfn.width);
  rec.rbf_centers = net.centers();
  rec.rbf_widths = net.widths();

  auto make_side = [&] {
    SideLoop s{0.0, 0.0, kinematics::ReferenceRateFilter(dt, cfg.reference.rate_filter_tau), {}, {}};
    if (cfg.controller_kind == ControllerKind::Raid)
      s.raid.emplace(cfg.controller, net);
    else
      s.pid.emplace(cfg.pid);
    return s;
  };
  SideLoop right = make_side();
  SideLoop left = make_side();

  plant::PlantState state;
  state.pose = cfg.initial_pose;
  pursuit::PursuitState pstate;
  const auto steps = static_cast<std::size_t>(std::llround(cfg.duration * cfg.control_rate));
  const auto planner_every = static_cast<std::size_t>(std::llround(cfg.control_rate / cfg.planner_rate));
  rec.samples.reserve(steps);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    state.t = t;
    if (k % planner_every == 0) {
      const pursuit::PursuitStep ps = pursuit::step(state.pose, cfg.path, pstate, cfg.robot);
      pstate = ps.state;
      const kinematics::SideVelocityRefs refs =
          kinematics::wheel_speeds(ps.command.v, ps.command.omega, cfg.robot);
      right.target = refs.right;
      left.target = refs.left;
    }
    Sample smp;
    smp.t = t;
    smp.x = state.pose.x();
    smp.y = state.pose.y();
    smp.theta = state.pose.theta();
    smp.right = right.step(cfg, state.v_right, t, dt);
    smp.left = left.step(cfg, state.v_left, t, dt);
    rec.samples.push_back(smp);
    if (smp.right.out.estop || smp.left.out.estop) {
      rec.estopped = true;
      rec.estop_time = t;
      break;
    }
    state = plant::body_step(state, cfg.robot, dt);
    state = plant::plant_step(state, cfg.plant, smp.right.out.u_safe, smp.left.out.u_safe, dt);
  }
  rec.path_finished = pstate.finished;
  if (right.raid) rec.phi_hat_clamp_events = right.raid->clamp_events() + left.raid->clamp_events();
  return rec;
}

}  // namespace skidnav::sim
