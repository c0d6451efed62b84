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
#ifndef SKIDNAV_SCENARIO_HPP
#define SKIDNAV_SCENARIO_HPP

#include "skidnav/geometry.hpp"
#include "skidnav/kinematics.hpp"
#include "skidnav/path_following.hpp"
#include "skidnav/pid.hpp"
#include "skidnav/plant_sim.hpp"
#include "skidnav/raid_control.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace skidnav::sim {

enum class ControllerKind { Raid, Pid };

ControllerKind parse_controller_kind(const std::string& s);
const char* to_string(ControllerKind k);

struct ReferenceOptions {
  bool shaping = true;
  double slew_rate = 0.4;        // m/s^2
  double rate_filter_tau = 0.05;  // s
};

struct RbfOptions {
  std::size_t neurons = 9;
  double width = 0.13;
  bool has_seed = false;  // otherwise the scenario seed is used
  std::uint64_t seed = 0;
};

struct MetricsOptions {
  double band = 0.05;
  double alt_band = 0.02;
  double window_start = 0.0;
  double window_end = -1.0;  // negative: first slip onset, or end of record
  double tail_fraction = 0.2;
  double nominal_radius = 0.0;  // 0 disables the radius check
  double envelope_tail_fraction = 0.25;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  double duration = 60.0;       // s
  double control_rate = 1000.0;  // Hz
  double planner_rate = 100.0;   // Hz
  ControllerKind controller_kind = ControllerKind::Raid;
  kinematics::RobotGeometry robot;
  raid::ControllerParams controller;
  ReferenceOptions reference;
  RbfOptions rbfn;
  plant::PlantParams plant;
  pursuit::WaypointPath path;
  Pose2D initial_pose;
  pid::PidGains pid;
  MetricsOptions metrics;
  std::size_t trajectory_decimation = 10;

  void validate() const;
  double dt() const { return 1.0 / control_rate; }
};

/// Parses a config document. Relative paths (waypoint CSV) resolve against
/// `base_dir`. Errors carry the config line when the source text is known.
ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical effective configuration; stable key order.
nlohmann::json to_json(const ScenarioConfig& cfg);

/// FNV-1a 64 over the compact canonical JSON, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

struct SideSample {
  double v = 0.0;            // measured
  double v_bar = 0.0;        // shaped reference fed to the controller
  double v_bar_rate = 0.0;
  double target = 0.0;       // planner output before shaping
  raid::ControlOutput out;
};

struct Sample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  SideSample right;
  SideSample left;
};

struct RunRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string config_hash;
  ControllerKind controller_kind = ControllerKind::Raid;
  std::vector<Sample> samples;
  bool estopped = false;
  double estop_time = 0.0;
  bool path_finished = false;
  double first_slip_onset = -1.0;  // negative when the scenario has no slip events
  std::size_t phi_hat_clamp_events = 0;
  std::vector<double> rbf_centers;
  std::vector<double> rbf_widths;
  raid::PerformanceFunnel funnel;
  raid::ActuatorLimits limits;
  double guard = 0.0;
};

/// Planner, kinematics, controller and plant loop. A funnel breach latches
/// the emergency stop; the record ends at the breach sample.
RunRecord run_scenario(const ScenarioConfig& cfg);

}  // namespace skidnav::sim

#endif  // SKIDNAV_SCENARIO_HPP
