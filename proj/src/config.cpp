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
#include "skidnav/error.hpp"
#include "skidnav/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace skidnav::sim {

using nlohmann::json;

namespace {

std::vector<std::string> split_path(const std::string& dotted) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : dotted) {
    if (c == '.') {
      out.push_back(cur);
      cur.clear();
    } else if (c == '[') {
      break;
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Line of the last key of `keys`, found by scanning for each quoted key in turn.
std::size_t locate_line(const std::string& text, const std::vector<std::string>& keys) {
  std::size_t pos = 0;
  std::size_t found = std::string::npos;
  for (const std::string& k : keys) {
    const std::size_t at = text.find('"' + k + '"', pos);
    if (at == std::string::npos) break;
    found = at;
    pos = at + k.size() + 2;
  }
  if (found == std::string::npos) return 0;
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(found), '\n'));
}

[[noreturn]] void config_error(const std::string& text, const std::string& key_path,
                               const std::string& message) {
  const std::size_t line = locate_line(text, split_path(key_path));
  std::string prefix = line > 0 ? "config line " + std::to_string(line) + ": " : "config: ";
  fail(ErrorCode::Config, prefix + message);
}

class Node {
public:
  Node(const json& j, std::string path, const std::string& text) : j_(j), path_(std::move(path)), text_(text) {
    if (!j_.is_object()) config_error(text_, path_, where() + "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  double num(const std::string& key, double fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) config_error(text_, key_of(key), key_of(key) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) config_error(text_, key_of(key), key_of(key) + ": not finite");
    return d;
  }

  std::uint64_t uint(const std::string& key, std::uint64_t fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_unsigned())
      config_error(text_, key_of(key), key_of(key) + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) config_error(text_, key_of(key), key_of(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string str(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) config_error(text_, key_of(key), key_of(key) + ": expected a string");
    return v.get<std::string>();
  }

  template <class Parse>
  auto choice(const std::string& key, const std::string& fallback, Parse parse) {
    const std::string value = str(key, fallback);
    try {
      return parse(value);
    } catch (const Error& e) {
      config_error(text_, key_of(key), key_of(key) + ": " + e.what());
    }
  }

  const json* raw(const std::string& key) {
    used_.insert(key);
    return has(key) ? &j_.at(key) : nullptr;
  }

  Node child(const std::string& key) {
    used_.insert(key);
    static const json empty = json::object();
    return Node(has(key) ? j_.at(key) : empty, key_of(key), text_);
  }

  std::string key_of(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key()))
        config_error(text_, key_of(it.key()), key_of(it.key()) + ": unknown key");
  }

  const std::string& text() const { return text_; }

private:
  std::string where() const { return path_.empty() ? "" : path_ + ": "; }

  const json& j_;
  std::string path_;
  const std::string& text_;
  std::set<std::string> used_;
};

std::vector<double> number_array(const json& v, const std::string& key, const std::string& text,
                                 std::size_t expected) {
  if (!v.is_array() || (expected > 0 && v.size() != expected))
    config_error(text, key, key + ": expected an array of " + std::to_string(expected) + " numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) config_error(text, key, key + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void parse_controller(Node n, raid::ControllerParams& c) {
  c.beta = n.num("beta", c.beta);
  c.kappa = n.num("kappa", c.kappa);
  c.feedforward_mode =
      n.choice("feedforward_mode", raid::to_string(c.feedforward_mode), raid::parse_feedforward_mode);
  c.epsilon_guard = n.num("epsilon_guard", c.epsilon_guard);
  c.phi_hat_initial = n.num("phi_hat_initial", c.phi_hat_initial);
  c.phi_hat_max = n.num("phi_hat_max", c.phi_hat_max);
  Node f = n.child("funnel");
  c.funnel.o_ov = f.num("o_ov", c.funnel.o_ov);
  c.funnel.o_b = f.num("o_b", c.funnel.o_b);
  c.funnel.o_star = f.num("o_star", c.funnel.o_star);
  f.finish();
  Node l = n.child("limits");
  c.limits.upper = l.num("upper", c.limits.upper);
  c.limits.lower = l.num("lower", c.limits.lower);
  l.finish();
  Node p = n.child("pump");
  c.pump.pump_displacement = p.num("pump_displacement", c.pump.pump_displacement);
  c.pump.motor_displacement = p.num("motor_displacement", c.pump.motor_displacement);
  c.pump.gain_override = p.num("feedforward_gain", c.pump.gain_override);
  p.finish();
  n.finish();
}

plant::SlipEvent parse_slip(Node n) {
  plant::SlipEvent ev;
  if (!n.has("t_start") || !n.has("t_end"))
    config_error(n.text(), n.key_of("t_start"), n.key_of("") + " needs t_start and t_end");
  ev.t_start = n.num("t_start", 0.0);
  ev.t_end = n.num("t_end", 0.0);
  ev.side = n.choice("side", "both", plant::parse_side);
  ev.g_scale = n.num("g_scale", 1.0);
  ev.delta_add = n.num("delta_add", 0.0);
  n.finish();
  return ev;
}

ScenarioConfig parse_document(const json& doc, const std::string& text,
                              const std::filesystem::path& base_dir) {
  ScenarioConfig cfg;
  Node root(doc, "", text);
  cfg.name = root.str("name", cfg.name);
  cfg.seed = root.uint("seed", cfg.seed);
  cfg.duration = root.num("duration_s", cfg.duration);
  cfg.control_rate = root.num("control_rate_hz", cfg.control_rate);
  cfg.planner_rate = root.num("planner_rate_hz", cfg.planner_rate);
  cfg.controller_kind = root.choice("controller_kind", to_string(cfg.controller_kind), parse_controller_kind);
  root.str("$schema", "");

  Node robot = root.child("robot");
  cfg.robot.wheelbase_width = robot.num("wheelbase_width", cfg.robot.wheelbase_width);
  cfg.robot.v_max = robot.num("v_max", cfg.robot.v_max);
  cfg.robot.wheel_radius = robot.num("wheel_radius", cfg.robot.wheel_radius);
  cfg.robot.gear_ratio = robot.num("gear_ratio", cfg.robot.gear_ratio);
  robot.finish();
  cfg.controller.pump.wheel_radius = cfg.robot.wheel_radius;
  cfg.controller.pump.gear_ratio = cfg.robot.gear_ratio;

  parse_controller(root.child("controller"), cfg.controller);

  Node ref = root.child("reference");
  cfg.reference.shaping = ref.boolean("shaping", cfg.reference.shaping);
  cfg.reference.slew_rate = ref.num("slew_rate", cfg.reference.slew_rate);
  cfg.reference.rate_filter_tau = ref.num("rate_filter_tau", cfg.reference.rate_filter_tau);
  ref.finish();

  Node rb = root.child("rbfn");
  cfg.rbfn.neurons = static_cast<std::size_t>(rb.uint("neurons", cfg.rbfn.neurons));
  cfg.rbfn.width = rb.num("width", cfg.rbfn.width);
  if (rb.has("seed")) {
    cfg.rbfn.has_seed = true;
    cfg.rbfn.seed = rb.uint("seed", 0);
  } else {
    rb.raw("seed");
  }
  rb.finish();

  Node pl = root.child("plant");
  cfg.plant.g_nominal = pl.num("g_nominal", cfg.plant.g_nominal);
  cfg.plant.tau = pl.num("tau", cfg.plant.tau);
  cfg.plant.g_variation = pl.num("g_variation", cfg.plant.g_variation);
  cfg.plant.g_variation_hz = pl.num("g_variation_hz", cfg.plant.g_variation_hz);
  cfg.plant.quadratic_drag = pl.num("quadratic_drag", cfg.plant.quadratic_drag);
  cfg.plant.delta_amplitude = pl.num("delta_amplitude", cfg.plant.delta_amplitude);
  cfg.plant.delta_hz = pl.num("delta_hz", cfg.plant.delta_hz);
  cfg.plant.delta_cap = pl.num("delta_cap", cfg.plant.delta_cap);
  pl.finish();

  if (const json* ev = root.raw("slip_events")) {
    if (!ev->is_array()) config_error(text, "slip_events", "slip_events: expected an array");
    for (std::size_t i = 0; i < ev->size(); ++i)
      cfg.plant.slip_events.push_back(
          parse_slip(Node((*ev)[i], "slip_events[" + std::to_string(i) + "]", text)));
  }

  Node path = root.child("path");
  cfg.path.lookahead = path.num("lookahead", cfg.path.lookahead);
  cfg.path.cruise_speed = path.num("cruise_speed", cfg.path.cruise_speed);
  cfg.path.arrival_tolerance = path.num("arrival_tolerance", cfg.path.arrival_tolerance);
  const json* wps = path.raw("waypoints");
  const std::string csv = path.str("waypoints_csv", "");
  if ((wps != nullptr) == !csv.empty())
    config_error(text, "path", "path: give exactly one of 'waypoints' or 'waypoints_csv'");
  if (wps) {
    if (!wps->is_array()) config_error(text, "path.waypoints", "path.waypoints: expected an array");
    for (const json& w : *wps) {
      const std::vector<double> xy = number_array(w, "path.waypoints", text, 2);
      cfg.path.waypoints.emplace_back(xy[0], xy[1]);
    }
  } else {
    std::filesystem::path p(csv);
    if (p.is_relative()) p = base_dir / p;
    try {
      cfg.path.waypoints = pursuit::read_waypoints_csv(p.string());
    } catch (const Error& e) {
      config_error(text, "path.waypoints_csv", std::string("path.waypoints_csv: ") + e.what());
    }
  }
  path.finish();

  if (const json* ip = root.raw("initial_pose")) {
    const std::vector<double> q = number_array(*ip, "initial_pose", text, 3);
    cfg.initial_pose = Pose2D(q[0], q[1], q[2]);
  }

  Node pid = root.child("pid");
  cfg.pid.kp = pid.num("kp", cfg.pid.kp);
  cfg.pid.ki = pid.num("ki", cfg.pid.ki);
  cfg.pid.kd = pid.num("kd", cfg.pid.kd);
  pid.finish();
  cfg.pid.limits = cfg.controller.limits;

  Node m = root.child("metrics");
  cfg.metrics.band = m.num("band", cfg.metrics.band);
  cfg.metrics.alt_band = m.num("alt_band", cfg.metrics.alt_band);
  cfg.metrics.tail_fraction = m.num("tail_fraction", cfg.metrics.tail_fraction);
  cfg.metrics.nominal_radius = m.num("nominal_radius", cfg.metrics.nominal_radius);
  cfg.metrics.envelope_tail_fraction = m.num("envelope_tail_fraction", cfg.metrics.envelope_tail_fraction);
  if (const json* w = m.raw("transient_window")) {
    const std::vector<double> win = number_array(*w, "metrics.transient_window", text, 2);
    cfg.metrics.window_start = win[0];
    cfg.metrics.window_end = win[1];
    if (!(win[0] >= 0.0 && win[1] > win[0]))
      config_error(text, "metrics.transient_window", "metrics.transient_window: need 0 <= start < end");
  }
  m.finish();

  Node out = root.child("output");
  cfg.trajectory_decimation = static_cast<std::size_t>(out.uint("trajectory_decimation", cfg.trajectory_decimation));
  out.finish();

  root.finish();

  try {
    cfg.validate();
  } catch (const Error& e) {
    const std::string msg = e.what();
    config_error(text, msg.substr(0, msg.find_first_of(" :")), msg);
  }
  return cfg;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(byte > 0 ? byte - 1 : 0), '\n');
    fail(ErrorCode::Config, "config line " + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
  }
  return parse_document(doc, text, base_dir);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Config, "cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str(), path.parent_path());
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["seed"] = c.seed;
  j["duration_s"] = c.duration;
  j["control_rate_hz"] = c.control_rate;
  j["planner_rate_hz"] = c.planner_rate;
  j["controller_kind"] = to_string(c.controller_kind);
  j["robot"] = {{"wheelbase_width", c.robot.wheelbase_width},
                {"v_max", c.robot.v_max},
                {"wheel_radius", c.robot.wheel_radius},
                {"gear_ratio", c.robot.gear_ratio}};
  const raid::ControllerParams& k = c.controller;
  j["controller"] = {
      {"beta", k.beta},
      {"kappa", k.kappa},
      {"feedforward_mode", raid::to_string(k.feedforward_mode)},
      {"epsilon_guard", k.guard()},
      {"phi_hat_initial", k.phi_hat_initial},
      {"phi_hat_max", k.phi_hat_max},
      {"funnel", {{"o_ov", k.funnel.o_ov}, {"o_b", k.funnel.o_b}, {"o_star", k.funnel.o_star}}},
      {"limits", {{"upper", k.limits.upper}, {"lower", k.limits.lower}}},
      {"pump",
       {{"pump_displacement", k.pump.pump_displacement},
        {"motor_displacement", k.pump.motor_displacement},
        {"feedforward_gain", k.pump.feedforward_gain()}}}};
  j["reference"] = {{"shaping", c.reference.shaping},
                    {"slew_rate", c.reference.slew_rate},
                    {"rate_filter_tau", c.reference.rate_filter_tau}};
  j["rbfn"] = {{"neurons", c.rbfn.neurons},
               {"width", c.rbfn.width},
               {"seed", c.rbfn.has_seed ? c.rbfn.seed : c.seed}};
  j["plant"] = {{"g_nominal", c.plant.g_nominal},
                {"tau", c.plant.tau},
                {"g_variation", c.plant.g_variation},
                {"g_variation_hz", c.plant.g_variation_hz},
                {"quadratic_drag", c.plant.quadratic_drag},
                {"delta_amplitude", c.plant.delta_amplitude},
                {"delta_hz", c.plant.delta_hz},
                {"delta_cap", c.plant.delta_cap}};
  json events = json::array();
  for (const plant::SlipEvent& ev : c.plant.slip_events)
    events.push_back({{"t_start", ev.t_start},
                      {"t_end", ev.t_end},
                      {"side", plant::to_string(ev.side)},
                      {"g_scale", ev.g_scale},
                      {"delta_add", ev.delta_add}});
  j["slip_events"] = events;
  json wps = json::array();
  for (const Vec2& w : c.path.waypoints) wps.push_back({w.x(), w.y()});
  j["path"] = {{"lookahead", c.path.lookahead},
               {"cruise_speed", c.path.cruise_speed},
               {"arrival_tolerance", c.path.arrival_tolerance},
               {"waypoints", wps}};
  j["initial_pose"] = {c.initial_pose.x(), c.initial_pose.y(), c.initial_pose.theta()};
  j["pid"] = {{"kp", c.pid.kp}, {"ki", c.pid.ki}, {"kd", c.pid.kd}};
  j["metrics"] = {{"band", c.metrics.band},
                  {"alt_band", c.metrics.alt_band},
                  {"transient_window", c.metrics.window_end < 0.0 ? json(nullptr)
                                                        : json::array({c.metrics.window_start, c.metrics.window_end})},
                  {"tail_fraction", c.metrics.tail_fraction},
                  {"nominal_radius", c.metrics.nominal_radius},
                  {"envelope_tail_fraction", c.metrics.envelope_tail_fraction}};
  j["output"] = {{"trajectory_decimation", c.trajectory_decimation}};
  return j;
}

std::string config_hash(const ScenarioConfig& cfg) {
  const std::string canonical = to_json(cfg).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace skidnav::sim
