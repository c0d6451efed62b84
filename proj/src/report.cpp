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
#include "skidnav/report.hpp"

#include "skidnav/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace skidnav::report {

using nlohmann::json;

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

void stamp(std::ostream& out, const sim::RunRecord& rec) {
  out << "# config_hash=" << rec.config_hash << " seed=" << rec.seed << '\n';
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json side_json(const metrics::StabilityMetrics& m) {
  return {{"settling_time_s", number_or_null(m.settling_time)},
          {"settling_time_alt_s", number_or_null(m.settling_time_alt)},
          {"overshoot_percent", m.overshoot},
          {"steady_state_error", m.steady_state_error},
          {"funnel_violations", m.funnel_violations},
          {"saturation_violations", m.saturation_violations},
          {"max_abs_u_safe", m.max_abs_u_safe},
          {"transient_start_s", m.transient_start},
          {"window_end_s", m.window_end}};
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write '" + p.string() + "'");
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const sim::RunRecord& rec, std::size_t decimation) {
  if (decimation == 0) fail(ErrorCode::InvalidArgument, "decimation must be >= 1");
  stamp(out, rec);
  out << "t,x,y,theta,v_R,v_L,v_bar_R,v_bar_L\n";
  for (std::size_t i = 0; i < rec.samples.size(); i += decimation) {
    const sim::Sample& s = rec.samples[i];
    out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
        << format_double(s.theta) << ',' << format_double(s.right.v) << ','
        << format_double(s.left.v) << ',' << format_double(s.right.v_bar) << ','
        << format_double(s.left.v_bar) << '\n';
  }
}

void write_control_csv(std::ostream& out, const sim::RunRecord& rec) {
  stamp(out, rec);
  out << "t,side,e,o,u,u_raw,u_safe,lambda,phi_hat,estop\n";
  for (const sim::Sample& s : rec.samples) {
    for (const auto& [name, d] : {std::pair<const char*, const sim::SideSample*>{"R", &s.right},
                                  std::pair<const char*, const sim::SideSample*>{"L", &s.left}}) {
      const raid::ControlOutput& c = d->out;
      out << format_double(s.t) << ',' << name << ',' << format_double(c.e) << ','
          << format_double(c.o) << ',' << format_double(c.u) << ',' << format_double(c.u_raw)
          << ',' << format_double(c.u_safe) << ',' << format_double(c.lambda) << ','
          << format_double(c.phi_hat) << ',' << (c.estop ? 1 : 0) << '\n';
    }
  }
}

json metadata_json(const sim::ScenarioConfig& cfg, const sim::RunRecord& rec) {
  return {{"scenario", rec.scenario},
          {"config_hash", rec.config_hash},
          {"seed", rec.seed},
          {"controller_kind", sim::to_string(rec.controller_kind)},
          {"samples", rec.samples.size()},
          {"estop", rec.estopped},
          {"estop_time_s", rec.estopped ? json(rec.estop_time) : json(nullptr)},
          {"path_finished", rec.path_finished},
          {"phi_hat_clamp_events", rec.phi_hat_clamp_events},
          {"rbf_centers", rec.rbf_centers},
          {"rbf_widths", rec.rbf_widths},
          {"config", sim::to_json(cfg)}};
}

json metrics_json(const sim::ScenarioConfig& cfg, const sim::RunRecord& rec) {
  json j = {{"scenario", rec.scenario},
            {"config_hash", rec.config_hash},
            {"seed", rec.seed},
            {"controller_kind", sim::to_string(rec.controller_kind)},
            {"estop", rec.estopped},
            {"samples", rec.samples.size()}};
  if (rec.samples.empty()) return j;
  const metrics::RunMetrics m = metrics::compute_metrics(rec, cfg.metrics);
  j["band"] = cfg.metrics.band;
  j["alt_band"] = cfg.metrics.alt_band;
  j["phi_hat_clamp_events"] = m.phi_hat_clamp_events;
  j["right"] = side_json(m.right);
  j["left"] = side_json(m.left);
  if (cfg.metrics.nominal_radius > 0.0) {
    try {
      const metrics::CircleFit fit = metrics::trajectory_radius(rec, cfg.metrics.nominal_radius);
      j["trajectory_radius"] = {{"center", {fit.center.x(), fit.center.y()}},
                                {"fitted_radius", fit.radius},
                                {"mean_radius", fit.mean_radius},
                                {"error_percent", fit.error_percent}};
    } catch (const Error& e) {
      j["trajectory_radius"] = {{"error", e.what()}};
    }
  }
  if (!rec.estopped && rec.samples.size() > 1) {
    const metrics::LyapunovTrace tr = metrics::lyapunov_trace(rec);
    const metrics::EnvelopeFit fit =
        metrics::fit_envelope(tr.t, tr.total, cfg.metrics.envelope_tail_fraction);
    j["lyapunov_envelope"] = {{"rho", fit.rho},
                              {"c_bar", fit.c_bar},
                              {"residual", fit.residual},
                              {"v0", fit.v0},
                              {"holds", fit.holds}};
  }
  return j;
}

ArtifactPaths write_run_artifacts(const std::filesystem::path& dir, const sim::ScenarioConfig& cfg,
                                  const sim::RunRecord& rec) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
  ArtifactPaths p{dir / "trajectory.csv", dir / "control.csv", dir / "metadata.json",
                  dir / "metrics.json"};
  {
    std::ofstream out = open_out(p.trajectory);
    write_trajectory_csv(out, rec, cfg.trajectory_decimation);
  }
  {
    std::ofstream out = open_out(p.control);
    write_control_csv(out, rec);
  }
  {
    std::ofstream out = open_out(p.metadata);
    out << metadata_json(cfg, rec).dump(2) << '\n';
  }
  {
    std::ofstream out = open_out(p.metrics);
    out << metrics_json(cfg, rec).dump(2) << '\n';
  }
  return p;
}

Comparison compare(const sim::ScenarioConfig& cfg) {
  Comparison c;
  c.json = {{"scenario", cfg.name}, {"config_hash", sim::config_hash(cfg)}, {"seed", cfg.seed}};
  std::ostringstream table;
  table << "controller  side  settling_s  settling_alt_s  overshoot_%  sse_m_s  max_|U*|  "
           "funnel_viol\n";
  json rows = json::array();
  for (const sim::ControllerKind kind : {sim::ControllerKind::Raid, sim::ControllerKind::Pid}) {
    sim::ScenarioConfig run_cfg = cfg;
    run_cfg.controller_kind = kind;
    const sim::RunRecord rec = sim::run_scenario(run_cfg);
    if (rec.samples.empty()) continue;
    const metrics::RunMetrics m = metrics::compute_metrics(rec, run_cfg.metrics);
    json entry = {{"controller_kind", sim::to_string(kind)},
                  {"config_hash", rec.config_hash},
                  {"estop", rec.estopped},
                  {"right", side_json(m.right)},
                  {"left", side_json(m.left)}};
    rows.push_back(entry);
    for (const auto& [side, s] : {std::pair<const char*, const metrics::StabilityMetrics*>{"R", &m.right},
                                  std::pair<const char*, const metrics::StabilityMetrics*>{"L", &m.left}}) {
      char line[160];
      std::snprintf(line, sizeof line, "%-10s  %-4s  %10.3f  %14.3f  %11.3f  %7.4f  %8.1f  %11zu\n",
                    sim::to_string(kind), side, s->settling_time, s->settling_time_alt,
                    s->overshoot, s->steady_state_error, s->max_abs_u_safe, s->funnel_violations);
      table << line;
    }
  }
  c.json["runs"] = rows;
  c.table = table.str();
  return c;
}

}  // namespace skidnav::report
