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
#include "skidnav/skidnav.h"

#include "skidnav/error.hpp"
#include "skidnav/lidar_odometry.hpp"
#include "skidnav/metrics.hpp"
#include "skidnav/report.hpp"
#include "skidnav/scenario.hpp"
#include "skidnav/synthetic.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>

using namespace skidnav;

struct skn_config {
  sim::ScenarioConfig cfg;
  std::string hash;
};

struct skn_run {
  sim::ScenarioConfig cfg;
  sim::RunRecord rec;
  std::optional<metrics::RunMetrics> metrics;
};

struct skn_controller {
  raid::ChannelController ctl;
};

struct skn_cloud {
  PointCloud cloud;
};

namespace {

thread_local std::string last_error;

skn_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SKN_ERR_INVALID_ARGUMENT;
    case ErrorCode::Config: return SKN_ERR_CONFIG;
    case ErrorCode::Io: return SKN_ERR_IO;
    case ErrorCode::FunnelBreach:
    case ErrorCode::BreachInTrace: return SKN_ERR_FUNNEL_BREACH;
    case ErrorCode::NonConvergence: return SKN_ERR_NON_CONVERGENCE;
    case ErrorCode::InsufficientCorrespondences:
    case ErrorCode::NoKeyframes: return SKN_ERR_INSUFFICIENT_CORRESPONDENCES;
    case ErrorCode::EmptyScan: return SKN_ERR_EMPTY_SCAN;
    case ErrorCode::IndexOutOfNeighborhood:
    case ErrorCode::DegeneratePoint:
    case ErrorCode::DegenerateLine:
    case ErrorCode::DegeneratePlane:
    case ErrorCode::DegenerateFit:
    case ErrorCode::EmptyRecord:
    case ErrorCode::PathExhausted: return SKN_ERR_DEGENERATE;
  }
  return SKN_ERR_INTERNAL;
}

template <typename F>
skn_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return SKN_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return SKN_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return SKN_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void refresh_hash(skn_config* c) {
  c->cfg.validate();
  c->hash = sim::config_hash(c->cfg);
}

skn_pose6 to_c(const EulerPose& p) { return {p.tx, p.ty, p.tz, p.roll, p.pitch, p.yaw}; }
EulerPose from_c(const skn_pose6& p) { return {p.tx, p.ty, p.tz, p.roll, p.pitch, p.yaw}; }

}  // namespace

extern "C" {

const char* skn_version(void) { return "0.1.0"; }

const char* skn_status_name(skn_status status) {
  switch (status) {
    case SKN_OK: return "ok";
    case SKN_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SKN_ERR_CONFIG: return "config";
    case SKN_ERR_FUNNEL_BREACH: return "funnel_breach";
    case SKN_ERR_NON_CONVERGENCE: return "non_convergence";
    case SKN_ERR_INSUFFICIENT_CORRESPONDENCES: return "insufficient_correspondences";
    case SKN_ERR_IO: return "io";
    case SKN_ERR_EMPTY_SCAN: return "empty_scan";
    case SKN_ERR_DEGENERATE: return "degenerate";
    case SKN_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* skn_last_error(void) { return last_error.c_str(); }

void skn_string_free(char* s) { std::free(s); }

skn_status skn_config_load(const char* path, skn_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    auto c = std::make_unique<skn_config>();
    c->cfg = sim::load_config(path);
    refresh_hash(c.get());
    *out = c.release();
  });
}

skn_status skn_config_parse(const char* json_text, const char* base_dir, skn_config** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = nullptr;
    auto c = std::make_unique<skn_config>();
    c->cfg = sim::parse_config(json_text, base_dir ? base_dir : ".");
    refresh_hash(c.get());
    *out = c.release();
  });
}

void skn_config_free(skn_config* cfg) { delete cfg; }

skn_status skn_config_set_seed(skn_config* cfg, uint64_t seed) {
  return guarded([&] {
    require(cfg, "cfg");
    cfg->cfg.seed = seed;
    refresh_hash(cfg);
  });
}

skn_status skn_config_set_duration(skn_config* cfg, double seconds) {
  return guarded([&] {
    require(cfg, "cfg");
    const double old = cfg->cfg.duration;
    cfg->cfg.duration = seconds;
    try {
      refresh_hash(cfg);
    } catch (...) {
      cfg->cfg.duration = old;
      throw;
    }
  });
}

skn_status skn_config_set_controller(skn_config* cfg, skn_controller_kind kind) {
  return guarded([&] {
    require(cfg, "cfg");
    if (kind != SKN_CONTROLLER_RAID && kind != SKN_CONTROLLER_PID)
      fail(ErrorCode::InvalidArgument, "unknown controller kind");
    cfg->cfg.controller_kind = kind == SKN_CONTROLLER_RAID ? sim::ControllerKind::Raid
                                                           : sim::ControllerKind::Pid;
    refresh_hash(cfg);
  });
}

const char* skn_config_hash(const skn_config* cfg) { return cfg ? cfg->hash.c_str() : ""; }

skn_status skn_config_to_json(const skn_config* cfg, char** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = dup_string(sim::to_json(cfg->cfg).dump(2));
  });
}

skn_status skn_run_scenario(const skn_config* cfg, skn_run** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = nullptr;
    auto r = std::make_unique<skn_run>();
    r->cfg = cfg->cfg;
    r->rec = sim::run_scenario(r->cfg);
    if (!r->rec.samples.empty()) r->metrics = metrics::compute_metrics(r->rec, r->cfg.metrics);
    *out = r.release();
  });
}

void skn_run_free(skn_run* run) { delete run; }

size_t skn_run_sample_count(const skn_run* run) { return run ? run->rec.samples.size() : 0; }

int skn_run_estopped(const skn_run* run) { return run && run->rec.estopped ? 1 : 0; }

uint64_t skn_run_phi_hat_clamp_events(const skn_run* run) {
  return run ? run->rec.phi_hat_clamp_events : 0;
}

skn_status skn_run_metrics(const skn_run* run, skn_side side, skn_metrics* out) {
  return guarded([&] {
    require(run, "run");
    require(out, "out");
    if (!run->metrics) fail(ErrorCode::EmptyRecord, "record has no samples");
    const metrics::StabilityMetrics& m =
        side == SKN_SIDE_RIGHT ? run->metrics->right : run->metrics->left;
    out->settling_time = m.settling_time;
    out->settling_time_alt = m.settling_time_alt;
    out->overshoot_percent = m.overshoot;
    out->steady_state_error = m.steady_state_error;
    out->max_abs_u_safe = m.max_abs_u_safe;
    out->funnel_violations = m.funnel_violations;
    out->saturation_violations = m.saturation_violations;
  });
}

skn_status skn_run_write_artifacts(const skn_run* run, const char* out_dir) {
  return guarded([&] {
    require(run, "run");
    require(out_dir, "out_dir");
    report::write_run_artifacts(out_dir, run->cfg, run->rec);
  });
}

skn_status skn_run_metrics_json(const skn_run* run, char** out) {
  return guarded([&] {
    require(run, "run");
    require(out, "out");
    *out = dup_string(report::metrics_json(run->cfg, run->rec).dump(2));
  });
}

skn_status skn_compare(const skn_config* cfg, const char* out_dir, char** table) {
  return guarded([&] {
    require(cfg, "cfg");
    const report::Comparison c = report::compare(cfg->cfg);
    if (out_dir != nullptr) {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) fail(ErrorCode::Io, std::string("cannot create '") + out_dir + "': " + ec.message());
      const std::filesystem::path p = std::filesystem::path(out_dir) / "compare.json";
      std::ofstream f(p, std::ios::binary);
      if (!f) fail(ErrorCode::Io, "cannot write '" + p.string() + "'");
      f << c.json.dump(2) << '\n';
    }
    if (table != nullptr) *table = dup_string(c.table);
  });
}

skn_status skn_controller_create(const skn_config* cfg, skn_controller** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    const sim::ScenarioConfig& c = cfg->cfg;
    const std::uint64_t seed = c.rbfn.has_seed ? c.rbfn.seed : c.seed;
    *out = new skn_controller{
        raid::ChannelController(c.controller, rbfn::init_stochastic(c.rbfn.neurons, seed, c.rbfn.width))};
  });
}

void skn_controller_free(skn_controller* ctl) { delete ctl; }

skn_status skn_controller_step(skn_controller* ctl, double v_measured, double v_bar,
                               double v_bar_rate, double t, double dt, skn_control_output* out) {
  return guarded([&] {
    require(ctl, "ctl");
    require(out, "out");
    const raid::ControlOutput o = ctl->ctl.step(v_measured, v_bar, v_bar_rate, t, dt);
    *out = {o.u, o.u_raw, o.u_safe, o.lambda, o.lambda_bar, o.e, o.o, o.phi_hat, o.estop ? 1 : 0};
  });
}

skn_status skn_saturate(double lower, double upper, double u_raw, double* lambda,
                        double* lambda_bar, double* u_safe) {
  return guarded([&] {
    if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper))
      fail(ErrorCode::InvalidArgument, "saturate: need finite lower < upper");
    const raid::ActuatorLimits limits{upper, lower};
    const raid::SaturationResult s = raid::saturate(limits, u_raw);
    if (lambda) *lambda = s.lambda;
    if (lambda_bar) *lambda_bar = s.lambda_bar;
    if (u_safe) *u_safe = s.u_safe;
  });
}

skn_status skn_cloud_load_csv(const char* path, skn_cloud** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new skn_cloud{read_cloud_csv(std::string(path))};
  });
}

skn_status skn_cloud_save_csv(const skn_cloud* cloud, const char* path) {
  return guarded([&] {
    require(cloud, "cloud");
    require(path, "path");
    write_cloud_csv(std::string(path), cloud->cloud);
  });
}

skn_status skn_cloud_generate(uint64_t seed, size_t n_points, skn_cloud** out) {
  return guarded([&] {
    require(out, "out");
    *out = new skn_cloud{synthetic::ordered_scan(seed, n_points)};
  });
}

skn_status skn_cloud_transform(const skn_cloud* cloud, const skn_pose6* pose, int inverse,
                               skn_cloud** out) {
  return guarded([&] {
    require(cloud, "cloud");
    require(pose, "pose");
    require(out, "out");
    Transform3D t = Transform3D::from_euler(from_c(*pose));
    if (inverse) t = t.inverse();
    *out = new skn_cloud{transform_cloud(t, cloud->cloud)};
  });
}

size_t skn_cloud_size(const skn_cloud* cloud) { return cloud ? cloud->cloud.size() : 0; }

void skn_cloud_free(skn_cloud* cloud) { delete cloud; }

void skn_scan_match_default_options(skn_scan_match_options* opts) {
  if (opts == nullptr) return;
  const lidar::ScanMatchOptions d;
  opts->max_iterations = d.max_iterations;
  opts->max_correspondence_distance = d.max_correspondence_distance;
  opts->voxel_size = 0.01;
  opts->feature_cap = 0;
}

skn_status skn_scan_match(const skn_cloud* map, const skn_cloud* scan, const skn_pose6* initial,
                          const skn_scan_match_options* opts, skn_scan_match_result* out) {
  bool converged = true;
  const skn_status st = guarded([&] {
    require(map, "map");
    require(scan, "scan");
    require(out, "out");
    skn_scan_match_options o;
    skn_scan_match_default_options(&o);
    if (opts) o = *opts;
    if (o.max_iterations < 1 || !(o.max_correspondence_distance > 0.0) || !(o.voxel_size > 0.0))
      fail(ErrorCode::InvalidArgument, "invalid scan match options");

    lidar::SmoothnessParams sp;
    sp.max_features_per_class = o.feature_cap;
    lidar::Keyframe kf;
    kf.features = lidar::extract_features(map->cloud.points, sp, 0);
    kf.pose = Transform3D::identity();
    const lidar::VoxelFeatureMap vmap =
        lidar::build_voxel_map(std::span<const lidar::Keyframe>(&kf, 1), 1, o.voxel_size);
    const lidar::FeatureSet features = lidar::extract_features(scan->cloud.points, sp, 1);

    lidar::ScanMatchOptions so;
    so.max_iterations = o.max_iterations;
    so.max_correspondence_distance = o.max_correspondence_distance;
    const Transform3D init =
        initial ? Transform3D::from_euler(from_c(*initial)) : Transform3D::identity();
    const lidar::ScanMatchResult r = lidar::scan_match(features, vmap, init, so);
    out->transform = to_c(r.transform.to_euler());
    out->converged = r.converged ? 1 : 0;
    out->iterations = r.iterations;
    out->initial_objective = r.objective_history.empty() ? 0.0 : r.objective_history.front();
    out->final_objective = r.objective_history.empty() ? 0.0 : r.objective_history.back();
    out->edge_residuals = r.edge_residuals;
    out->planar_residuals = r.planar_residuals;
    converged = r.converged;
  });
  if (st == SKN_OK && !converged) {
    last_error = "scan matching did not converge";
    return SKN_ERR_NON_CONVERGENCE;
  }
  return st;
}

}  // extern "C"
