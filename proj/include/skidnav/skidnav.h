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
/* C interface to the skidnav library. All handles are opaque; every call
   that can fail returns an skn_status and leaves a message retrievable with
   skn_last_error() on the calling thread. */
#ifndef SKIDNAV_SKIDNAV_H
#define SKIDNAV_SKIDNAV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SKN_API __declspec(dllexport)
#else
#define SKN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum skn_status {
  SKN_OK = 0,
  SKN_ERR_INVALID_ARGUMENT = 1,
  SKN_ERR_CONFIG = 2,
  SKN_ERR_FUNNEL_BREACH = 3,
  SKN_ERR_NON_CONVERGENCE = 4,
  SKN_ERR_INSUFFICIENT_CORRESPONDENCES = 5,
  SKN_ERR_IO = 6,
  SKN_ERR_EMPTY_SCAN = 7,
  SKN_ERR_DEGENERATE = 8,
  SKN_ERR_INTERNAL = 99
} skn_status;

typedef enum skn_side { SKN_SIDE_RIGHT = 0, SKN_SIDE_LEFT = 1 } skn_side;

typedef enum skn_controller_kind { SKN_CONTROLLER_RAID = 0, SKN_CONTROLLER_PID = 1 } skn_controller_kind;

SKN_API const char* skn_version(void);
SKN_API const char* skn_status_name(skn_status status);
/* Message of the last failed call on this thread; "" if none. */
SKN_API const char* skn_last_error(void);
SKN_API void skn_string_free(char* s);

/* ---- configuration ---- */
typedef struct skn_config skn_config;

SKN_API skn_status skn_config_load(const char* path, skn_config** out);
/* base_dir resolves relative file references; may be NULL (current directory). */
SKN_API skn_status skn_config_parse(const char* json_text, const char* base_dir, skn_config** out);
SKN_API void skn_config_free(skn_config* cfg);
SKN_API skn_status skn_config_set_seed(skn_config* cfg, uint64_t seed);
SKN_API skn_status skn_config_set_duration(skn_config* cfg, double seconds);
SKN_API skn_status skn_config_set_controller(skn_config* cfg, skn_controller_kind kind);
/* 16 hex digits, owned by the handle. */
SKN_API const char* skn_config_hash(const skn_config* cfg);
/* Canonical effective configuration as JSON; free with skn_string_free. */
SKN_API skn_status skn_config_to_json(const skn_config* cfg, char** out);

/* ---- scenario runs ---- */
typedef struct skn_run skn_run;

typedef struct skn_metrics {
  double settling_time; /* infinity when not settled */
  double settling_time_alt;
  double overshoot_percent;
  double steady_state_error;
  double max_abs_u_safe;
  uint64_t funnel_violations;
  uint64_t saturation_violations;
} skn_metrics;

/* A funnel breach is not a call failure: the run completes with the
   emergency stop latched, see skn_run_estopped. */
SKN_API skn_status skn_run_scenario(const skn_config* cfg, skn_run** out);
SKN_API void skn_run_free(skn_run* run);
SKN_API size_t skn_run_sample_count(const skn_run* run);
SKN_API int skn_run_estopped(const skn_run* run);
SKN_API uint64_t skn_run_phi_hat_clamp_events(const skn_run* run);
/* Returns SKN_ERR_DEGENERATE with an empty record. */
SKN_API skn_status skn_run_metrics(const skn_run* run, skn_side side, skn_metrics* out);
/* Writes trajectory.csv, control.csv, metadata.json and metrics.json. */
SKN_API skn_status skn_run_write_artifacts(const skn_run* run, const char* out_dir);
/* metrics.json contents; free with skn_string_free. */
SKN_API skn_status skn_run_metrics_json(const skn_run* run, char** out);

/* RAID and PID on the same scenario. Writes compare.json into out_dir when
   it is not NULL; the text table is returned in *table (free with
   skn_string_free) when table is not NULL. */
SKN_API skn_status skn_compare(const skn_config* cfg, const char* out_dir, char** table);

/* ---- single-side controller ---- */
typedef struct skn_controller skn_controller;

typedef struct skn_control_output {
  double u;
  double u_raw;
  double u_safe;
  double lambda;
  double lambda_bar;
  double e;
  double o;
  double phi_hat;
  int estop;
} skn_control_output;

/* Controller gains, funnel, limits and network from the config. */
SKN_API skn_status skn_controller_create(const skn_config* cfg, skn_controller** out);
SKN_API void skn_controller_free(skn_controller* ctl);
SKN_API skn_status skn_controller_step(skn_controller* ctl, double v_measured, double v_bar,
                                       double v_bar_rate, double t, double dt,
                                       skn_control_output* out);
SKN_API skn_status skn_saturate(double lower, double upper, double u_raw, double* lambda,
                                double* lambda_bar, double* u_safe);

/* ---- point clouds and scan matching ---- */
typedef struct skn_pose6 {
  double tx, ty, tz;
  double roll, pitch, yaw; /* radians, R = Rz(yaw) Ry(pitch) Rx(roll) */
} skn_pose6;

typedef struct skn_cloud skn_cloud;

SKN_API skn_status skn_cloud_load_csv(const char* path, skn_cloud** out);
SKN_API skn_status skn_cloud_save_csv(const skn_cloud* cloud, const char* path);
/* Ordered synthetic scan of walls, a tilted patch and pole features. */
SKN_API skn_status skn_cloud_generate(uint64_t seed, size_t n_points, skn_cloud** out);
/* Applies pose (or its inverse when inverse != 0) to every point. */
SKN_API skn_status skn_cloud_transform(const skn_cloud* cloud, const skn_pose6* pose, int inverse,
                                       skn_cloud** out);
SKN_API size_t skn_cloud_size(const skn_cloud* cloud);
SKN_API void skn_cloud_free(skn_cloud* cloud);

typedef struct skn_scan_match_options {
  int max_iterations;
  double max_correspondence_distance;
  double voxel_size;
  size_t feature_cap; /* per class; 0 keeps every feature */
} skn_scan_match_options;

SKN_API void skn_scan_match_default_options(skn_scan_match_options* opts);

typedef struct skn_scan_match_result {
  skn_pose6 transform; /* maps scan points into the map frame */
  int converged;
  int iterations;
  double initial_objective;
  double final_objective;
  size_t edge_residuals;
  size_t planar_residuals;
} skn_scan_match_result;

/* Features are extracted from both clouds; the map cloud's features form a
   single keyframe at identity. Returns SKN_ERR_NON_CONVERGENCE (result still
   filled) when the solver did not converge. opts may be NULL. */
SKN_API skn_status skn_scan_match(const skn_cloud* map, const skn_cloud* scan,
                                  const skn_pose6* initial, const skn_scan_match_options* opts,
                                  skn_scan_match_result* out);

#ifdef __cplusplus
}
#endif

#endif /* SKIDNAV_SKIDNAV_H */
