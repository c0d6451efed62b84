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
#ifndef SKIDNAV_METRICS_HPP
#define SKIDNAV_METRICS_HPP

#include "skidnav/geometry.hpp"
#include "skidnav/plant_sim.hpp"
#include "skidnav/scenario.hpp"

#include <cstddef>
#include <vector>

namespace skidnav::metrics {

/// One side of a run as plain columns.
struct TrackingSeries {
  std::vector<double> t;
  std::vector<double> v;       // measured
  std::vector<double> target;  // planner reference
  std::vector<double> e;       // v - shaped reference
  std::vector<double> o;
  std::vector<double> u_safe;
};

TrackingSeries side_series(const sim::RunRecord& rec, plant::Side side);

struct StabilityMetrics {
  double settling_time = 0.0;  // infinity when never settled inside the window
  double settling_time_alt = 0.0;
  double overshoot = 0.0;  // percent
  double steady_state_error = 0.0;
  std::size_t funnel_violations = 0;
  std::size_t saturation_violations = 0;
  double max_abs_u_safe = 0.0;
  double transient_start = 0.0;  // last reference change inside the window
  double window_end = 0.0;
};

struct MetricsWindow {
  double start = 0.0;
  double end = 0.0;
};

/// Settling and overshoot are taken against the planner reference inside
/// `window`; steady-state error is mean |e| over the trailing tail fraction.
/// A sample violates the funnel when o^2 - e^2 <= guard.
StabilityMetrics compute_metrics(const TrackingSeries& s, const sim::MetricsOptions& opts,
                                 const MetricsWindow& window, const raid::ActuatorLimits& limits,
                                 double guard);

struct RunMetrics {
  StabilityMetrics right;
  StabilityMetrics left;
  bool estopped = false;
  std::size_t phi_hat_clamp_events = 0;
};

/// Resolves the window from the options (negative end: first slip onset,
/// else end of record).
MetricsWindow resolve_window(const sim::RunRecord& rec, const sim::MetricsOptions& opts);
RunMetrics compute_metrics(const sim::RunRecord& rec, const sim::MetricsOptions& opts);

/// Keeps every `factor`-th sample.
sim::RunRecord downsample(const sim::RunRecord& rec, std::size_t factor);

struct CircleFit {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;       // algebraic fit
  double mean_radius = 0.0;  // mean distance of the points to the center
  double error_percent = 0.0;
};

/// Least-squares circle through the points; error relative to `nominal`.
CircleFit fit_circle(const std::vector<Vec2>& points, double nominal);
CircleFit trajectory_radius(const sim::RunRecord& rec, double nominal);

/// 0.5 log(o^2 / (o^2 - e^2)) + 0.5 phi_hat^2. Throws BreachInTrace outside the funnel.
double lyapunov_value(double e, double o, double phi_hat);

struct LyapunovTrace {
  std::vector<double> t;
  std::vector<double> right;
  std::vector<double> left;
  std::vector<double> total;
};

LyapunovTrace lyapunov_trace(const sim::RunRecord& rec);

/// V(t) <= c_bar V(t0) exp(-rho (t - t0)) + residual.
struct EnvelopeFit {
  double rho = 0.0;
  double c_bar = 0.0;
  double amplitude = 0.0;  // c_bar V(t0)
  double residual = 0.0;
  double v0 = 0.0;
  bool holds = false;
};

/// residual is the largest V over the trailing `tail_fraction` of samples;
/// rho is a log-linear fit to the running upper envelope of V - residual;
/// c_bar is the smallest factor for which the bound covers every sample.
EnvelopeFit fit_envelope(const std::vector<double>& t, const std::vector<double>& v,
                         double tail_fraction);

}  // namespace skidnav::metrics

#endif  // SKIDNAV_METRICS_HPP
