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
#include "skidnav/metrics.hpp"

#include "skidnav/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace skidnav::metrics {

TrackingSeries side_series(const sim::RunRecord& rec, plant::Side side) {
  if (side == plant::Side::Both) fail(ErrorCode::InvalidArgument, "pick one side");
  TrackingSeries s;
  const std::size_t n = rec.samples.size();
  for (auto* col : {&s.t, &s.v, &s.target, &s.e, &s.o, &s.u_safe}) col->reserve(n);
  for (const sim::Sample& smp : rec.samples) {
    const sim::SideSample& d = side == plant::Side::Right ? smp.right : smp.left;
    s.t.push_back(smp.t);
    s.v.push_back(d.v);
    s.target.push_back(d.target);
    s.e.push_back(d.out.e);
    s.o.push_back(d.out.o);
    s.u_safe.push_back(d.out.u_safe);
  }
  return s;
}

namespace {

bool outside_band(double v, double target, double band) {
  return std::abs(v - target) > band * std::abs(target);
}

double settling_after(const TrackingSeries& s, std::size_t first, std::size_t last, double t_change,
                      double band) {
  for (std::size_t i = last + 1; i-- > first;) {
    if (outside_band(s.v[i], s.target[i], band)) {
      if (i == last) return std::numeric_limits<double>::infinity();
      return s.t[i + 1] - t_change;
    }
  }
  return s.t[first] - t_change;
}

}  // namespace

StabilityMetrics compute_metrics(const TrackingSeries& s, const sim::MetricsOptions& opts,
                                 const MetricsWindow& window, const raid::ActuatorLimits& limits,
                                 double guard) {
  const std::size_t n = s.t.size();
  if (n == 0) fail(ErrorCode::EmptyRecord, "record has no samples");
  if (!(opts.band > 0.0 && opts.band < 1.0)) fail(ErrorCode::InvalidArgument, "band must be in (0, 1)");
  StabilityMetrics m;

  for (std::size_t i = 0; i < n; ++i) {
    if (s.o[i] * s.o[i] - s.e[i] * s.e[i] <= guard) ++m.funnel_violations;
    if (s.u_safe[i] > limits.upper || s.u_safe[i] < limits.lower) ++m.saturation_violations;
    m.max_abs_u_safe = std::max(m.max_abs_u_safe, std::abs(s.u_safe[i]));
  }

  const auto tail = static_cast<std::size_t>(
      std::ceil(opts.tail_fraction * static_cast<double>(n)));
  const std::size_t tail_start = n - std::clamp<std::size_t>(tail, 1, n);
  double sum = 0.0;
  for (std::size_t i = tail_start; i < n; ++i) sum += std::abs(s.e[i]);
  m.steady_state_error = sum / static_cast<double>(n - tail_start);

  const auto lo = static_cast<std::size_t>(
      std::lower_bound(s.t.begin(), s.t.end(), window.start) - s.t.begin());
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(s.t.begin(), s.t.end(), window.end) - s.t.begin());
  if (lo >= hi) fail(ErrorCode::EmptyRecord, "no samples inside the transient window");
  const std::size_t last = hi - 1;
  m.window_end = s.t[last];

  std::size_t change = lo;
  for (std::size_t i = lo + 1; i <= last; ++i)
    if (outside_band(s.target[i], s.target[i - 1], opts.band)) change = i;
  m.transient_start = s.t[change];
  m.settling_time = settling_after(s, change, last, m.transient_start, opts.band);
  m.settling_time_alt = settling_after(s, change, last, m.transient_start, opts.alt_band);

  double peak = 0.0;
  for (std::size_t i = lo; i <= last; ++i) {
    const double ref = s.target[i];
    if (std::abs(ref) < 1e-9) continue;
    peak = std::max(peak, (s.v[i] - ref) * (ref > 0.0 ? 1.0 : -1.0) / std::abs(ref));
  }
  m.overshoot = 100.0 * peak;
  return m;
}

MetricsWindow resolve_window(const sim::RunRecord& rec, const sim::MetricsOptions& opts) {
  if (rec.samples.empty()) fail(ErrorCode::EmptyRecord, "record has no samples");
  MetricsWindow w{opts.window_start, opts.window_end};
  if (w.end < 0.0) w.end = rec.first_slip_onset > opts.window_start ? rec.first_slip_onset
                                                                     : rec.samples.back().t;
  // The window end is exclusive of a slip onset sample.
  if (opts.window_end < 0.0 && rec.first_slip_onset > opts.window_start)
    w.end = std::nextafter(w.end, -std::numeric_limits<double>::infinity());
  return w;
}

RunMetrics compute_metrics(const sim::RunRecord& rec, const sim::MetricsOptions& opts) {
  const MetricsWindow w = resolve_window(rec, opts);
  RunMetrics m;
  m.right = compute_metrics(side_series(rec, plant::Side::Right), opts, w, rec.limits, rec.guard);
  m.left = compute_metrics(side_series(rec, plant::Side::Left), opts, w, rec.limits, rec.guard);
  m.estopped = rec.estopped;
  m.phi_hat_clamp_events = rec.phi_hat_clamp_events;
  return m;
}

sim::RunRecord downsample(const sim::RunRecord& rec, std::size_t factor) {
  if (factor == 0) fail(ErrorCode::InvalidArgument, "downsample factor must be >= 1");
  sim::RunRecord out = rec;
  out.samples.clear();
  for (std::size_t i = 0; i < rec.samples.size(); i += factor) out.samples.push_back(rec.samples[i]);
  return out;
}

CircleFit fit_circle(const std::vector<Vec2>& points, double nominal) {
  if (points.size() < 3) fail(ErrorCode::DegenerateFit, "circle fit needs at least 3 points");
  Vec2 mean = Vec2::Zero();
  for (const Vec2& p : points) mean += p;
  mean /= static_cast<double>(points.size());

  Eigen::MatrixXd a(points.size(), 3);
  Eigen::VectorXd b(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec2 q = points[i] - mean;
    a(static_cast<Eigen::Index>(i), 0) = q.x();
    a(static_cast<Eigen::Index>(i), 1) = q.y();
    a(static_cast<Eigen::Index>(i), 2) = 1.0;
    b(static_cast<Eigen::Index>(i)) = -q.squaredNorm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (!(sv(2) > 1e-9 * sv(0))) fail(ErrorCode::DegenerateFit, "points are collinear");
  const Eigen::Vector3d x = svd.solve(b);

  CircleFit fit;
  fit.center = mean + Vec2(-x(0) / 2.0, -x(1) / 2.0);
  const double r2 = x(0) * x(0) / 4.0 + x(1) * x(1) / 4.0 - x(2);
  if (!(r2 > 0.0) || !std::isfinite(r2)) fail(ErrorCode::DegenerateFit, "no real circle fits");
  fit.radius = std::sqrt(r2);
  double sum = 0.0;
  for (const Vec2& p : points) sum += (p - fit.center).norm();
  fit.mean_radius = sum / static_cast<double>(points.size());
  if (nominal > 0.0) fit.error_percent = 100.0 * std::abs(fit.mean_radius - nominal) / nominal;
  return fit;
}

CircleFit trajectory_radius(const sim::RunRecord& rec, double nominal) {
  std::vector<Vec2> pts;
  pts.reserve(rec.samples.size());
  for (const sim::Sample& s : rec.samples) pts.emplace_back(s.x, s.y);
  return fit_circle(pts, nominal);
}

double lyapunov_value(double e, double o, double phi_hat) {
  const double gap = o * o - e * e;
  if (!(gap > 0.0)) fail(ErrorCode::BreachInTrace, "error outside the funnel");
  return 0.5 * std::log(o * o / gap) + 0.5 * phi_hat * phi_hat;
}

LyapunovTrace lyapunov_trace(const sim::RunRecord& rec) {
  LyapunovTrace tr;
  for (const sim::Sample& s : rec.samples) {
    const double r = lyapunov_value(s.right.out.e, s.right.out.o, s.right.out.phi_hat);
    const double l = lyapunov_value(s.left.out.e, s.left.out.o, s.left.out.phi_hat);
    tr.t.push_back(s.t);
    tr.right.push_back(r);
    tr.left.push_back(l);
    tr.total.push_back(r + l);
  }
  return tr;
}

EnvelopeFit fit_envelope(const std::vector<double>& t, const std::vector<double>& v,
                         double tail_fraction) {
  const std::size_t n = v.size();
  if (n == 0 || t.size() != n) fail(ErrorCode::EmptyRecord, "trace is empty");
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
    fail(ErrorCode::InvalidArgument, "tail fraction must be in (0, 1)");
  const auto tail = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))), 1, n);
  const std::size_t tail_start = n - tail;

  EnvelopeFit fit;
  fit.v0 = v[0];
  fit.residual = *std::max_element(v.begin() + static_cast<long>(tail_start), v.end());

  // Running maximum of the excess, taken from the right, is non-increasing in t.
  std::vector<double> upper(tail_start, 0.0);
  double run = 0.0;
  for (std::size_t i = tail_start; i-- > 0;) {
    run = std::max(run, v[i] - fit.residual);
    upper[i] = run;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < tail_start; ++i) {
    if (!(upper[i] > 0.0)) continue;
    const double x = t[i] - t[0];
    const double y = std::log(upper[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom > 0.0) fit.rho = -(static_cast<double>(m) * sxy - sx * sy) / denom;
  }
  fit.rho = std::max(fit.rho, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const double excess = v[i] - fit.residual;
    if (excess > 0.0) fit.amplitude = std::max(fit.amplitude, excess * std::exp(fit.rho * (t[i] - t[0])));
  }
  fit.c_bar = fit.v0 > 0.0 ? fit.amplitude / fit.v0 : 0.0;

  fit.holds = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double bound = fit.amplitude * std::exp(-fit.rho * (t[i] - t[0])) + fit.residual;
    if (v[i] > bound * (1.0 + 1e-12) + 1e-15) fit.holds = false;
  }
  return fit;
}

}  // namespace skidnav::metrics
