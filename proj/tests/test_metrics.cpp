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
#include "skidnav/metrics.hpp"
#include "skidnav/scenario.hpp"
#include "skidnav/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace skidnav;
using namespace skidnav::metrics;

namespace {

TrackingSeries first_order(double target, double time_constant, double duration, double dt) {
  TrackingSeries s;
  for (int k = 0; k * dt <= duration + 1e-12; ++k) {
    const double t = k * dt;
    const double v = target * (1.0 - std::exp(-t / time_constant));
    s.t.push_back(t);
    s.v.push_back(v);
    s.target.push_back(target);
    s.e.push_back(v - target);
    s.o.push_back(10.0);
    s.u_safe.push_back(0.0);
  }
  return s;
}

sim::RunRecord first_order_record(double dt) {
  sim::RunRecord rec;
  for (int k = 0; k * dt <= 10.0 + 1e-12; ++k) {
    sim::Sample smp;
    smp.t = k * dt;
    for (sim::SideSample* d : {&smp.right, &smp.left}) {
      d->target = 0.4;
      d->v = 0.4 * (1.0 - std::exp(-smp.t));
      d->out.e = d->v - 0.4;
      d->out.o = 1.0;
    }
    rec.samples.push_back(smp);
  }
  return rec;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("perfect tracking") {
    TrackingSeries s = first_order(0.38, 1.0, 5.0, 0.01);
    for (std::size_t i = 0; i < s.v.size(); ++i) {
      s.v[i] = 0.38;
      s.e[i] = 0.0;
    }
    const auto m = compute_metrics(s, {}, {0.0, 5.0}, {}, 0.0);
    CHECK(m.settling_time == 0.0);
    CHECK(m.overshoot == 0.0);
    CHECK(m.steady_state_error == 0.0);
    CHECK(m.funnel_violations == 0);
  }

  TEST_CASE("first-order settling time") {
    const auto s = first_order(0.4, 1.0, 10.0, 0.001);
    const auto m = compute_metrics(s, {}, {0.0, 10.0}, {}, 0.0);
    CHECK(std::abs(m.settling_time - (-std::log(0.05))) <= 0.002);
    CHECK(std::abs(m.settling_time_alt - (-std::log(0.02))) <= 0.002);
    CHECK(m.overshoot == 0.0);
  }

  TEST_CASE("overshoot and never-settled series") {
    TrackingSeries s = first_order(0.5, 1.0, 4.0, 0.01);
    s.v[200] = 0.55;
    auto m = compute_metrics(s, {}, {0.0, 4.0}, {}, 0.0);
    CHECK(m.overshoot == doctest::Approx(10.0));
    s.v.back() = 0.0;
    m = compute_metrics(s, {}, {0.0, 4.0}, {}, 0.0);
    CHECK(std::isinf(m.settling_time));
  }

  TEST_CASE("settling is measured from the last reference change") {
    TrackingSeries s = first_order(0.2, 0.5, 6.0, 0.01);
    for (std::size_t i = 300; i < s.t.size(); ++i) {
      const double tt = s.t[i] - 3.0;
      s.target[i] = 0.4;
      s.v[i] = 0.2 + 0.2 * (1.0 - std::exp(-tt / 0.5));
    }
    const auto m = compute_metrics(s, {}, {0.0, 6.0}, {}, 0.0);
    CHECK(m.transient_start == doctest::Approx(3.0));
    CHECK(m.settling_time == doctest::Approx(0.5 * std::log(0.2 / (0.05 * 0.4))).epsilon(0.02));
  }

  TEST_CASE("violation counters") {
    TrackingSeries s = first_order(0.4, 1.0, 1.0, 0.1);
    s.e[3] = 10.0;
    s.u_safe[4] = 1300.0;
    s.u_safe[5] = -1250.0;
    const auto m = compute_metrics(s, {}, {0.0, 1.0}, {}, 0.0);
    CHECK(m.funnel_violations == 1);
    CHECK(m.saturation_violations == 1);
    CHECK(m.max_abs_u_safe == 1300.0);
  }

  TEST_CASE("steady-state error uses the trailing samples") {
    TrackingSeries s = first_order(0.4, 1.0, 0.9, 0.1);
    REQUIRE(s.t.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) s.e[i] = i < 8 ? 1.0 : (i == 8 ? -0.1 : 0.3);
    const auto m = compute_metrics(s, {}, {0.0, 0.9}, {}, 0.0);
    CHECK(m.steady_state_error == doctest::Approx(0.2));
  }

  TEST_CASE("empty inputs") {
    CHECK_THROWS_AS(compute_metrics(TrackingSeries{}, {}, {0.0, 1.0}, {}, 0.0), Error);
    try {
      compute_metrics(sim::RunRecord{}, sim::MetricsOptions{});
      FAIL("expected EmptyRecord");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyRecord);
    }
  }

  TEST_CASE("downsampling barely moves the metrics") {
    const auto full = compute_metrics(first_order_record(0.001), sim::MetricsOptions{});
    const auto coarse = compute_metrics(downsample(first_order_record(0.001), 10), sim::MetricsOptions{});
    CHECK(std::abs(coarse.right.settling_time - full.right.settling_time) <= 0.05 * full.right.settling_time);
    CHECK(std::abs(coarse.left.steady_state_error - full.left.steady_state_error) <=
          0.05 * full.left.steady_state_error + 1e-12);
  }

  TEST_CASE("window ends at the first slip onset") {
    sim::RunRecord rec = first_order_record(0.01);
    rec.first_slip_onset = 4.0;
    const auto w = resolve_window(rec, {});
    CHECK(w.end < 4.0);
    CHECK(w.end > 3.999);
    rec.first_slip_onset = -1.0;
    CHECK(resolve_window(rec, {}).end == rec.samples.back().t);
  }

  TEST_CASE("circle fits") {
    std::vector<Vec2> exact;
    for (int i = 0; i < 50; ++i) {
      const double a = 2 * std::numbers::pi * i / 50;
      exact.emplace_back(1 + 5 * std::cos(a), -2 + 5 * std::sin(a));
    }
    const auto f = fit_circle(exact, 5.0);
    CHECK(f.radius == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(f.error_percent < 1e-9);
    CHECK((f.center - Vec2(1, -2)).norm() < 1e-10);

    std::mt19937_64 rng(14);
    std::normal_distribution<double> noise(0.0, 0.1);
    std::vector<Vec2> noisy;
    for (int i = 0; i < 400; ++i) {
      const double a = 2 * std::numbers::pi * synthetic::unit_uniform(rng);
      const double r = 5 + noise(rng);
      noisy.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    CHECK(std::abs(fit_circle(noisy, 5.0).radius - 5.0) <= 0.1);

    std::vector<Vec2> line;
    for (int i = 0; i < 20; ++i) line.emplace_back(0.3 * i, 0.1 * i);
    try {
      fit_circle(line, 5.0);
      FAIL("expected DegenerateFit");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateFit);
    }
  }

  TEST_CASE("lyapunov values") {
    CHECK(lyapunov_value(0.0, 0.3, 0.0) == 0.0);
    CHECK(lyapunov_value(0.15, 0.3, 0.0) == doctest::Approx(0.5 * std::log(0.09 / 0.0675)).epsilon(1e-14));
    CHECK(lyapunov_value(0.15, 0.3, 0.0) == doctest::Approx(0.1438).epsilon(1e-3));
    CHECK(lyapunov_value(0.0, 0.3, 0.2) == doctest::Approx(0.02));
    try {
      lyapunov_value(0.3, 0.3, 0.0);
      FAIL("expected BreachInTrace");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BreachInTrace);
    }
  }

  TEST_CASE("envelope fit recovers a pure exponential") {
    std::vector<double> t, v;
    for (int k = 0; k <= 4000; ++k) {
      t.push_back(0.01 * k);
      v.push_back(2.0 * std::exp(-0.3 * t.back()) + 0.01);
    }
    const auto fit = fit_envelope(t, v, 0.25);
    CHECK(fit.holds);
    CHECK(fit.residual == doctest::Approx(v[3000]));
    // The residual is taken from the tail, so the fitted rate runs a little fast.
    CHECK(fit.rho > 0.27);
    CHECK(fit.rho < 0.36);
    CHECK(fit.c_bar >= 0.99);
    for (std::size_t i = 0; i < t.size(); ++i)
      CHECK(v[i] <= fit.amplitude * std::exp(-fit.rho * t[i]) + fit.residual + 1e-12);
  }
}
