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
// Grid search for the PID baseline gains on a scenario: lowest mean
// steady-state error over both sides with overshoot <= 5% on each side.
// The winning gains are printed as a JSON "pid" block to paste into the config.

#include "skidnav/metrics.hpp"
#include "skidnav/scenario.hpp"

#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <limits>

using namespace skidnav;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: pid_tune <config.json>\n";
    return 2;
  }
  sim::ScenarioConfig cfg = sim::load_config(argv[1]);
  cfg.controller_kind = sim::ControllerKind::Pid;

  const double kps[] = {250, 500, 1000, 2000, 3000, 5000, 8000, 12000, 20000};
  const double kis[] = {0, 250, 500, 1000, 2000, 4000, 8000, 16000, 32000};
  const double kds[] = {0, 5, 20, 50};

  double best = std::numeric_limits<double>::infinity();
  pid::PidGains winner;
  for (double kp : kps)
    for (double ki : kis)
      for (double kd : kds) {
        cfg.pid.kp = kp;
        cfg.pid.ki = ki;
        cfg.pid.kd = kd;
        const sim::RunRecord rec = sim::run_scenario(cfg);
        const metrics::RunMetrics m = metrics::compute_metrics(rec, cfg.metrics);
        if (m.right.overshoot > 5.0 || m.left.overshoot > 5.0) continue;
        const double sse = 0.5 * (m.right.steady_state_error + m.left.steady_state_error);
        if (sse < best) {
          best = sse;
          winner = cfg.pid;
          std::fprintf(stderr, "kp %g ki %g kd %g  sse %.5f  os %.2f/%.2f  settle %.3f/%.3f\n", kp,
                       ki, kd, sse, m.right.overshoot, m.left.overshoot, m.right.settling_time,
                       m.left.settling_time);
        }
      }
  if (!std::isfinite(best)) {
    std::cerr << "no gains met the overshoot constraint\n";
    return 1;
  }
  const nlohmann::json out = {{"pid", {{"kp", winner.kp}, {"ki", winner.ki}, {"kd", winner.kd}}}};
  std::cout << out.dump(2) << '\n';
  return 0;
}
