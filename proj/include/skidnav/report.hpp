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
#ifndef SKIDNAV_REPORT_HPP
#define SKIDNAV_REPORT_HPP

#include "skidnav/metrics.hpp"
#include "skidnav/scenario.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace skidnav::report {

/// Shortest round-trip decimal form.
std::string format_double(double v);

// CSVs start with a `# config_hash=<hex> seed=<n>` line.
void write_trajectory_csv(std::ostream& out, const sim::RunRecord& rec, std::size_t decimation);
void write_control_csv(std::ostream& out, const sim::RunRecord& rec);

nlohmann::json metadata_json(const sim::ScenarioConfig& cfg, const sim::RunRecord& rec);
nlohmann::json metrics_json(const sim::ScenarioConfig& cfg, const sim::RunRecord& rec);

struct ArtifactPaths {
  std::filesystem::path trajectory;
  std::filesystem::path control;
  std::filesystem::path metadata;
  std::filesystem::path metrics;
};

/// trajectory.csv, control.csv, metadata.json and metrics.json under `dir`.
ArtifactPaths write_run_artifacts(const std::filesystem::path& dir, const sim::ScenarioConfig& cfg,
                                  const sim::RunRecord& rec);

struct Comparison {
  nlohmann::json json;
  std::string table;
};

/// Runs the scenario once per controller kind on the same config and seed.
Comparison compare(const sim::ScenarioConfig& cfg);

}  // namespace skidnav::report

#endif  // SKIDNAV_REPORT_HPP
