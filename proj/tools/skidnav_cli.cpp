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
// skidnav command-line front end. Talks to the library only through skidnav.h.

#include "skidnav/skidnav.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kError = 1, kConfig = 2, kBreach = 3, kNonConvergence = 4 };

int exit_code(skn_status st) {
  switch (st) {
    case SKN_OK: return kOk;
    case SKN_ERR_CONFIG:
    case SKN_ERR_IO:
    case SKN_ERR_INVALID_ARGUMENT: return kConfig;
    case SKN_ERR_FUNNEL_BREACH: return kBreach;
    case SKN_ERR_NON_CONVERGENCE:
    case SKN_ERR_INSUFFICIENT_CORRESPONDENCES:
    case SKN_ERR_EMPTY_SCAN: return kNonConvergence;
    default: return kError;
  }
}

int report(skn_status st) {
  std::cerr << "skidnav: " << skn_status_name(st) << ": " << skn_last_error() << '\n';
  return exit_code(st);
}

struct ConfigHandle {
  skn_config* p = nullptr;
  ~ConfigHandle() { skn_config_free(p); }
};

skn_status load(const std::string& path, std::optional<std::uint64_t> seed, ConfigHandle& h) {
  skn_status st = skn_config_load(path.c_str(), &h.p);
  if (st == SKN_OK && seed) st = skn_config_set_seed(h.p, *seed);
  return st;
}

int cmd_simulate(const std::string& config, const std::string& out_dir,
                 std::optional<std::uint64_t> seed) {
  ConfigHandle cfg;
  if (skn_status st = load(config, seed, cfg); st != SKN_OK) return report(st);
  skn_run* run = nullptr;
  if (skn_status st = skn_run_scenario(cfg.p, &run); st != SKN_OK) return report(st);
  const skn_status st = skn_run_write_artifacts(run, out_dir.c_str());
  const bool breach = skn_run_estopped(run) != 0;
  const size_t n = skn_run_sample_count(run);
  skn_run_free(run);
  if (st != SKN_OK) return report(st);
  std::cout << "config_hash " << skn_config_hash(cfg.p) << " samples " << n << " -> " << out_dir
            << '\n';
  if (breach) {
    std::cerr << "skidnav: funnel breach, emergency stop latched\n";
    return kBreach;
  }
  return kOk;
}

int cmd_compare(const std::string& config, const std::string& out_dir,
                std::optional<std::uint64_t> seed) {
  ConfigHandle cfg;
  if (skn_status st = load(config, seed, cfg); st != SKN_OK) return report(st);
  char* table = nullptr;
  if (skn_status st = skn_compare(cfg.p, out_dir.empty() ? nullptr : out_dir.c_str(), &table);
      st != SKN_OK)
    return report(st);
  std::cout << table;
  skn_string_free(table);
  return kOk;
}

int cmd_scan_match(const std::string& map_path, const std::string& scan_path,
                   const std::vector<double>& init, int max_iterations, size_t feature_cap) {
  skn_cloud* map = nullptr;
  skn_cloud* scan = nullptr;
  skn_status st = skn_cloud_load_csv(map_path.c_str(), &map);
  if (st == SKN_OK) st = skn_cloud_load_csv(scan_path.c_str(), &scan);
  skn_scan_match_result res{};
  if (st == SKN_OK) {
    skn_pose6 guess{};
    if (init.size() == 6) guess = {init[0], init[1], init[2], init[3], init[4], init[5]};
    skn_scan_match_options opts;
    skn_scan_match_default_options(&opts);
    opts.max_iterations = max_iterations;
    opts.feature_cap = feature_cap;
    st = skn_scan_match(map, scan, &guess, &opts, &res);
  }
  skn_cloud_free(map);
  skn_cloud_free(scan);
  if (st != SKN_OK && st != SKN_ERR_NON_CONVERGENCE) return report(st);
  const nlohmann::json out = {{"tx", res.transform.tx},     {"ty", res.transform.ty},
                              {"tz", res.transform.tz},     {"roll", res.transform.roll},
                              {"pitch", res.transform.pitch}, {"yaw", res.transform.yaw}};
  std::cout << out.dump() << '\n';
  if (st != SKN_OK) return report(st);
  return kOk;
}

int cmd_gen_scan(std::uint64_t seed, size_t points, const std::string& out,
                 const std::vector<double>& offset, const std::string& offset_out) {
  skn_cloud* cloud = nullptr;
  skn_status st = skn_cloud_generate(seed, points, &cloud);
  if (st == SKN_OK) st = skn_cloud_save_csv(cloud, out.c_str());
  if (st == SKN_OK && !offset_out.empty()) {
    const skn_pose6 pose{offset[0], offset[1], offset[2], offset[3], offset[4], offset[5]};
    skn_cloud* moved = nullptr;
    // The second cloud is the first one seen from the offset pose, so
    // scan-matching it against the first recovers the offset.
    st = skn_cloud_transform(cloud, &pose, 1, &moved);
    if (st == SKN_OK) st = skn_cloud_save_csv(moved, offset_out.c_str());
    skn_cloud_free(moved);
  }
  skn_cloud_free(cloud);
  return st == SKN_OK ? kOk : report(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skidnav: safety-constrained skid-steer navigation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(skn_version()));

  std::string config;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;

  auto* sim = app.add_subcommand("simulate", "run a scenario and write its artifacts");
  sim->add_option("--config", config, "scenario JSON")->required();
  sim->add_option("--out-dir", out_dir, "artifact directory");
  sim->add_option("--seed", seed, "override the scenario seed");

  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "RAID against the PID baseline on one scenario");
  cmp->add_option("--config", config, "scenario JSON")->required();
  cmp->add_option("--out-dir", cmp_out, "directory for compare.json");
  cmp->add_option("--seed", seed, "override the scenario seed");

  std::string map_path, scan_path;
  std::vector<double> init(6, 0.0);
  int max_iterations = 50;
  size_t feature_cap = 0;
  auto* sm = app.add_subcommand("scan-match", "align a scan cloud to a map cloud");
  sm->add_option("--map", map_path, "map cloud CSV (x,y,z)")->required();
  sm->add_option("--scan", scan_path, "scan cloud CSV (x,y,z)")->required();
  sm->add_option("--init", init, "initial tx ty tz roll pitch yaw")->expected(6);
  sm->add_option("--max-iterations", max_iterations, "Gauss-Newton iteration cap");
  sm->add_option("--feature-cap", feature_cap, "features kept per class, 0 = all");

  std::uint64_t gen_seed = 1;
  size_t points = 600;
  std::string gen_out;
  std::vector<double> offset;
  std::string offset_out;
  auto* gen = app.add_subcommand("gen-scan", "write a synthetic ordered scan");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--points", points, "point count");
  gen->add_option("--out", gen_out, "output CSV")->required();
  auto* off = gen->add_option("--offset", offset, "tx ty tz roll pitch yaw")->expected(6);
  gen->add_option("--offset-out", offset_out, "CSV of the scan seen from --offset")->needs(off);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  if (*sim) return cmd_simulate(config, out_dir, seed);
  if (*cmp) return cmd_compare(config, cmp_out, seed);
  if (*sm) return cmd_scan_match(map_path, scan_path, init, max_iterations, feature_cap);
  if (*gen) {
    if (!offset_out.empty() && offset.size() != 6) {
      std::cerr << "skidnav: --offset-out needs --offset\n";
      return kConfig;
    }
    return cmd_gen_scan(gen_seed, points, gen_out, offset, offset_out);
  }
  return kError;
}
