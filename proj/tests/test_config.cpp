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

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

using namespace skidnav;
using namespace skidnav::sim;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(SKIDNAV_SOURCE_DIR) / "configs";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text, kConfigs);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("shipped configs load") {
    for (const char* name : {"nominal.json", "disturbance_free.json", "breach.json"}) {
      const ScenarioConfig cfg = load_config(kConfigs / name);
      CHECK_NOTHROW(cfg.validate());
      CHECK(cfg.path.waypoints.size() == 8);
    }
    const ScenarioConfig nominal = load_config(kConfigs / "nominal.json");
    CHECK(nominal.seed == 7);
    CHECK(nominal.plant.slip_events.size() == 2);
    CHECK(nominal.controller.pump.feedforward_gain() == doctest::Approx(3000.0));
    CHECK(nominal.controller.feedforward_mode == raid::FeedforwardMode::Retain);
  }

  TEST_CASE("non-positive o_b reports its line") {
    const std::string text = read_file(kConfigs / "nominal.json");
    const std::string msg = error_of(replace(text, "\"o_b\": 0.11", "\"o_b\": 0.0"));
    CHECK(msg.find("config line 20") != std::string::npos);
    CHECK(msg.find("o_b") != std::string::npos);
  }

  TEST_CASE("unknown keys and bad values are rejected") {
    const std::string text = read_file(kConfigs / "nominal.json");
    std::string msg = error_of(replace(text, "\"beta\": 1.2", "\"betta\": 1.2"));
    CHECK(msg.find("config line 15") != std::string::npos);
    CHECK(msg.find("unknown key") != std::string::npos);
    msg = error_of(replace(text, "\"kappa\": 5.2", "\"kappa\": \"fast\""));
    CHECK(msg.find("config line 16") != std::string::npos);
    msg = error_of(replace(text, "\"side\": \"both\"", "\"side\": \"top\""));
    CHECK(msg.find("config line") != std::string::npos);
    msg = error_of(replace(text, "\"seed\": 7,", "\"seed\": 7"));
    CHECK(msg.find("invalid JSON") != std::string::npos);
    msg = error_of(replace(text, "\"delta_add\": -0.05 },", "\"delta_add\": -0.5 },"));
    CHECK(msg.find("delta_cap") != std::string::npos);
  }

  TEST_CASE("inline waypoints and defaults") {
    const std::string text = R"({
      "name": "mini",
      "path": { "waypoints": [[1, 0], [2, 0]] }
    })";
    const ScenarioConfig cfg = parse_config(text, ".");
    CHECK(cfg.path.waypoints.size() == 2);
    CHECK(cfg.duration == 60.0);
    CHECK(cfg.controller.beta == 1.2);
    CHECK(error_of(R"({"name": "x"})").find("path") != std::string::npos);
  }

  TEST_CASE("hash follows the effective config") {
    ScenarioConfig a = load_config(kConfigs / "nominal.json");
    ScenarioConfig b = a;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.seed = 8;
    CHECK(config_hash(a) != config_hash(b));
    const ScenarioConfig again = parse_config(to_json(a).dump(), kConfigs);
    CHECK(config_hash(again) == config_hash(a));
  }

  TEST_CASE("missing file") {
    try {
      load_config(kConfigs / "does_not_exist.json");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Config);
    }
  }
}

TEST_SUITE("scenario") {
  TEST_CASE("zero duration gives an empty record") {
    ScenarioConfig cfg = load_config(kConfigs / "nominal.json");
    cfg.duration = 0.0;
    const RunRecord rec = run_scenario(cfg);
    CHECK(rec.samples.empty());
    CHECK(!rec.estopped);
  }

  TEST_CASE("unshaped step breaches at once") {
    const RunRecord rec = run_scenario(load_config(kConfigs / "breach.json"));
    CHECK(rec.estopped);
    CHECK(rec.estop_time == 0.0);
  }

  TEST_CASE("same seed, same record") {
    ScenarioConfig cfg = load_config(kConfigs / "nominal.json");
    cfg.duration = 3.0;
    const RunRecord a = run_scenario(cfg);
    const RunRecord b = run_scenario(cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(a.samples[i].x == b.samples[i].x);
      CHECK(a.samples[i].right.out.u_safe == b.samples[i].right.out.u_safe);
    }
    CHECK(a.rbf_centers == b.rbf_centers);
  }
}
