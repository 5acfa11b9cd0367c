// Copyright 2026 The asymfb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <string>

#include "asymfb/config.h"

using namespace asymfb;

namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
  return std::any_of(e.problems().begin(), e.problems().end(),
                     [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

ConfigError error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config was accepted: " << text);
  return ConfigError({});
}

const char* kMinimal = R"({
  "game": "cournot10",
  "N_z": [0, 5],
  "schedule": "exp-a",
  "T": 100,
  "seeds": {"count": 3, "base": 4}
})";

}  // namespace

TEST_CASE("preset game carries the reference constants") {
  const ExperimentConfig cfg = parse_config(kMinimal);
  const Vector a{2, 2, 1.5, 1.8, 2, 1.8, 2, 1.4, 1.8, 2};
  CHECK(cfg.game.quadratic.a == a);
  CHECK(cfg.num_agents() == 10);
  CHECK(cfg.num_zo == std::vector<std::size_t>{0, 5});
  CHECK(cfg.episodes == 100);
  CHECK(cfg.seed_count == 3);
  CHECK(cfg.seed(2) == 6);
  CHECK(cfg.metrics == std::vector<std::string>{"ne_distance"});
  CHECK(cfg.jobs == 1);
}

TEST_CASE("N_z above N is an error naming N_z") {
  const ConfigError e = error_of(R"({"game": "cournot10", "N_z": [11],
    "schedule": "exp-a", "T": 10, "seeds": {"count": 1}})");
  CHECK(mentions(e, "N_z"));
}

TEST_CASE("missing T is an error") {
  const ConfigError e = error_of(R"({"game": "cournot10", "N_z": [1],
    "schedule": "exp-a", "seeds": {"count": 1}})");
  CHECK(mentions(e, "T: missing"));
}

TEST_CASE("unknown keys are rejected") {
  CHECK(mentions(error_of(R"({"game": "cournot10", "N_z": [1], "schedule": "exp-a",
    "T": 10, "seeds": {"count": 1}, "seed": 3})"), "seed: unknown key"));
  CHECK(mentions(error_of(R"({"game": "cournot10", "N_z": [1], "T": 10,
    "seeds": {"count": 1},
    "schedule": {"eta_f": {"coef": 0.6, "t_exp": -1},
                 "eta_z": {"coeff": 0.6, "t_exp": -1},
                 "delta": {"coeff": 0.5, "t_exp": -1}}})"),
                 "schedule.eta_f.coef: unknown key"));
}

TEST_CASE("all violations are reported together") {
  const ConfigError e = error_of(R"({"game": {"type": "quadratic", "a": [1, -2],
    "b": [0, 0], "e": [1, 1]}, "N_z": [3], "schedule": "nope",
    "seeds": {"count": 0}, "metrics": ["speed"]})");
  CHECK(mentions(e, "game.a[1]"));
  CHECK(mentions(e, "N_z[0]"));
  CHECK(mentions(e, "schedule.preset"));
  CHECK(mentions(e, "T: missing"));
  CHECK(mentions(e, "seeds.count"));
  CHECK(mentions(e, "metrics[0]"));
  CHECK(e.problems().size() >= 6);
}

TEST_CASE("risk game needs a sample schedule") {
  const ConfigError e = error_of(R"({"game": "risk-cournot2", "N_z": [1],
    "schedule": "exp-a", "T": 10, "seeds": {"count": 1}})");
  CHECK(mentions(e, "schedule.samples"));
  CHECK_NOTHROW(parse_config(R"({"game": "risk-cournot2", "N_z": [0],
    "schedule": "exp-a", "T": 10, "seeds": {"count": 1}})"));
}

TEST_CASE("inline game and schedule") {
  const ExperimentConfig cfg = parse_config(R"({
    "name": "tiny",
    "game": {"type": "quadratic", "a": [1, 1], "b": [0.1, 0.1], "e": [1, 1],
             "upper": 2},
    "N": 2,
    "N_z": 1,
    "schedule": {"name": "slow",
                 "eta_f": {"coeff": 0.3, "t_exp": -1},
                 "eta_z": {"coeff": 0.3, "t_exp": -1},
                 "delta": {"coeff": 0.2, "t_exp": -0.5}},
    "T": 50,
    "seeds": {"count": 2},
    "metrics": ["ne_distance", "regret"],
    "trajectory_stride": 5
  })");
  CHECK(cfg.game.preset.empty());
  CHECK(cfg.game.quadratic.upper == 2.0);
  CHECK(cfg.schedule.name == "slow");
  CHECK(cfg.schedule.delta.t_exp == -0.5);
  CHECK(cfg.wants("regret"));
  CHECK(cfg.trajectory_stride == 5);
  CHECK(mentions(error_of(R"({"game": {"type": "quadratic", "a": [1, 1],
    "b": [0.1, 0.1], "e": [1, 1]}, "N": 3, "N_z": [0], "schedule": "exp-a",
    "T": 5, "seeds": {"count": 1}})"), "N: is 3"));
}

TEST_CASE("canonical json round-trips") {
  const ExperimentConfig cfg = parse_config(kMinimal);
  const std::string text = config_to_json(cfg);
  const ExperimentConfig back = parse_config(text);
  CHECK(config_to_json(back) == text);
  CHECK(config_to_json(back, false) == config_to_json(cfg, false));

  ExperimentConfig other = cfg;
  other.jobs = 8;
  other.output_dir = "/tmp/x";
  CHECK(config_to_json(other, false) == config_to_json(cfg, false));
  other.base_seed = 99;
  CHECK(config_to_json(other, false) != config_to_json(cfg, false));
}

TEST_CASE("experiment presets") {
  CHECK(experiment_preset_names() == std::vector<std::string>{"fig1", "fig2", "fig4"});
  const auto fig1 = *experiment_preset("fig1");
  CHECK(fig1.num_zo == std::vector<std::size_t>{0, 2, 5, 8, 10});
  CHECK(fig1.episodes == 10000);
  CHECK(fig1.seed_count == 50);
  CHECK(fig1.schedule.name == "exp-a");
  const auto fig4 = *experiment_preset("fig4");
  CHECK(fig4.game.kind == GameKind::kRisk);
  CHECK(fig4.episodes == 5000);
  CHECK(fig4.schedule.samples.has_value());
  CHECK_FALSE(experiment_preset("fig9").has_value());
}

TEST_CASE("syntax errors and unreadable files") {
  CHECK_THROWS_AS(parse_config("{\"game\": "), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}
