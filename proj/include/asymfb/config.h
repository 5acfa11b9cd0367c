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

#ifndef ASYMFB_CONFIG_H_
#define ASYMFB_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "asymfb/games.h"
#include "asymfb/schedules.h"

namespace asymfb {

// Every problem found in a config, one message per violation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

enum class GameKind { kQuadratic, kRisk };

struct GameConfig {
  std::string preset;  // empty for an inline spec
  GameKind kind = GameKind::kQuadratic;
  QuadraticGameSpec quadratic;  // used when kind == kQuadratic
  RiskCournotSpec risk;         // used when kind == kRisk

  std::size_t num_agents() const;
  GameInstance build() const;
};

struct ExperimentConfig {
  std::string name;
  GameConfig game;
  std::vector<std::size_t> num_zo;  // sweep over N_z
  ScheduleSet schedule;
  std::size_t episodes = 0;
  std::size_t seed_count = 0;
  std::uint64_t base_seed = 0;
  std::vector<std::string> metrics;  // ne_distance, regret, group_errors
  std::string output_dir;            // empty: use the default
  std::size_t jobs = 1;
  std::size_t trajectory_stride = 1;

  std::size_t num_agents() const { return game.num_agents(); }
  bool wants(const std::string& metric) const;
  std::uint64_t seed(std::size_t k) const { return base_seed + k; }
};

// Strict JSON parsing: unknown keys, wrong types and out-of-range values
// are all collected and thrown together as a ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical JSON of the config; parse_config accepts it back. Without
// `include_runtime` the fields that cannot change results (output_dir,
// jobs) are left out.
std::string config_to_json(const ExperimentConfig& config,
                           bool include_runtime = true);

// Embedded experiment presets fig1, fig2, fig4.
std::optional<ExperimentConfig> experiment_preset(const std::string& name);
std::vector<std::string> experiment_preset_names();
std::string experiment_preset_source(const std::string& name);

}  // namespace asymfb

#endif  // ASYMFB_CONFIG_H_
