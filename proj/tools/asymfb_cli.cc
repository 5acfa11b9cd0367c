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

// Command-line front end: run, validate, presets, report.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "asymfb/config.h"
#include "asymfb/experiment.h"
#include "asymfb/games.h"
#include "asymfb/schedules.h"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;
constexpr const char* kOutEnv = "ASYMFB_OUT_DIR";

struct Source {
  std::string positional;
  std::string config;
  std::string preset;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("config_file", src.positional, "Experiment config (JSON)");
  cmd->add_option("--config", src.config, "Experiment config (JSON)");
  cmd->add_option("--preset", src.preset, "Embedded experiment preset");
}

asymfb::ExperimentConfig load(const Source& src) {
  const int given = !src.positional.empty() + !src.config.empty() +
                    !src.preset.empty();
  if (given != 1) {
    throw asymfb::ConfigError(
        {"give exactly one of <config>, --config PATH or --preset NAME"});
  }
  if (!src.preset.empty()) {
    auto cfg = asymfb::experiment_preset(src.preset);
    if (!cfg) throw asymfb::ConfigError({"unknown preset '" + src.preset + "'"});
    return *cfg;
  }
  return asymfb::load_config(src.positional.empty() ? src.config
                                                     : src.positional);
}

std::filesystem::path output_dir(const asymfb::ExperimentConfig& cfg,
                                 const std::string& flag) {
  if (!flag.empty()) return flag;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv(kOutEnv); env && *env) {
    return std::filesystem::path(env) / cfg.name;
  }
  return std::filesystem::path("out") / cfg.name;
}

void print_presets() {
  std::cout << "experiments:\n";
  for (const auto& name : asymfb::experiment_preset_names()) {
    const auto cfg = *asymfb::experiment_preset(name);
    std::cout << "  " << name << "  game=" << cfg.game.preset
              << " schedule=" << cfg.schedule.name << " T=" << cfg.episodes
              << " seeds=" << cfg.seed_count << " N_z=[";
    for (std::size_t k = 0; k < cfg.num_zo.size(); ++k) {
      std::cout << (k ? "," : "") << cfg.num_zo[k];
    }
    std::cout << "]\n";
  }
  std::cout << "games:\n";
  for (const auto& name : asymfb::game_preset_names()) {
    std::cout << "  " << name << "\n";
  }
  std::cout << "schedules:\n";
  for (const auto& name : asymfb::schedule_preset_names()) {
    std::cout << "  " << name << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric-feedback learning in continuous games"};
  app.require_subcommand(1);

  Source run_src;
  std::string out_flag;
  std::optional<std::size_t> seeds_flag;
  std::optional<std::uint64_t> base_seed_flag;
  std::optional<std::size_t> jobs_flag;
  auto* run = app.add_subcommand("run", "Run an experiment and write CSVs");
  add_source(run, run_src);
  run->add_option("--out", out_flag,
                  std::string("Output directory (default: config output_dir, "
                              "then $") + kOutEnv + "/<name>, then out/<name>)");
  run->add_option("--seeds", seeds_flag, "Number of seeds");
  run->add_option("--base-seed", base_seed_flag, "First seed");
  run->add_option("--jobs", jobs_flag, "Worker threads");

  Source validate_src;
  auto* validate = app.add_subcommand("validate", "Check a config");
  add_source(validate, validate_src);

  std::string dump;
  auto* presets = app.add_subcommand("presets", "List embedded presets");
  presets->add_option("--dump", dump, "Print the JSON of an experiment preset");

  std::string report_dir;
  auto* rep = app.add_subcommand("report", "Recompute summaries and rate fits");
  rep->add_option("dir", report_dir, "Output directory of a run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      asymfb::ExperimentConfig cfg = load(run_src);
      std::vector<std::string> problems;
      if (seeds_flag) {
        if (*seeds_flag < 1) problems.push_back("--seeds: must be >= 1");
        cfg.seed_count = *seeds_flag;
      }
      if (base_seed_flag) cfg.base_seed = *base_seed_flag;
      if (jobs_flag) {
        if (*jobs_flag < 1) problems.push_back("--jobs: must be >= 1");
        cfg.jobs = *jobs_flag;
      }
      if (!problems.empty()) throw asymfb::ConfigError(problems);
      return asymfb::run_experiment(cfg, output_dir(cfg, out_flag), std::cerr);
    }
    if (*validate) {
      const asymfb::ExperimentConfig cfg = load(validate_src);
      std::cout << asymfb::config_to_json(cfg);
      std::cerr << "config ok\n";
      return kOk;
    }
    if (*presets) {
      if (!dump.empty()) {
        if (!asymfb::experiment_preset(dump)) {
          throw asymfb::ConfigError({"unknown preset '" + dump + "'"});
        }
        std::cout << asymfb::experiment_preset_source(dump);
      } else {
        print_presets();
      }
      return kOk;
    }
    if (*rep) {
      const auto files = asymfb::report(report_dir);
      std::cerr << "wrote " << files.size() << " files to "
                << (std::filesystem::path(report_dir) / "report").string()
                << "\n";
      return kOk;
    }
  } catch (const asymfb::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}
