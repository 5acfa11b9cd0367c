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

#ifndef ASYMFB_EXPERIMENT_H_
#define ASYMFB_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "asymfb/config.h"
#include "asymfb/learners.h"
#include "asymfb/metrics.h"

namespace asymfb {

// What one (N_z, seed) run leaves behind, thinned to the kept episodes.
struct CellResult {
  std::size_t num_zo = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> ts;  // kept episodes, 1-based
  Table actions;                // base actions at ts
  std::vector<double> ne_error;  // ||x_t - x*||^2 at ts
  std::vector<double> fo_error;  // first-order group mean error at ts
  std::vector<double> zo_error;  // zeroth-order group mean error at ts
  std::vector<std::size_t> regret_ts;
  Table regrets;  // regret_ts x N
  std::string error;  // set when the run threw

  bool ok() const { return error.empty(); }
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CellResult> cells;  // N_z-major, seed-minor

  const CellResult& cell(std::size_t nz_index, std::size_t seed_index) const {
    return cells[nz_index * config.seed_count + seed_index];
  }
  std::size_t failures() const;
};

// 1, 1 + stride, 1 + 2 stride, ... and always T.
std::vector<std::size_t> kept_episodes(std::size_t episodes, std::size_t stride);
// Regret checkpoints T/16, T/4, T (deduplicated, >= 1).
std::vector<std::size_t> regret_checkpoints(std::size_t episodes);

CellResult run_cell(const ExperimentConfig& config, const GameInstance& game,
                    std::size_t num_zo, std::uint64_t seed);
// Runs every cell on up to config.jobs threads. The result does not depend
// on the number of threads.
ExperimentResult run_cells(const ExperimentConfig& config);

// Per-episode mean and sample standard deviation over the successful seeds.
struct Aggregate {
  std::vector<std::size_t> ts;
  std::vector<SampleStats> stats;
};
Aggregate aggregate(const std::vector<const std::vector<double>*>& series,
                    const std::vector<std::size_t>& ts);

std::string format_real(double v);
std::string sha256_hex(std::string_view data);

struct WrittenFile {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

// Writes trajectories, aggregate CSVs, config.json and manifest.json.
std::vector<WrittenFile> write_outputs(const ExperimentResult& result,
                                       const std::filesystem::path& dir);

// Runs and writes. Returns 0 when every cell succeeded, 2 otherwise (the
// failures are listed in the manifest).
int run_experiment(const ExperimentConfig& config,
                   const std::filesystem::path& dir, std::ostream& log);

// Recomputes aggregates and log-log rate fits from the trajectories stored
// under `dir`, writing them to `dir`/report.
std::vector<WrittenFile> report(const std::filesystem::path& dir);

}  // namespace asymfb

#endif  // ASYMFB_EXPERIMENT_H_
