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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "asymfb/config.h"
#include "asymfb/experiment.h"

using namespace asymfb;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("asymfb_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig small_config() {
  return parse_config(R"({
    "name": "small",
    "game": "cournot10",
    "N_z": [0, 4, 10],
    "schedule": "exp-a",
    "T": 60,
    "seeds": {"count": 5, "base": 11},
    "metrics": ["ne_distance", "group_errors", "regret"],
    "trajectory_stride": 7
  })");
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) row.push_back(f);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("episode grids") {
  CHECK(kept_episodes(10, 3) == std::vector<std::size_t>{1, 4, 7, 10});
  CHECK(kept_episodes(9, 4) == std::vector<std::size_t>{1, 5, 9});
  CHECK(kept_episodes(3, 1) == std::vector<std::size_t>{1, 2, 3});
  CHECK(regret_checkpoints(16000) == std::vector<std::size_t>{1000, 4000, 16000});
  CHECK(regret_checkpoints(3) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("number formatting and hashing") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3.0) == "0.333333333");
  CHECK(format_real(123456789012.0) == "1.23456789e+11");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(2.0) == "2");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("outputs are identical for any number of threads") {
  ExperimentConfig cfg = small_config();
  const fs::path one = scratch("jobs1"), many = scratch("jobs4");
  std::ostringstream log;
  cfg.jobs = 1;
  REQUIRE(run_experiment(cfg, one, log) == 0);
  cfg.jobs = 4;
  REQUIRE(run_experiment(cfg, many, log) == 0);
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(one)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), one);
    CAPTURE(rel.string());
    CHECK(slurp(entry.path()) == slurp(many / rel));
    ++compared;
  }
  CHECK(compared > 10);
}

TEST_CASE("manifest lists every file with its hash") {
  const fs::path dir = scratch("manifest");
  std::ostringstream log;
  REQUIRE(run_experiment(small_config(), dir, log) == 0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["status"] == "ok");
  CHECK(manifest["seeds"] == nlohmann::json({11, 12, 13, 14, 15}));
  CHECK(manifest["config_sha256"] == sha256_hex(slurp(dir / "config.json")));
  CHECK(manifest.contains("library_version"));
  std::size_t listed = 0;
  for (const auto& f : manifest["files"]) {
    const std::string content = slurp(dir / f["path"].get<std::string>());
    CHECK(f["sha256"] == sha256_hex(content));
    CHECK(f["bytes"] == content.size());
    ++listed;
  }
  std::size_t on_disk = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename() != "manifest.json") ++on_disk;
  }
  CHECK(listed == on_disk);
}

TEST_CASE("aggregate files match the per-seed runs") {
  const ExperimentConfig cfg = small_config();
  const ExperimentResult res = run_cells(cfg);
  const fs::path dir = scratch("aggregate");
  write_outputs(res, dir);

  const auto summary = read_csv(dir / "summary_nz4.csv");
  REQUIRE(summary.size() == 1 + kept_episodes(60, 7).size());
  CHECK(summary[0] == std::vector<std::string>{"t", "mean", "std", "n_seeds"});
  std::vector<double> finals;
  for (std::size_t k = 0; k < 5; ++k) finals.push_back(res.cell(1, k).ne_error.back());
  const SampleStats st = sample_stats(finals);
  CHECK(summary.back()[0] == "60");
  CHECK(std::stod(summary.back()[1]) == doctest::Approx(st.mean).epsilon(1e-8));
  CHECK(std::stod(summary.back()[2]) == doctest::Approx(st.stdev).epsilon(1e-8));
  CHECK(summary.back()[3] == "5");

  const auto groups = read_csv(dir / "groups_nz4.csv");
  CHECK(groups[0] == std::vector<std::string>{"t", "fo_mean_err", "fo_std",
                                              "zo_mean_err", "zo_std", "n_seeds"});
  CHECK(read_csv(dir / "groups_nz0.csv")[1][3] == "nan");

  const auto traj = read_csv(dir / "trajectories/nz4/seed13_actions.csv");
  CHECK(traj[0] == std::vector<std::string>{"t", "agent_id", "value"});
  CHECK(traj.size() == 1 + 10 * kept_episodes(60, 7).size());
  CHECK(fs::exists(dir / "regret_nz10.csv"));
  CHECK(fs::exists(dir / "trajectories/nz10/seed15_regret.csv"));

  const std::string text = slurp(dir / "summary_nz0.csv");
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("failed runs are recorded and make the exit status nonzero") {
  ExperimentResult res = run_cells(small_config());
  res.cells[3].error = "synthetic failure";
  const fs::path dir = scratch("failure");
  write_outputs(res, dir);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["status"] == "partial");
  REQUIRE(manifest["failures"].size() == 1);
  CHECK(manifest["failures"][0]["error"] == "synthetic failure");
  CHECK(read_csv(dir / "summary_nz0.csv").back()[3] == "4");
}

TEST_CASE("report recomputes summaries from stored trajectories") {
  ExperimentConfig cfg = small_config();
  cfg.trajectory_stride = 1;
  cfg.episodes = 400;
  const fs::path dir = scratch("report");
  std::ostringstream log;
  REQUIRE(run_experiment(cfg, dir, log) == 0);
  const auto files = report(dir);
  CHECK(files.size() >= 4);
  const auto a = read_csv(dir / "summary_nz4.csv");
  const auto b = read_csv(dir / "report/summary_nz4.csv");
  REQUIRE(a.size() == b.size());
  for (std::size_t r = 1; r < a.size(); ++r) {
    CHECK(a[r][0] == b[r][0]);
    CHECK(std::stod(b[r][1]) == doctest::Approx(std::stod(a[r][1])).epsilon(1e-6));
  }
  const auto rates = read_csv(dir / "report/rates.csv");
  CHECK(rates[0] == std::vector<std::string>{"series", "N_z", "exponent", "intercept",
                                             "r_squared", "t_lo", "t_hi"});
  CHECK(rates.size() == 1 + 3 + 2 + 2);  // ne + fo/zo groups where nonempty
  CHECK(rates[1][0] == "ne_distance");
  CHECK(std::stod(rates[1][2]) < 0.0);
}

TEST_CASE("risk experiment writes the sample schedule") {
  const ExperimentConfig cfg = parse_config(R"({
    "name": "risk",
    "game": "risk-cournot2",
    "N_z": [1, 2],
    "schedule": "exp-b",
    "T": 30,
    "seeds": {"count": 2},
    "metrics": ["ne_distance", "group_errors"]
  })");
  const fs::path dir = scratch("risk");
  std::ostringstream log;
  REQUIRE(run_experiment(cfg, dir, log) == 0);
  const auto samples = read_csv(dir / "samples_nz1.csv");
  CHECK(samples[1] == std::vector<std::string>{"1", "0", "200"});
  CHECK(samples.size() == 1 + 30);
  CHECK(read_csv(dir / "samples_nz2.csv").size() == 1 + 60);
}
