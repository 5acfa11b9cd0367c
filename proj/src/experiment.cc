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

#include "asymfb/experiment.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "asymfb/parallel.h"

#ifndef ASYMFB_VERSION
#define ASYMFB_VERSION "unknown"
#endif

namespace asymfb {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CsvWriter {
 public:
  explicit CsvWriter(std::string header) { out_ = std::move(header) + "\n"; }

  CsvWriter& field(std::size_t v) {
    sep();
    out_ += std::to_string(v);
    return *this;
  }
  CsvWriter& field(double v) {
    sep();
    out_ += format_real(v);
    return *this;
  }
  void end_row() {
    out_ += '\n';
    first_ = true;
  }
  const std::string& str() const { return out_; }

 private:
  void sep() {
    if (!first_) out_ += ',';
    first_ = false;
  }
  std::string out_;
  bool first_ = true;
};

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
  }

  void write(const std::string& rel, const std::string& content) {
    const fs::path path = root_ / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
    files_.push_back({rel, sha256_hex(content), content.size()});
  }
  const std::vector<WrittenFile>& files() const { return files_; }

 private:
  fs::path root_;
  std::vector<WrittenFile> files_;
};

std::string nz_tag(std::size_t nz) { return "nz" + std::to_string(nz); }

std::string aggregate_csv(const Aggregate& agg) {
  CsvWriter w("t,mean,std,n_seeds");
  for (std::size_t r = 0; r < agg.ts.size(); ++r) {
    w.field(agg.ts[r]).field(agg.stats[r].mean).field(agg.stats[r].stdev)
        .field(agg.stats[r].n);
    w.end_row();
  }
  return w.str();
}

std::string groups_csv(const std::vector<std::size_t>& ts,
                       const std::optional<Aggregate>& fo,
                       const std::optional<Aggregate>& zo, std::size_t n) {
  const double nan = std::nan("");
  CsvWriter w("t,fo_mean_err,fo_std,zo_mean_err,zo_std,n_seeds");
  for (std::size_t r = 0; r < ts.size(); ++r) {
    w.field(ts[r]);
    w.field(fo ? fo->stats[r].mean : nan).field(fo ? fo->stats[r].stdev : nan);
    w.field(zo ? zo->stats[r].mean : nan).field(zo ? zo->stats[r].stdev : nan);
    w.field(n);
    w.end_row();
  }
  return w.str();
}

std::string long_csv(const std::vector<std::size_t>& ts, const Table& values) {
  CsvWriter w("t,agent_id,value");
  for (std::size_t r = 0; r < ts.size(); ++r) {
    for (std::size_t i = 0; i < values.cols(); ++i) {
      w.field(ts[r]).field(i).field(values.at(r, i));
      w.end_row();
    }
  }
  return w.str();
}

struct SeriesSet {
  std::vector<const std::vector<double>*> ne, fo, zo;
  std::size_t n = 0;
};

// Error series of the successful cells of one N_z.
SeriesSet collect(const std::vector<const CellResult*>& cells) {
  SeriesSet s;
  for (const CellResult* c : cells) {
    if (!c->ok()) continue;
    ++s.n;
    if (!c->ne_error.empty()) s.ne.push_back(&c->ne_error);
    if (!c->fo_error.empty()) s.fo.push_back(&c->fo_error);
    if (!c->zo_error.empty()) s.zo.push_back(&c->zo_error);
  }
  return s;
}

std::optional<Aggregate> maybe_aggregate(
    const std::vector<const std::vector<double>*>& series,
    const std::vector<std::size_t>& ts) {
  if (series.empty()) return std::nullopt;
  return aggregate(series, ts);
}

void fill_errors(const GameInstance& game, std::size_t nz, CellResult& c) {
  if (!game.nash) return;
  const std::size_t n = game.num_agents;
  const std::size_t d = game.action_dim;
  const std::span<const double> xs(*game.nash);
  c.ne_error.resize(c.ts.size());
  if (nz < n) c.fo_error.resize(c.ts.size());
  if (nz > 0) c.zo_error.resize(c.ts.size());
  for (std::size_t r = 0; r < c.ts.size(); ++r) {
    const auto row = c.actions.row(r);
    double total = 0.0, fo = 0.0, zo = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e =
          squared_distance(row.subspan(i * d, d), xs.subspan(i * d, d));
      total += e;
      (i < nz ? zo : fo) += e;
    }
    c.ne_error[r] = total;
    if (nz < n) c.fo_error[r] = fo / static_cast<double>(n - nz);
    if (nz > 0) c.zo_error[r] = zo / static_cast<double>(nz);
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// Reads a long-format t,agent_id,value file into (ts, table).
std::pair<std::vector<std::size_t>, Table> read_long_csv(const fs::path& path,
                                                         std::size_t agents) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "t,agent_id,value") {
    throw std::runtime_error(path.string() + ": unexpected header");
  }
  std::vector<std::size_t> ts;
  std::vector<double> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_csv_line(line);
    if (f.size() != 3) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected 3 fields");
    }
    const std::size_t t = std::stoull(f[0]);
    const std::size_t agent = std::stoull(f[1]);
    const std::size_t k = values.size();
    if (agent != k % agents) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": agents out of order");
    }
    if (agent == 0) ts.push_back(t);
    values.push_back(std::strtod(f[2].c_str(), nullptr));
  }
  if (values.size() != ts.size() * agents) {
    throw std::runtime_error(path.string() + ": truncated trajectory");
  }
  Table table(ts.size(), agents);
  for (std::size_t r = 0; r < ts.size(); ++r) {
    for (std::size_t i = 0; i < agents; ++i) {
      table.at(r, i) = values[r * agents + i];
    }
  }
  return {ts, table};
}

// One rates.csv row: log-log fit of the mean series over t >= t_lo.
std::string rate_row(const std::string& name, std::size_t nz,
                     const Aggregate& agg, std::size_t t_lo) {
  std::vector<double> ts, vs;
  bool positive = true;
  for (std::size_t r = 0; r < agg.ts.size(); ++r) {
    if (agg.ts[r] < t_lo) continue;
    ts.push_back(static_cast<double>(agg.ts[r]));
    vs.push_back(agg.stats[r].mean);
    positive = positive && agg.stats[r].mean > 0.0;
  }
  CsvWriter w("series,N_z,exponent,intercept,r_squared,t_lo,t_hi");
  if (ts.size() >= 2 && positive) {
    const SlopeFit f = fit_power_law(ts, vs);
    w.field(f.exponent).field(f.intercept).field(f.r_squared).field(f.t_lo)
        .field(f.t_hi);
  } else {
    const double nan = std::nan("");
    w.field(nan).field(nan).field(nan).field(nan).field(nan);
  }
  w.end_row();
  const std::string& body = w.str();
  return name + "," + std::to_string(nz) + "," + body.substr(body.find('\n') + 1);
}

json files_json(const std::vector<WrittenFile>& files) {
  json arr = json::array();
  for (const auto& f : files) {
    arr.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  return arr;
}

}  // namespace

std::size_t ExperimentResult::failures() const {
  return static_cast<std::size_t>(std::count_if(
      cells.begin(), cells.end(), [](const CellResult& c) { return !c.ok(); }));
}

std::vector<std::size_t> kept_episodes(std::size_t episodes,
                                       std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("stride must be >= 1");
  std::vector<std::size_t> ts;
  for (std::size_t t = 1; t <= episodes; t += stride) ts.push_back(t);
  if (!ts.empty() && ts.back() != episodes) ts.push_back(episodes);
  return ts;
}

std::vector<std::size_t> regret_checkpoints(std::size_t episodes) {
  std::vector<std::size_t> ts;
  for (std::size_t div : {16, 4, 1}) {
    const std::size_t t = std::max<std::size_t>(1, episodes / div);
    if (ts.empty() || ts.back() != t) ts.push_back(t);
  }
  return ts;
}

CellResult run_cell(const ExperimentConfig& config, const GameInstance& game,
                    std::size_t num_zo, std::uint64_t seed) {
  CellResult c;
  c.num_zo = num_zo;
  c.seed = seed;
  try {
    const RunRecord rec =
        run_method(game, num_zo, config.schedule, config.episodes, seed);
    c.ts = kept_episodes(config.episodes, config.trajectory_stride);
    c.actions = Table(c.ts.size(), game.profile_size());
    for (std::size_t r = 0; r < c.ts.size(); ++r) {
      const auto src = rec.base_actions.row(c.ts[r] - 1);
      std::copy(src.begin(), src.end(), c.actions.row(r).begin());
    }
    fill_errors(game, num_zo, c);
    if (config.wants("regret")) {
      c.regret_ts = regret_checkpoints(config.episodes);
      c.regrets = Table(c.regret_ts.size(), game.num_agents);
      for (std::size_t r = 0; r < c.regret_ts.size(); ++r) {
        for (std::size_t i = 0; i < game.num_agents; ++i) {
          c.regrets.at(r, i) = regret(rec, game, i, c.regret_ts[r]).value;
        }
      }
    }
  } catch (const std::exception& e) {
    c.error = e.what();
  }
  return c;
}

ExperimentResult run_cells(const ExperimentConfig& config) {
  ExperimentResult result;
  result.config = config;
  const GameInstance game = config.game.build();
  const std::size_t seeds = config.seed_count;
  result.cells.resize(config.num_zo.size() * seeds);
  const auto errors =
      parallel_for(result.cells.size(), config.jobs, [&](std::size_t k) {
        result.cells[k] =
            run_cell(config, game, config.num_zo[k / seeds], config.seed(k % seeds));
      });
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k]) continue;
    // run_cell catches std::exception; anything else lands here.
    result.cells[k].num_zo = config.num_zo[k / seeds];
    result.cells[k].seed = config.seed(k % seeds);
    result.cells[k].error = "non-standard exception";
  }
  return result;
}

Aggregate aggregate(const std::vector<const std::vector<double>*>& series,
                    const std::vector<std::size_t>& ts) {
  Aggregate agg;
  agg.ts = ts;
  agg.stats.resize(ts.size());
  std::vector<double> column(series.size());
  for (std::size_t r = 0; r < ts.size(); ++r) {
    for (std::size_t s = 0; s < series.size(); ++s) {
      if (series[s]->size() != ts.size()) {
        throw std::invalid_argument("aggregate: series length mismatch");
      }
      column[s] = (*series[s])[r];
    }
    agg.stats[r] = sample_stats(column);
  }
  return agg;
}

std::string format_real(double v) {
  if (v == 0.0) return "0";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 0xf];
  }
  return out;
}

std::vector<WrittenFile> write_outputs(const ExperimentResult& result,
                                       const fs::path& dir) {
  const ExperimentConfig& cfg = result.config;
  const GameInstance game = cfg.game.build();
  OutputDir out(dir);
  const std::string canonical = config_to_json(cfg, false);
  out.write("config.json", canonical);

  for (std::size_t z = 0; z < cfg.num_zo.size(); ++z) {
    const std::size_t nz = cfg.num_zo[z];
    std::vector<const CellResult*> cells;
    for (std::size_t k = 0; k < cfg.seed_count; ++k) {
      const CellResult& c = result.cell(z, k);
      cells.push_back(&c);
      if (!c.ok()) continue;
      const std::string stem =
          "trajectories/" + nz_tag(nz) + "/seed" + std::to_string(c.seed);
      out.write(stem + "_actions.csv", long_csv(c.ts, c.actions));
      if (cfg.wants("regret")) {
        out.write(stem + "_regret.csv", long_csv(c.regret_ts, c.regrets));
      }
    }

    const CellResult* first = nullptr;
    for (const CellResult* c : cells) {
      if (c->ok()) {
        first = c;
        break;
      }
    }
    if (!first) continue;
    const SeriesSet s = collect(cells);
    if (cfg.wants("ne_distance")) {
      if (auto agg = maybe_aggregate(s.ne, first->ts)) {
        out.write("summary_" + nz_tag(nz) + ".csv", aggregate_csv(*agg));
      }
    }
    if (cfg.wants("group_errors") && game.nash) {
      out.write("groups_" + nz_tag(nz) + ".csv",
                groups_csv(first->ts, maybe_aggregate(s.fo, first->ts),
                           maybe_aggregate(s.zo, first->ts), s.n));
    }
    if (cfg.wants("regret")) {
      Table mean(first->regret_ts.size(), game.num_agents);
      for (std::size_t r = 0; r < mean.rows(); ++r) {
        for (std::size_t i = 0; i < game.num_agents; ++i) {
          double sum = 0.0;
          for (const CellResult* c : cells) {
            if (c->ok()) sum += c->regrets.at(r, i);
          }
          mean.at(r, i) = sum / static_cast<double>(s.n);
        }
      }
      out.write("regret_" + nz_tag(nz) + ".csv",
                long_csv(first->regret_ts, mean));
    }
    if (cfg.schedule.samples && nz > 0 && game.is_stochastic()) {
      Table n_t(first->ts.size(), nz);
      for (std::size_t r = 0; r < first->ts.size(); ++r) {
        for (std::size_t i = 0; i < nz; ++i) {
          n_t.at(r, i) = static_cast<double>(cfg.schedule.samples->at(first->ts[r]));
        }
      }
      out.write("samples_" + nz_tag(nz) + ".csv", long_csv(first->ts, n_t));
    }
  }

  json failures = json::array();
  for (const CellResult& c : result.cells) {
    if (!c.ok()) {
      failures.push_back({{"N_z", c.num_zo}, {"seed", c.seed}, {"error", c.error}});
    }
  }
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < cfg.seed_count; ++k) seeds.push_back(cfg.seed(k));
  json manifest{{"name", cfg.name},
                {"library_version", ASYMFB_VERSION},
                {"config_sha256", sha256_hex(canonical)},
                {"base_seed", cfg.base_seed},
                {"seeds", seeds},
                {"N_z", cfg.num_zo},
                {"T", cfg.episodes},
                {"files", files_json(out.files())},
                {"failures", failures},
                {"status", failures.empty() ? "ok" : "partial"}};
  std::vector<WrittenFile> files = out.files();
  out.write("manifest.json", manifest.dump(2) + "\n");
  files.push_back(out.files().back());
  return files;
}

int run_experiment(const ExperimentConfig& config, const fs::path& dir,
                   std::ostream& log) {
  log << config.name << ": " << config.num_zo.size() * config.seed_count
      << " runs of T=" << config.episodes << " on " << config.jobs
      << " thread(s)\n";
  const ExperimentResult result = run_cells(config);
  const auto files = write_outputs(result, dir);
  log << "wrote " << files.size() << " files to " << dir.string() << "\n";
  if (const std::size_t failed = result.failures()) {
    for (const CellResult& c : result.cells) {
      if (!c.ok()) {
        log << "run N_z=" << c.num_zo << " seed=" << c.seed
            << " failed: " << c.error << "\n";
      }
    }
    log << failed << " run(s) failed; see manifest.json\n";
    return 2;
  }
  return 0;
}

std::vector<WrittenFile> report(const fs::path& dir) {
  const ExperimentConfig cfg = load_config((dir / "config.json").string());
  const GameInstance game = cfg.game.build();
  const std::size_t width = game.profile_size();
  OutputDir out(dir / "report");
  std::string rate_rows;
  for (std::size_t nz : cfg.num_zo) {
    std::vector<CellResult> cells;
    for (std::size_t k = 0; k < cfg.seed_count; ++k) {
      const fs::path path = dir / "trajectories" / nz_tag(nz) /
                            ("seed" + std::to_string(cfg.seed(k)) + "_actions.csv");
      if (!fs::exists(path)) continue;  // failed run
      CellResult c;
      c.num_zo = nz;
      c.seed = cfg.seed(k);
      auto [ts, table] = read_long_csv(path, width);
      c.ts = std::move(ts);
      c.actions = std::move(table);
      fill_errors(game, nz, c);
      cells.push_back(std::move(c));
    }
    if (cells.empty() || !game.nash) continue;
    for (const CellResult& c : cells) {
      if (c.ts != cells.front().ts) {
        throw std::runtime_error("trajectories of N_z=" + std::to_string(nz) +
                                 " have different episode grids");
      }
    }
    std::vector<const CellResult*> ptrs;
    for (const auto& c : cells) ptrs.push_back(&c);
    const SeriesSet s = collect(ptrs);
    const auto& ts = cells.front().ts;
    const Aggregate ne = aggregate(s.ne, ts);
    out.write("summary_" + nz_tag(nz) + ".csv", aggregate_csv(ne));
    const auto fo = maybe_aggregate(s.fo, ts);
    const auto zo = maybe_aggregate(s.zo, ts);
    out.write("groups_" + nz_tag(nz) + ".csv", groups_csv(ts, fo, zo, s.n));

    const std::size_t t_lo = std::max<std::size_t>(1, cfg.episodes / 100);
    auto emit = [&](const std::string& name, const Aggregate& agg) {
      rate_rows += rate_row(name, nz, agg, t_lo);
    };
    emit("ne_distance", ne);
    if (fo) emit("fo_group", *fo);
    if (zo) emit("zo_group", *zo);
  }
  out.write("rates.csv",
            "series,N_z,exponent,intercept,r_squared,t_lo,t_hi\n" + rate_rows);

  std::vector<WrittenFile> files = out.files();
  json manifest{{"source", fs::absolute(dir).lexically_normal().filename().string()},
                {"library_version", ASYMFB_VERSION},
                {"config_sha256", sha256_hex(config_to_json(cfg, false))},
                {"files", files_json(files)}};
  out.write("manifest.json", manifest.dump(2) + "\n");
  files.push_back(out.files().back());
  return files;
}

}  // namespace asymfb
