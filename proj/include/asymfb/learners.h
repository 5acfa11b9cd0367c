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

#ifndef ASYMFB_LEARNERS_H_
#define ASYMFB_LEARNERS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymfb/games.h"
#include "asymfb/geometry.h"
#include "asymfb/schedules.h"

namespace asymfb {

// Agents 0..num_zo-1 learn from cost values only; the rest receive
// gradients.
class FeedbackAssignment {
 public:
  FeedbackAssignment(std::size_t num_agents, std::size_t num_zo);

  std::size_t num_agents() const { return num_agents_; }
  std::size_t num_zo() const { return num_zo_; }
  std::size_t num_fo() const { return num_agents_ - num_zo_; }
  bool is_zo(std::size_t i) const { return i < num_zo_; }
  std::vector<std::size_t> zo_agents() const;
  std::vector<std::size_t> fo_agents() const;

 private:
  std::size_t num_agents_;
  std::size_t num_zo_;
};

// Row-major episodes x columns table of doubles.
class Table {
 public:
  Table() = default;
  Table(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Table&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Full trajectory of one run. Row t-1 holds episode t.
struct RunRecord {
  std::uint64_t seed = 0;
  std::string game_id;
  std::string schedule_name;
  std::string method;
  std::size_t num_agents = 0;
  std::size_t action_dim = 1;
  std::size_t num_zo = 0;
  std::size_t episodes = 0;

  Table base_actions;      // x_t
  Table played_raw;        // x_t + delta_t u_t before clipping to X
  Table played;            // profile the feedback was computed at
  Table costs;             // C_i(played_t), one column per agent
  Table cumulative_costs;  // running sums of costs
  Table ne_sq_distance;    // ||x_{i,t} - x_i*||^2; empty without a known NE
  Table feedback_values;   // cost value fed to the estimator (0 for FO)
  Table estimate_norms;    // ||g_{i,t}|| for ZO agents (0 for FO)
  std::vector<double> deltas;
  Vector final_profile;    // x_{T+1}
  std::vector<std::size_t> samples_used;

  // Compares every trajectory table; metadata is ignored.
  bool same_trajectory(const RunRecord& other) const;
};

struct RunOptions {
  // Defaults to the center of (1 - delta_1) X_i for every agent.
  std::optional<Vector> initial_profile;
};

// (d / delta) * cost_value * u.
Vector zo_gradient_estimate(double cost_value, const RandomDirection& u,
                            std::size_t d, double delta);

// P_X(x_i - eta * grad).
Vector fo_step(std::span<const double> x_i, std::span<const double> grad,
               double eta, const BoxSet& set);

// P_{(1 - delta) X}(x_i - eta * g).
Vector zo_step(std::span<const double> x_i, std::span<const double> g,
               double eta, const BoxSet& set, double delta);

// Asymmetric feedback learning: zeroth-order agents play x + delta u and
// learn from their cost value, first-order agents learn from their partial
// gradient at the same played profile. Feedback for the whole episode is
// computed before any agent updates.
//
// Perturbed plays are clipped to X_i; both the raw and clipped values are
// recorded and the clipped profile is the one evaluated.
//
// For stochastic games (GameInstance::is_stochastic()) a zeroth-order agent
// observes n_t samples of its cost and uses their empirical CVaR at its risk
// level; the schedule must then carry a sample-count family.
RunRecord run_asymmetric(const GameInstance& game,
                         const FeedbackAssignment& assign,
                         const ScheduleSet& sched, std::size_t episodes,
                         std::uint64_t seed, const RunOptions& options = {});

// Projected gradient play for every agent. Consumes no randomness.
RunRecord run_pure_fo(const GameInstance& game, const ScheduleSet& sched,
                      std::size_t episodes, std::uint64_t seed,
                      const RunOptions& options = {});

// One-point bandit learning for every agent.
RunRecord run_pure_zo(const GameInstance& game, const ScheduleSet& sched,
                      std::size_t episodes, std::uint64_t seed,
                      const RunOptions& options = {});

// The risk-averse Cournot experiment: agent 1 (index 0) is a zeroth-order
// CVaR learner, agent 2 receives the gradient of its expected cost.
RunRecord run_risk_asymmetric(const RiskCournotSpec& spec,
                              const ScheduleSet& sched, std::size_t episodes,
                              std::uint64_t seed);
// Baseline where both agents learn from sampled costs.
RunRecord run_risk_pure_zo(const RiskCournotSpec& spec,
                           const ScheduleSet& sched, std::size_t episodes,
                           std::uint64_t seed);

// Dispatches on N_z: pure FO for 0, pure ZO for N, asymmetric otherwise.
RunRecord run_method(const GameInstance& game, std::size_t num_zo,
                     const ScheduleSet& sched, std::size_t episodes,
                     std::uint64_t seed, const RunOptions& options = {});

}  // namespace asymfb

#endif  // ASYMFB_LEARNERS_H_
