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

#ifndef ASYMFB_METRICS_H_
#define ASYMFB_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "asymfb/games.h"
#include "asymfb/learners.h"
#include "asymfb/rng.h"

namespace asymfb {

struct AgentRegret {
  std::size_t agent = 0;
  double value = 0.0;
  Vector comparator;      // best fixed action in hindsight
  double residual = 0.0;  // natural residual of the comparator solve
};

struct RegretReport {
  std::size_t episodes = 0;
  std::vector<AgentRegret> agents;
};

// Tolerances of the hindsight comparator solves.
inline constexpr double kGoldenSectionTol = 1e-8;
inline constexpr double kProjectedGradientTol = 1e-6;

// sum_t C_i(y, x_{-i,t}) over the first `horizon` episodes, with the other
// agents fixed at their realized played actions.
double hindsight_cost(const RunRecord& record, const GameInstance& game,
                      std::size_t i, std::span<const double> y,
                      std::size_t horizon);

// sum_t C_i(played_t) - min_{y in X_i} sum_t C_i(y, x_{-i,t}) over the
// first `horizon` episodes (all of them by default). Quadratic games use
// the closed-form projected minimizer, other scalar games golden-section
// search, vector actions projected gradient. Throws std::domain_error for
// games not convex in the agent's own action.
AgentRegret regret(const RunRecord& record, const GameInstance& game,
                   std::size_t i, std::optional<std::size_t> horizon = {});
RegretReport regret_report(const RunRecord& record, const GameInstance& game,
                           std::optional<std::size_t> horizon = {});

// ||x_t - x*||^2 on base actions, t = 1..T.
std::vector<double> ne_distance_series(const RunRecord& record,
                                       std::span<const double> x_star);

// Mean over `agents` of ||x_{i,t} - x_i*||^2, t = 1..T.
std::vector<double> group_error_series(const RunRecord& record,
                                       std::span<const double> x_star,
                                       std::span<const std::size_t> agents);

struct SlopeFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;

  double predict(double t) const;
};

// Least squares of log v_t on log t over t in [t_lo, t_hi], where
// series[t - 1] = v_t. Throws on nonpositive values in the window.
SlopeFit fit_rate_exponent(std::span<const double> series, std::size_t t_lo,
                           std::size_t t_hi);
// Same fit for arbitrary (t, v) pairs.
SlopeFit fit_power_law(std::span<const double> ts,
                       std::span<const double> values);

struct SampleStats {
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation (n - 1)
  double std_error = 0.0;
  std::size_t n = 0;
};
SampleStats sample_stats(std::span<const double> values);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo estimate of the smoothed cost at x: agent i's own action is
// perturbed by delta * (unit-ball sample), every other zeroth-order agent's
// by delta * (unit-sphere sample); perturbed actions are clipped to X.
McEstimate smoothed_value_mc(const GameInstance& game,
                             const FeedbackAssignment& assign, std::size_t i,
                             std::span<const double> x, double delta,
                             std::size_t samples, Rng& rng);

enum class BiasReference {
  kAutomatic,         // analytic gradient for quadratic games, else smoothed
  kAnalyticGradient,  // grad_i C_i(x)
  kSmoothedGradient,  // central differences of the smoothed cost
};

struct BiasCheck {
  double bias_norm = 0.0;
  double std_error = 0.0;
  Vector mean_estimate;
  Vector reference;
};

// Averages `samples` one-point estimates (d / delta) C_i(x_hat) u_i at x and
// measures their distance to a reference gradient. Throws
// std::invalid_argument if any perturbed action could leave its set.
BiasCheck estimator_bias_check(const GameInstance& game,
                               const FeedbackAssignment& assign,
                               std::size_t i, std::span<const double> x,
                               double delta, std::size_t samples, Rng& rng,
                               BiasReference reference =
                                   BiasReference::kAutomatic);

}  // namespace asymfb

#endif  // ASYMFB_METRICS_H_
