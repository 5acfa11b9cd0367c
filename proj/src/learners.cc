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

#include "asymfb/learners.h"

#include <stdexcept>
#include <string>
#include <utility>

#include "asymfb/risk.h"

namespace asymfb {
namespace {

RunRecord make_record(const GameInstance& game, std::string method,
                      const ScheduleSet& sched, std::size_t num_zo,
                      std::size_t episodes, std::uint64_t seed) {
  RunRecord rec;
  rec.seed = seed;
  rec.game_id = game.id;
  rec.schedule_name = sched.name;
  rec.method = std::move(method);
  rec.num_agents = game.num_agents;
  rec.action_dim = game.action_dim;
  rec.num_zo = num_zo;
  rec.episodes = episodes;
  const std::size_t width = game.profile_size();
  const std::size_t n = game.num_agents;
  rec.base_actions = Table(episodes, width);
  rec.played_raw = Table(episodes, width);
  rec.played = Table(episodes, width);
  rec.costs = Table(episodes, n);
  rec.cumulative_costs = Table(episodes, n);
  if (game.nash) rec.ne_sq_distance = Table(episodes, n);
  rec.feedback_values = Table(episodes, n);
  rec.estimate_norms = Table(episodes, n);
  rec.deltas.assign(episodes, 0.0);
  rec.samples_used.assign(n, 0);
  return rec;
}

std::optional<double> modulus_of(const GameInstance& game) {
  if (game.constants) return game.constants->m;
  return std::nullopt;
}

void check_preconditions(const GameInstance& game,
                         const FeedbackAssignment& assign,
                         const BoundSchedule& bound, std::size_t episodes) {
  game.validate();
  if (episodes == 0) throw std::invalid_argument("episodes must be >= 1");
  if (assign.num_agents() != game.num_agents) {
    throw std::invalid_argument("feedback assignment covers " +
                                std::to_string(assign.num_agents()) +
                                " agents, game has " +
                                std::to_string(game.num_agents));
  }
  if (assign.num_fo() > 0 && !game.has_grad()) {
    throw std::invalid_argument("game '" + game.id +
                                "' has no gradient oracle for first-order agents");
  }
  if (assign.num_zo() > 0 && game.is_stochastic() && !bound.has_samples()) {
    throw std::invalid_argument(
        "stochastic game '" + game.id +
        "' needs a sample-count schedule for zeroth-order agents");
  }
}

Vector initial_profile(const GameInstance& game, const BoundSchedule& bound,
                       const RunOptions& options) {
  if (options.initial_profile) {
    const Vector& x = *options.initial_profile;
    if (x.size() != game.profile_size()) {
      throw std::invalid_argument("initial profile has wrong length");
    }
    for (std::size_t i = 0; i < game.num_agents; ++i) {
      if (!game.sets[i].contains(game.block(x, i))) {
        throw std::invalid_argument("initial action of agent " +
                                    std::to_string(i) +
                                    " lies outside its action set");
      }
    }
    return x;
  }
  Vector x(game.profile_size());
  // All methods share the centre of (1 - delta_1)X. Without zeroth-order
  // agents delta is unused and may reach 1; fall back to the centre of X.
  double delta1 = bound.delta(1);
  if (bound.num_zo() == 0 && !(delta1 < 1.0)) delta1 = 0.0;
  for (std::size_t i = 0; i < game.num_agents; ++i) {
    const Vector c = shrink_set(game.sets[i], delta1).center();
    std::copy(c.begin(), c.end(), game.block(std::span<double>(x), i).begin());
  }
  return x;
}

void copy_block(std::span<const double> src, std::span<double> dst) {
  std::copy(src.begin(), src.end(), dst.begin());
}

// Cost value a zeroth-order agent observes at the played profile.
double zo_feedback(const GameInstance& game, const BoundSchedule& bound,
                   std::size_t i, std::span<const double> played,
                   double exact_cost, std::size_t t, std::uint64_t seed,
                   RunRecord& rec) {
  if (!game.is_stochastic()) return exact_cost;
  const std::size_t n = bound.n_samples(t);
  if (n < 1) throw std::invalid_argument("n_samples(t) must be >= 1");
  Rng rng = Rng::for_stream(seed, i, t, StreamTag::kCostSample);
  std::vector<double> samples(n);
  for (auto& s : samples) s = game.sample_cost(i, played, rng);
  rec.samples_used[i] += n;
  return cvar_empirical(samples, game.risk_levels[i]);
}

void record_episode(const GameInstance& game, std::size_t t,
                    std::span<const double> base, std::span<const double> raw,
                    std::span<const double> played,
                    std::span<const double> costs, RunRecord& rec) {
  const std::size_t r = t - 1;
  copy_block(base, rec.base_actions.row(r));
  copy_block(raw, rec.played_raw.row(r));
  copy_block(played, rec.played.row(r));
  for (std::size_t i = 0; i < game.num_agents; ++i) {
    rec.costs.at(r, i) = costs[i];
    rec.cumulative_costs.at(r, i) =
        (r == 0 ? 0.0 : rec.cumulative_costs.at(r - 1, i)) + costs[i];
    if (game.nash) {
      rec.ne_sq_distance.at(r, i) =
          squared_distance(game.block(base, i), game.block(*game.nash, i));
    }
  }
}

RandomDirection draw_direction(std::uint64_t seed, std::size_t agent,
                               std::size_t t, std::size_t d) {
  Rng rng = Rng::for_stream(seed, agent, t, StreamTag::kDirection);
  return sample_unit_sphere(rng, d);
}

}  // namespace

FeedbackAssignment::FeedbackAssignment(std::size_t num_agents,
                                       std::size_t num_zo)
    : num_agents_(num_agents), num_zo_(num_zo) {
  if (num_zo > num_agents) {
    throw std::invalid_argument("N_z = " + std::to_string(num_zo) +
                                " exceeds N = " + std::to_string(num_agents));
  }
}

std::vector<std::size_t> FeedbackAssignment::zo_agents() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < num_zo_; ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> FeedbackAssignment::fo_agents() const {
  std::vector<std::size_t> out;
  for (std::size_t i = num_zo_; i < num_agents_; ++i) out.push_back(i);
  return out;
}

bool RunRecord::same_trajectory(const RunRecord& other) const {
  return base_actions == other.base_actions && played_raw == other.played_raw &&
         played == other.played && costs == other.costs &&
         cumulative_costs == other.cumulative_costs &&
         feedback_values == other.feedback_values &&
         estimate_norms == other.estimate_norms && deltas == other.deltas &&
         final_profile == other.final_profile &&
         samples_used == other.samples_used;
}

Vector zo_gradient_estimate(double cost_value, const RandomDirection& u,
                            std::size_t d, double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("zo_gradient_estimate: delta must be > 0");
  }
  if (u.u.size() != d) {
    throw std::invalid_argument("zo_gradient_estimate: direction length != d");
  }
  const double scale = static_cast<double>(d) / delta * cost_value;
  Vector g(d);
  for (std::size_t k = 0; k < d; ++k) g[k] = scale * u.u[k];
  return g;
}

Vector fo_step(std::span<const double> x_i, std::span<const double> grad,
               double eta, const BoxSet& set) {
  if (!(eta > 0.0)) throw std::invalid_argument("fo_step: eta must be > 0");
  if (x_i.size() != grad.size()) {
    throw std::invalid_argument("fo_step: dimension mismatch");
  }
  Vector y(x_i.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = x_i[k] - eta * grad[k];
  return project_box(y, set);
}

Vector zo_step(std::span<const double> x_i, std::span<const double> g,
               double eta, const BoxSet& set, double delta) {
  if (!(eta > 0.0)) throw std::invalid_argument("zo_step: eta must be > 0");
  if (x_i.size() != g.size()) {
    throw std::invalid_argument("zo_step: dimension mismatch");
  }
  Vector y(x_i.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = x_i[k] - eta * g[k];
  return project_box(y, shrink_set(set, delta));
}

RunRecord run_asymmetric(const GameInstance& game,
                         const FeedbackAssignment& assign,
                         const ScheduleSet& sched, std::size_t episodes,
                         std::uint64_t seed, const RunOptions& options) {
  const BoundSchedule bound(sched, assign.num_zo(), game.num_agents,
                            modulus_of(game));
  check_preconditions(game, assign, bound, episodes);
  RunRecord rec =
      make_record(game, "asymmetric", sched, assign.num_zo(), episodes, seed);

  const std::size_t n = game.num_agents;
  const std::size_t d = game.action_dim;
  Vector x = initial_profile(game, bound, options);
  Vector raw(x.size()), played(x.size()), next(x.size()), costs(n);
  std::vector<RandomDirection> dirs(n);
  std::vector<Vector> feedback(n);

  for (std::size_t t = 1; t <= episodes; ++t) {
    const double delta = bound.delta(t);
    rec.deltas[t - 1] = delta;

    // Play.
    raw = x;
    played = x;
    for (std::size_t i = 0; i < assign.num_zo(); ++i) {
      dirs[i] = draw_direction(seed, i, t, d);
      auto r = game.block(std::span<double>(raw), i);
      for (std::size_t k = 0; k < d; ++k) r[k] += delta * dirs[i].u[k];
      copy_block(project_box(r, game.sets[i]),
                 game.block(std::span<double>(played), i));
    }

    // Feedback, all from the same played profile.
    for (std::size_t i = 0; i < n; ++i) costs[i] = game.cost(i, played);
    for (std::size_t i = 0; i < n; ++i) {
      if (assign.is_zo(i)) {
        const double value =
            zo_feedback(game, bound, i, played, costs[i], t, seed, rec);
        rec.feedback_values.at(t - 1, i) = value;
        feedback[i] = zo_gradient_estimate(value, dirs[i], d, delta);
        rec.estimate_norms.at(t - 1, i) = norm2(feedback[i]);
      } else {
        feedback[i] = game.grad(i, played);
      }
    }

    // Update.
    for (std::size_t i = 0; i < n; ++i) {
      const auto xi = game.block(std::span<const double>(x), i);
      const Vector step =
          assign.is_zo(i)
              ? zo_step(xi, feedback[i], bound.eta_z(t), game.sets[i], delta)
              : fo_step(xi, feedback[i], bound.eta_f(t), game.sets[i]);
      copy_block(step, game.block(std::span<double>(next), i));
    }
    record_episode(game, t, x, raw, played, costs, rec);
    x = next;
  }
  rec.final_profile = x;
  return rec;
}

RunRecord run_pure_fo(const GameInstance& game, const ScheduleSet& sched,
                      std::size_t episodes, std::uint64_t seed,
                      const RunOptions& options) {
  const FeedbackAssignment assign(game.num_agents, 0);
  const BoundSchedule bound(sched, 0, game.num_agents, modulus_of(game));
  check_preconditions(game, assign, bound, episodes);
  RunRecord rec = make_record(game, "pure-fo", sched, 0, episodes, seed);

  const std::size_t n = game.num_agents;
  Vector x = initial_profile(game, bound, options);
  Vector next(x.size()), costs(n);
  for (std::size_t t = 1; t <= episodes; ++t) {
    rec.deltas[t - 1] = bound.delta(t);
    const double eta = bound.eta_f(t);
    for (std::size_t i = 0; i < n; ++i) costs[i] = game.cost(i, x);
    for (std::size_t i = 0; i < n; ++i) {
      const Vector grad = game.grad(i, x);
      copy_block(fo_step(game.block(std::span<const double>(x), i), grad, eta,
                         game.sets[i]),
                 game.block(std::span<double>(next), i));
    }
    record_episode(game, t, x, x, x, costs, rec);
    x = next;
  }
  rec.final_profile = x;
  return rec;
}

RunRecord run_pure_zo(const GameInstance& game, const ScheduleSet& sched,
                      std::size_t episodes, std::uint64_t seed,
                      const RunOptions& options) {
  const std::size_t n = game.num_agents;
  const FeedbackAssignment assign(n, n);
  const BoundSchedule bound(sched, n, n, modulus_of(game));
  check_preconditions(game, assign, bound, episodes);
  RunRecord rec = make_record(game, "pure-zo", sched, n, episodes, seed);

  const std::size_t d = game.action_dim;
  Vector x = initial_profile(game, bound, options);
  Vector raw(x.size()), played(x.size()), next(x.size()), costs(n);
  std::vector<RandomDirection> dirs(n);
  for (std::size_t t = 1; t <= episodes; ++t) {
    const double delta = bound.delta(t);
    const double eta = bound.eta_z(t);
    rec.deltas[t - 1] = delta;
    for (std::size_t i = 0; i < n; ++i) {
      dirs[i] = draw_direction(seed, i, t, d);
      for (std::size_t k = 0; k < d; ++k) {
        raw[i * d + k] = x[i * d + k] + delta * dirs[i].u[k];
      }
      copy_block(project_box(game.block(std::span<const double>(raw), i),
                             game.sets[i]),
                 game.block(std::span<double>(played), i));
    }
    for (std::size_t i = 0; i < n; ++i) costs[i] = game.cost(i, played);
    for (std::size_t i = 0; i < n; ++i) {
      const double value =
          zo_feedback(game, bound, i, played, costs[i], t, seed, rec);
      rec.feedback_values.at(t - 1, i) = value;
      const Vector g = zo_gradient_estimate(value, dirs[i], d, delta);
      rec.estimate_norms.at(t - 1, i) = norm2(g);
      copy_block(zo_step(game.block(std::span<const double>(x), i), g, eta,
                         game.sets[i], delta),
                 game.block(std::span<double>(next), i));
    }
    record_episode(game, t, x, raw, played, costs, rec);
    x = next;
  }
  rec.final_profile = x;
  return rec;
}

RunRecord run_risk_asymmetric(const RiskCournotSpec& spec,
                              const ScheduleSet& sched, std::size_t episodes,
                              std::uint64_t seed) {
  if (!sched.samples) {
    throw std::invalid_argument(
        "run_risk_asymmetric: schedule needs a sample-count family");
  }
  const GameInstance game = make_risk_game(spec, "risk-cournot2");
  return run_asymmetric(game, FeedbackAssignment(2, 1), sched, episodes, seed);
}

RunRecord run_risk_pure_zo(const RiskCournotSpec& spec,
                           const ScheduleSet& sched, std::size_t episodes,
                           std::uint64_t seed) {
  if (!sched.samples) {
    throw std::invalid_argument(
        "run_risk_pure_zo: schedule needs a sample-count family");
  }
  const GameInstance game = make_risk_game(spec, "risk-cournot2");
  return run_pure_zo(game, sched, episodes, seed);
}

RunRecord run_method(const GameInstance& game, std::size_t num_zo,
                     const ScheduleSet& sched, std::size_t episodes,
                     std::uint64_t seed, const RunOptions& options) {
  if (num_zo == 0) return run_pure_fo(game, sched, episodes, seed, options);
  if (num_zo == game.num_agents) {
    return run_pure_zo(game, sched, episodes, seed, options);
  }
  return run_asymmetric(game, FeedbackAssignment(game.num_agents, num_zo),
                        sched, episodes, seed, options);
}

}  // namespace asymfb
