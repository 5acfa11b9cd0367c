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

#include "asymfb/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace asymfb {
namespace {

std::size_t resolve_horizon(const RunRecord& record,
                            std::optional<std::size_t> horizon) {
  const std::size_t h = horizon.value_or(record.episodes);
  if (h == 0 || h > record.episodes) {
    throw std::invalid_argument("regret horizon " + std::to_string(h) +
                                " outside [1, " +
                                std::to_string(record.episodes) + "]");
  }
  return h;
}

// Average over episodes of grad_i C_i(y, x_{-i,t}).
Vector hindsight_gradient(const RunRecord& record, const GameInstance& game,
                          std::size_t i, std::span<const double> y,
                          std::size_t horizon) {
  const std::size_t d = game.action_dim;
  Vector g(d, 0.0);
  if (game.has_grad()) {
    Vector profile(game.profile_size());
    for (std::size_t t = 0; t < horizon; ++t) {
      const auto row = record.played.row(t);
      std::copy(row.begin(), row.end(), profile.begin());
      std::copy(y.begin(), y.end(), game.block(std::span<double>(profile), i).begin());
      const Vector gt = game.grad(i, profile);
      for (std::size_t k = 0; k < d; ++k) g[k] += gt[k];
    }
  } else {
    constexpr double h = 1e-6;
    Vector yp(y.begin(), y.end());
    for (std::size_t k = 0; k < d; ++k) {
      yp[k] = y[k] + h;
      const double up = hindsight_cost(record, game, i, yp, horizon);
      yp[k] = y[k] - h;
      const double down = hindsight_cost(record, game, i, yp, horizon);
      yp[k] = y[k];
      g[k] = (up - down) / (2.0 * h);
    }
  }
  for (auto& v : g) v /= static_cast<double>(horizon);
  return g;
}

double natural_residual(const RunRecord& record, const GameInstance& game,
                        std::size_t i, std::span<const double> y,
                        std::size_t horizon) {
  const Vector g = hindsight_gradient(record, game, i, y, horizon);
  Vector step(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) step[k] = y[k] - g[k];
  const Vector p = project_box(step, game.sets[i]);
  return std::sqrt(squared_distance(y, p));
}

Vector golden_section(const RunRecord& record, const GameInstance& game,
                      std::size_t i, std::size_t horizon) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = game.sets[i].lower()[0];
  double hi = game.sets[i].upper()[0];
  auto f = [&](double y) {
    const double v[1] = {y};
    return hindsight_cost(record, game, i, v, horizon);
  };
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > kGoldenSectionTol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  // The endpoints are candidates too (minimizers on the boundary).
  double best = 0.5 * (lo + hi);
  double fbest = f(best);
  for (double cand : {game.sets[i].lower()[0], game.sets[i].upper()[0]}) {
    const double fv = f(cand);
    if (fv < fbest) {
      best = cand;
      fbest = fv;
    }
  }
  return {best};
}

Vector projected_gradient(const RunRecord& record, const GameInstance& game,
                          std::size_t i, std::size_t horizon) {
  Vector y = game.sets[i].center();
  double step = 1.0;
  if (game.constants && game.constants->L1 > 0.0) step = 1.0 / game.constants->L1;
  const double scale = static_cast<double>(horizon);
  double fy = hindsight_cost(record, game, i, y, horizon) / scale;
  for (int iter = 0; iter < 100'000; ++iter) {
    const Vector g = hindsight_gradient(record, game, i, y, horizon);
    Vector probe(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) probe[k] = y[k] - g[k];
    if (std::sqrt(squared_distance(y, project_box(probe, game.sets[i]))) <=
        kProjectedGradientTol) {
      return y;
    }
    // Backtracking on the averaged cost.
    for (int bt = 0; bt < 60; ++bt) {
      Vector trial(y.size());
      for (std::size_t k = 0; k < y.size(); ++k) trial[k] = y[k] - step * g[k];
      trial = project_box(trial, game.sets[i]);
      const double ft = hindsight_cost(record, game, i, trial, horizon) / scale;
      const double decrease = squared_distance(trial, y) / (2.0 * step);
      if (ft <= fy - decrease + 1e-15 * std::abs(fy)) {
        y = std::move(trial);
        fy = ft;
        break;
      }
      step *= 0.5;
    }
  }
  throw std::runtime_error("regret: projected-gradient comparator did not converge");
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

void check_box_margin(const GameInstance& game, std::size_t j,
                      std::span<const double> x, double margin) {
  const auto xj = game.block(x, j);
  for (std::size_t k = 0; k < xj.size(); ++k) {
    if (xj[k] - margin < game.sets[j].lower()[k] ||
        xj[k] + margin > game.sets[j].upper()[k]) {
      throw std::invalid_argument(
          "estimator_bias_check: perturbation of agent " + std::to_string(j) +
          " would be clipped; the check needs the unclipped regime");
    }
  }
}

}  // namespace

double hindsight_cost(const RunRecord& record, const GameInstance& game,
                      std::size_t i, std::span<const double> y,
                      std::size_t horizon) {
  if (y.size() != game.action_dim) {
    throw std::invalid_argument("hindsight_cost: comparator has wrong length");
  }
  Vector profile(game.profile_size());
  double total = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto row = record.played.row(t);
    std::copy(row.begin(), row.end(), profile.begin());
    std::copy(y.begin(), y.end(), game.block(std::span<double>(profile), i).begin());
    total += game.cost(i, profile);
  }
  return total;
}

AgentRegret regret(const RunRecord& record, const GameInstance& game,
                   std::size_t i, std::optional<std::size_t> horizon) {
  if (i >= game.num_agents) throw std::out_of_range("regret: agent index");
  if (record.num_agents != game.num_agents ||
      record.action_dim != game.action_dim) {
    throw std::invalid_argument("regret: record does not match the game");
  }
  if (!game.convex_in_own_action) {
    throw std::domain_error("regret: comparator solve needs a cost convex in "
                            "the agent's own action");
  }
  const std::size_t h = resolve_horizon(record, horizon);

  AgentRegret out;
  out.agent = i;
  if (game.quadratic && game.action_dim == 1) {
    const QuadraticGameSpec& q = *game.quadratic;
    double others = 0.0;
    for (std::size_t t = 0; t < h; ++t) {
      const auto row = record.played.row(t);
      for (std::size_t j = 0; j < game.num_agents; ++j) {
        if (j != i) others += row[j];
      }
    }
    const double hd = static_cast<double>(h);
    const double y = (q.e[i] * hd - q.b[i] * others) / (q.a[i] * hd);
    out.comparator = {std::clamp(y, game.sets[i].lower()[0],
                                 game.sets[i].upper()[0])};
  } else if (game.action_dim == 1) {
    out.comparator = golden_section(record, game, i, h);
  } else {
    out.comparator = projected_gradient(record, game, i, h);
  }
  out.residual = natural_residual(record, game, i, out.comparator, h);

  double played_total = 0.0;
  for (std::size_t t = 0; t < h; ++t) {
    const auto row = record.played.row(t);
    played_total += game.cost(i, row);
  }
  out.value = played_total - hindsight_cost(record, game, i, out.comparator, h);
  return out;
}

RegretReport regret_report(const RunRecord& record, const GameInstance& game,
                           std::optional<std::size_t> horizon) {
  RegretReport rep;
  rep.episodes = resolve_horizon(record, horizon);
  for (std::size_t i = 0; i < game.num_agents; ++i) {
    rep.agents.push_back(regret(record, game, i, horizon));
  }
  return rep;
}

std::vector<double> ne_distance_series(const RunRecord& record,
                                       std::span<const double> x_star) {
  if (x_star.size() != record.base_actions.cols()) {
    throw std::invalid_argument("ne_distance_series: equilibrium length mismatch");
  }
  std::vector<double> out(record.episodes);
  for (std::size_t t = 0; t < record.episodes; ++t) {
    out[t] = squared_distance(record.base_actions.row(t), x_star);
  }
  return out;
}

std::vector<double> group_error_series(const RunRecord& record,
                                       std::span<const double> x_star,
                                       std::span<const std::size_t> agents) {
  if (x_star.size() != record.base_actions.cols()) {
    throw std::invalid_argument("group_error_series: equilibrium length mismatch");
  }
  if (agents.empty()) throw std::invalid_argument("group_error_series: no agents");
  const std::size_t d = record.action_dim;
  std::vector<double> out(record.episodes, 0.0);
  for (std::size_t t = 0; t < record.episodes; ++t) {
    const auto row = record.base_actions.row(t);
    double s = 0.0;
    for (std::size_t i : agents) {
      s += squared_distance(row.subspan(i * d, d), x_star.subspan(i * d, d));
    }
    out[t] = s / static_cast<double>(agents.size());
  }
  return out;
}

double SlopeFit::predict(double t) const {
  return std::exp(intercept + exponent * std::log(t));
}

SlopeFit fit_power_law(std::span<const double> ts,
                       std::span<const double> values) {
  if (ts.size() != values.size() || ts.size() < 2) {
    throw std::invalid_argument("fit_power_law: need >= 2 matching points");
  }
  std::vector<double> lx(ts.size()), ly(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0) || !(values[k] > 0.0)) {
      throw std::invalid_argument(
          "fit_power_law: values in the fit window must be positive");
    }
    lx[k] = std::log(ts[k]);
    ly[k] = std::log(values[k]);
  }
  const double mx = mean_of(lx), my = mean_of(ly);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_power_law: degenerate t values");
  SlopeFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.t_lo = *std::min_element(ts.begin(), ts.end());
  fit.t_hi = *std::max_element(ts.begin(), ts.end());
  return fit;
}

SlopeFit fit_rate_exponent(std::span<const double> series, std::size_t t_lo,
                           std::size_t t_hi) {
  if (t_lo < 1 || t_hi > series.size() || t_lo >= t_hi) {
    throw std::invalid_argument("fit_rate_exponent: window [" +
                                std::to_string(t_lo) + ", " +
                                std::to_string(t_hi) + "] outside [1, " +
                                std::to_string(series.size()) + "]");
  }
  std::vector<double> ts, vs;
  for (std::size_t t = t_lo; t <= t_hi; ++t) {
    ts.push_back(static_cast<double>(t));
    vs.push_back(series[t - 1]);
  }
  return fit_power_law(ts, vs);
}

SampleStats sample_stats(std::span<const double> values) {
  SampleStats s;
  s.n = values.size();
  if (s.n == 0) return s;
  s.mean = mean_of(values);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.std_error = s.stdev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

McEstimate smoothed_value_mc(const GameInstance& game,
                             const FeedbackAssignment& assign, std::size_t i,
                             std::span<const double> x, double delta,
                             std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("smoothed_value_mc: M >= 1");
  if (!(delta >= 0.0)) throw std::invalid_argument("smoothed_value_mc: delta >= 0");
  if (x.size() != game.profile_size()) {
    throw std::invalid_argument("smoothed_value_mc: profile length mismatch");
  }
  if (delta == 0.0) return {game.cost(i, x), 0.0};

  const std::size_t d = game.action_dim;
  Vector xp(x.size());
  double mean = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    std::copy(x.begin(), x.end(), xp.begin());
    for (std::size_t j = 0; j < game.num_agents; ++j) {
      if (j != i && !assign.is_zo(j)) continue;
      const Vector p = (j == i) ? sample_unit_ball(rng, d)
                                : sample_unit_sphere(rng, d).u;
      auto block = game.block(std::span<double>(xp), j);
      for (std::size_t c = 0; c < d; ++c) block[c] += delta * p[c];
      const Vector clipped = project_box(block, game.sets[j]);
      std::copy(clipped.begin(), clipped.end(), block.begin());
    }
    const double v = game.cost(i, xp);
    const double dv = v - mean;
    mean += dv / static_cast<double>(k + 1);
    m2 += dv * (v - mean);
  }
  McEstimate est;
  est.mean = mean;
  if (samples > 1) {
    est.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) /
                              static_cast<double>(samples));
  }
  return est;
}

BiasCheck estimator_bias_check(const GameInstance& game,
                               const FeedbackAssignment& assign,
                               std::size_t i, std::span<const double> x,
                               double delta, std::size_t samples, Rng& rng,
                               BiasReference reference) {
  if (samples < 2) throw std::invalid_argument("estimator_bias_check: M >= 2");
  if (!(delta > 0.0)) throw std::invalid_argument("estimator_bias_check: delta > 0");
  if (x.size() != game.profile_size()) {
    throw std::invalid_argument("estimator_bias_check: profile length mismatch");
  }
  if (reference == BiasReference::kAutomatic) {
    reference = game.quadratic ? BiasReference::kAnalyticGradient
                               : BiasReference::kSmoothedGradient;
  }
  constexpr double kFdStep = 1e-5;
  const double margin =
      delta + (reference == BiasReference::kSmoothedGradient ? kFdStep : 0.0);
  for (std::size_t j = 0; j < game.num_agents; ++j) {
    if (j == i || assign.is_zo(j)) check_box_margin(game, j, x, margin);
  }

  const std::size_t d = game.action_dim;
  const double scale = static_cast<double>(d) / delta;
  Vector xp(x.size());
  Vector mean(d, 0.0), m2(d, 0.0);
  Vector ref_mean(d, 0.0), ref_m2(d, 0.0);
  Rng ref_rng = rng.split();

  auto perturb_others = [&](Rng& r) {
    for (std::size_t j = 0; j < game.num_agents; ++j) {
      if (j == i || !assign.is_zo(j)) continue;
      const Vector u = sample_unit_sphere(r, d).u;
      auto block = game.block(std::span<double>(xp), j);
      for (std::size_t c = 0; c < d; ++c) block[c] += delta * u[c];
    }
  };

  for (std::size_t k = 0; k < samples; ++k) {
    std::copy(x.begin(), x.end(), xp.begin());
    const Vector u = sample_unit_sphere(rng, d).u;
    auto own = game.block(std::span<double>(xp), i);
    for (std::size_t c = 0; c < d; ++c) own[c] += delta * u[c];
    perturb_others(rng);
    const double value = game.cost(i, xp);
    for (std::size_t c = 0; c < d; ++c) {
      const double g = scale * value * u[c];
      const double dg = g - mean[c];
      mean[c] += dg / static_cast<double>(k + 1);
      m2[c] += dg * (g - mean[c]);
    }

    if (reference == BiasReference::kSmoothedGradient) {
      // Central differences of C_i at a common smoothing draw.
      std::copy(x.begin(), x.end(), xp.begin());
      const Vector w = sample_unit_ball(ref_rng, d);
      auto own_ref = game.block(std::span<double>(xp), i);
      for (std::size_t c = 0; c < d; ++c) own_ref[c] += delta * w[c];
      perturb_others(ref_rng);
      for (std::size_t c = 0; c < d; ++c) {
        const double keep = own_ref[c];
        own_ref[c] = keep + kFdStep;
        const double up = game.cost(i, xp);
        own_ref[c] = keep - kFdStep;
        const double down = game.cost(i, xp);
        own_ref[c] = keep;
        const double g = (up - down) / (2.0 * kFdStep);
        const double dg = g - ref_mean[c];
        ref_mean[c] += dg / static_cast<double>(k + 1);
        ref_m2[c] += dg * (g - ref_mean[c]);
      }
    }
  }

  BiasCheck out;
  out.mean_estimate = mean;
  const double n = static_cast<double>(samples);
  double var = 0.0;
  for (std::size_t c = 0; c < d; ++c) var += m2[c] / (n - 1.0) / n;
  if (reference == BiasReference::kAnalyticGradient) {
    if (!game.has_grad()) {
      throw std::invalid_argument(
          "estimator_bias_check: analytic reference needs a gradient oracle");
    }
    out.reference = game.grad(i, x);
  } else {
    out.reference = ref_mean;
    for (std::size_t c = 0; c < d; ++c) var += ref_m2[c] / (n - 1.0) / n;
  }
  out.bias_norm = std::sqrt(squared_distance(out.mean_estimate, out.reference));
  out.std_error = std::sqrt(var);
  return out;
}

}  // namespace asymfb
