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

#ifndef ASYMFB_GAMES_H_
#define ASYMFB_GAMES_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymfb/geometry.h"
#include "asymfb/rng.h"

namespace asymfb {

// Known analytic constants of a game: cost bound U, value/gradient
// Lipschitz bound L0, gradient Lipschitz bound L1 and (when strongly
// monotone) the modulus m.
struct GameConstants {
  double U = 0.0;
  double L0 = 0.0;
  double L1 = 0.0;
  std::optional<double> m;
};

// C_i(x) = x_i (a_i x_i / 2 + b_i sum_{j != i} x_j - e_i) + offset with
// scalar actions in [lower, upper].
struct QuadraticGameSpec {
  Vector a;
  Vector b;
  Vector e;
  double offset = 1.0;
  double lower = 0.0;
  double upper = 3.0;

  std::size_t num_agents() const { return a.size(); }
};

// Two-agent Cournot market with stochastic cost
//   J_i(x, xi_i) = -(intercept - x_1 - x_2) x_i + cost_slope x_i + xi_i x_i
//                  + offset,   xi_i ~ U(xi_lower, xi_upper),
// and risk levels alpha_i in (0, 1] (alpha = 1 is risk neutral).
struct RiskCournotSpec {
  Vector alpha{0.5, 1.0};
  double xi_lower = 0.0;
  double xi_upper = 0.4;
  double intercept = 2.0;
  double cost_slope = 0.2;
  double offset = 1.0;
  double lower = 0.0;
  double upper = 2.0;
};

// An N-agent game over the flat profile x = (x_1, ..., x_N), x_i in R^d
// stored at [i*d, (i+1)*d). Oracles are pure; stochastic oracles take the
// caller's RNG.
struct GameInstance {
  using CostFn = std::function<double(std::size_t, std::span<const double>)>;
  using GradFn = std::function<Vector(std::size_t, std::span<const double>)>;
  using SampleFn =
      std::function<double(std::size_t, std::span<const double>, Rng&)>;

  std::string id;
  std::size_t num_agents = 0;
  std::size_t action_dim = 1;
  std::vector<BoxSet> sets;
  CostFn cost;
  GradFn grad;
  // When set together with risk_levels, zeroth-order agents observe
  // samples of J_i and estimate CVaR_{alpha_i} instead of reading cost().
  SampleFn sample_cost;
  Vector risk_levels;
  std::optional<GameConstants> constants;
  std::optional<Vector> nash;
  std::optional<QuadraticGameSpec> quadratic;
  bool convex_in_own_action = true;

  std::size_t profile_size() const { return num_agents * action_dim; }
  bool has_grad() const { return static_cast<bool>(grad); }
  bool is_stochastic() const {
    return static_cast<bool>(sample_cost) && !risk_levels.empty();
  }
  std::span<const double> block(std::span<const double> x,
                                std::size_t i) const {
    return x.subspan(i * action_dim, action_dim);
  }
  std::span<double> block(std::span<double> x, std::size_t i) const {
    return x.subspan(i * action_dim, action_dim);
  }

  // Structural checks (sizes, set dimensions, cost present). Throws.
  void validate() const;
};

QuadraticGameSpec cournot10_spec();
RiskCournotSpec risk_cournot2_spec();

double cournot_cost(const QuadraticGameSpec& spec, std::size_t i,
                    std::span<const double> x);
double cournot_grad(const QuadraticGameSpec& spec, std::size_t i,
                    std::span<const double> x);

// Solves M x = e (M_ii = a_i, M_ij = b_i). If the unconstrained solution
// leaves the action box, solves the projected variational inequality
// instead. Throws std::domain_error when M is singular.
Vector solve_cournot_ne(const QuadraticGameSpec& spec);

// lambda_min((M + M^T) / 2): the largest m with
// sum_i <grad_i C_i(x) - grad_i C_i(x'), x_i - x_i'> >= m ||x - x'||^2.
double monotonicity_modulus(const QuadraticGameSpec& spec);

// Exact U, L0, L1 over the box, and m.
GameConstants quadratic_constants(const QuadraticGameSpec& spec);

double risk_cost(const RiskCournotSpec& spec, std::size_t i,
                 std::span<const double> x, double xi);
double risk_cost_sample(const RiskCournotSpec& spec, std::size_t i,
                        std::span<const double> x, Rng& rng);
// CVaR_{alpha_i}[J_i] in closed form; requires x_i >= 0.
double risk_objective(const RiskCournotSpec& spec, std::size_t i,
                      std::span<const double> x);
double risk_objective_grad(const RiskCournotSpec& spec, std::size_t i,
                           std::span<const double> x);
Vector solve_risk_ne(const RiskCournotSpec& spec);
// The deterministic quadratic game whose costs equal risk_objective.
QuadraticGameSpec induced_quadratic(const RiskCournotSpec& spec);

GameInstance make_quadratic_game(const QuadraticGameSpec& spec,
                                 std::string id = "quadratic");
GameInstance make_risk_game(const RiskCournotSpec& spec,
                            std::string id = "risk-cournot");

// "cournot10" or "risk-cournot2"; std::nullopt for unknown names.
std::optional<GameInstance> game_preset(const std::string& name);
std::vector<std::string> game_preset_names();

}  // namespace asymfb

#endif  // ASYMFB_GAMES_H_
