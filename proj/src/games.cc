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

#include "asymfb/games.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace asymfb {
namespace {

void check_agent(std::size_t i, std::size_t n, const char* who) {
  if (i >= n) {
    throw std::out_of_range(std::string(who) + ": agent index " +
                            std::to_string(i) + " out of range for " +
                            std::to_string(n) + " agents");
  }
}

void check_quadratic(const QuadraticGameSpec& spec) {
  const std::size_t n = spec.a.size();
  if (n == 0 || spec.b.size() != n || spec.e.size() != n) {
    throw std::invalid_argument(
        "QuadraticGameSpec: a, b, e must be nonempty and of equal length");
  }
  for (double ai : spec.a) {
    if (!(ai > 0.0)) {
      throw std::invalid_argument("QuadraticGameSpec: a_i must be positive");
    }
  }
  if (!(spec.lower <= spec.upper)) {
    throw std::invalid_argument("QuadraticGameSpec: lower > upper");
  }
}

Eigen::MatrixXd game_jacobian(const QuadraticGameSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.num_agents());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = (i == j) ? spec.a[i] : spec.b[i];
    }
  }
  return m;
}

double others_sum(std::span<const double> x, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j != i) s += x[j];
  }
  return s;
}

// CVaR_alpha of U(lo, hi): mean of the upper alpha-tail.
double uniform_cvar(double lo, double hi, double alpha) {
  return hi - 0.5 * alpha * (hi - lo);
}

void check_risk(const RiskCournotSpec& spec) {
  if (spec.alpha.size() != 2) {
    throw std::invalid_argument("RiskCournotSpec: exactly two agents");
  }
  for (double a : spec.alpha) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw std::invalid_argument("RiskCournotSpec: alpha must lie in (0, 1]");
    }
  }
  if (!(spec.xi_lower <= spec.xi_upper) || !(spec.lower <= spec.upper)) {
    throw std::invalid_argument("RiskCournotSpec: inverted bounds");
  }
}

}  // namespace

void GameInstance::validate() const {
  if (num_agents == 0 || action_dim == 0) {
    throw std::invalid_argument("GameInstance '" + id +
                                "': need at least one agent and d >= 1");
  }
  if (sets.size() != num_agents) {
    throw std::invalid_argument("GameInstance '" + id +
                                "': one action set per agent required");
  }
  for (const auto& s : sets) {
    if (s.dim() != action_dim) {
      throw std::invalid_argument("GameInstance '" + id +
                                  "': action set dimension mismatch");
    }
  }
  if (!cost) {
    throw std::invalid_argument("GameInstance '" + id + "': no cost oracle");
  }
  if (!risk_levels.empty() && risk_levels.size() != num_agents) {
    throw std::invalid_argument("GameInstance '" + id +
                                "': risk_levels must have one entry per agent");
  }
  if (nash && nash->size() != profile_size()) {
    throw std::invalid_argument("GameInstance '" + id +
                                "': equilibrium has wrong length");
  }
}

QuadraticGameSpec cournot10_spec() {
  QuadraticGameSpec spec;
  spec.a = {2, 2, 1.5, 1.8, 2, 1.8, 2, 1.4, 1.8, 2};
  spec.b = {0.2, 0.3, 0.3, 0.2, 0.3, 0.2, 0.3, 0.2, 0.3, 0.3};
  spec.e = {1.8, 1.9, 1.5, 1.6, 1.8, 1.3, 1.2, 1.5, 1.8, 1.6};
  spec.offset = 1.0;
  spec.lower = 0.0;
  spec.upper = 3.0;
  return spec;
}

RiskCournotSpec risk_cournot2_spec() { return RiskCournotSpec{}; }

double cournot_cost(const QuadraticGameSpec& spec, std::size_t i,
                    std::span<const double> x) {
  check_agent(i, spec.num_agents(), "cournot_cost");
  if (x.size() != spec.num_agents()) {
    throw std::invalid_argument("cournot_cost: profile length mismatch");
  }
  const double xi = x[i];
  return xi * (0.5 * spec.a[i] * xi + spec.b[i] * others_sum(x, i) -
               spec.e[i]) +
         spec.offset;
}

double cournot_grad(const QuadraticGameSpec& spec, std::size_t i,
                    std::span<const double> x) {
  check_agent(i, spec.num_agents(), "cournot_grad");
  if (x.size() != spec.num_agents()) {
    throw std::invalid_argument("cournot_grad: profile length mismatch");
  }
  return spec.a[i] * x[i] + spec.b[i] * others_sum(x, i) - spec.e[i];
}

Vector solve_cournot_ne(const QuadraticGameSpec& spec) {
  check_quadratic(spec);
  const Eigen::MatrixXd m = game_jacobian(spec);
  const Eigen::VectorXd e =
      Eigen::Map<const Eigen::VectorXd>(spec.e.data(), spec.e.size());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) {
    throw std::domain_error("solve_cournot_ne: game Jacobian is singular");
  }
  Eigen::VectorXd x = lu.solve(e);
  const bool feasible = (x.array() >= spec.lower).all() &&
                        (x.array() <= spec.upper).all();
  if (feasible) return Vector(x.data(), x.data() + x.size());

  // Projected fixed-point iteration x <- P(x - gamma (M x - e)); a
  // contraction with factor sqrt(1 - m^2/||M||^2) when m > 0.
  const double mod = monotonicity_modulus(spec);
  if (!(mod > 0.0)) {
    throw std::domain_error(
        "solve_cournot_ne: constrained equilibrium needs a strongly "
        "monotone game");
  }
  const double op_norm = m.jacobiSvd().singularValues()(0);
  const double gamma = mod / (op_norm * op_norm);
  x = x.cwiseMax(spec.lower).cwiseMin(spec.upper);
  for (int iter = 0; iter < 10'000'000; ++iter) {
    const Eigen::VectorXd next =
        (x - gamma * (m * x - e)).cwiseMax(spec.lower).cwiseMin(spec.upper);
    // Natural residual of the variational inequality.
    const Eigen::VectorXd natural =
        x - (x - (m * x - e)).cwiseMax(spec.lower).cwiseMin(spec.upper);
    x = next;
    if (natural.norm() <= 1e-10) return Vector(x.data(), x.data() + x.size());
  }
  throw std::runtime_error("solve_cournot_ne: projected iteration stalled");
}

double monotonicity_modulus(const QuadraticGameSpec& spec) {
  check_quadratic(spec);
  const Eigen::MatrixXd m = game_jacobian(spec);
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

GameConstants quadratic_constants(const QuadraticGameSpec& spec) {
  check_quadratic(spec);
  const std::size_t n = spec.num_agents();
  const double lo = spec.lower;
  const double hi = spec.upper;
  const double s_lo = static_cast<double>(n - 1) * lo;
  const double s_hi = static_cast<double>(n - 1) * hi;

  GameConstants c;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = spec.a[i], b = spec.b[i], e = spec.e[i];
    // C is linear in the others' sum s and convex quadratic in x_i, so the
    // extremes over the box sit at s endpoints and x_i in {lo, hi, vertex}.
    double u = 0.0;
    double g_own = 0.0;
    for (double s : {s_lo, s_hi}) {
      const double vertex = std::clamp((e - b * s) / a, lo, hi);
      for (double xi : {lo, hi, vertex}) {
        u = std::max(u, std::abs(xi * (0.5 * a * xi + b * s - e) + spec.offset));
      }
      for (double xi : {lo, hi}) {
        g_own = std::max(g_own, std::abs(a * xi + b * s - e));
      }
    }
    const double g_cross = std::abs(b) * std::max(std::abs(lo), std::abs(hi));
    const double l0 =
        std::sqrt(g_own * g_own + static_cast<double>(n - 1) * g_cross * g_cross);
    const double l1 =
        std::sqrt(a * a + static_cast<double>(n - 1) * b * b);
    c.U = std::max(c.U, u);
    c.L0 = std::max(c.L0, l0);
    c.L1 = std::max(c.L1, l1);
  }
  c.m = monotonicity_modulus(spec);
  return c;
}

double risk_cost(const RiskCournotSpec& spec, std::size_t i,
                 std::span<const double> x, double xi) {
  check_agent(i, 2, "risk_cost");
  if (x.size() != 2) throw std::invalid_argument("risk_cost: need 2 actions");
  const double total = x[0] + x[1];
  return -(spec.intercept - total) * x[i] + spec.cost_slope * x[i] +
         xi * x[i] + spec.offset;
}

double risk_cost_sample(const RiskCournotSpec& spec, std::size_t i,
                        std::span<const double> x, Rng& rng) {
  return risk_cost(spec, i, x, rng.uniform(spec.xi_lower, spec.xi_upper));
}

double risk_objective(const RiskCournotSpec& spec, std::size_t i,
                      std::span<const double> x) {
  check_risk(spec);
  check_agent(i, 2, "risk_objective");
  if (x.size() != 2) {
    throw std::invalid_argument("risk_objective: need 2 actions");
  }
  if (x[i] < 0.0) {
    throw std::domain_error(
        "risk_objective: closed form needs a nonnegative own action");
  }
  const double tail = uniform_cvar(spec.xi_lower, spec.xi_upper, spec.alpha[i]);
  return risk_cost(spec, i, x, tail);
}

double risk_objective_grad(const RiskCournotSpec& spec, std::size_t i,
                           std::span<const double> x) {
  check_risk(spec);
  check_agent(i, 2, "risk_objective_grad");
  const double tail = uniform_cvar(spec.xi_lower, spec.xi_upper, spec.alpha[i]);
  return -spec.intercept + x[0] + x[1] + x[i] + spec.cost_slope + tail;
}

QuadraticGameSpec induced_quadratic(const RiskCournotSpec& spec) {
  check_risk(spec);
  QuadraticGameSpec q;
  q.a = {2.0, 2.0};
  q.b = {1.0, 1.0};
  q.e.resize(2);
  for (std::size_t i = 0; i < 2; ++i) {
    q.e[i] = spec.intercept - spec.cost_slope -
             uniform_cvar(spec.xi_lower, spec.xi_upper, spec.alpha[i]);
  }
  q.offset = spec.offset;
  q.lower = spec.lower;
  q.upper = spec.upper;
  return q;
}

Vector solve_risk_ne(const RiskCournotSpec& spec) {
  // First-order conditions: 2 x_i + x_j = intercept - cost_slope - CVaR_i.
  const QuadraticGameSpec q = induced_quadratic(spec);
  const double det = 3.0;
  return {(2.0 * q.e[0] - q.e[1]) / det, (2.0 * q.e[1] - q.e[0]) / det};
}

GameInstance make_quadratic_game(const QuadraticGameSpec& spec,
                                 std::string id) {
  check_quadratic(spec);
  GameInstance g;
  g.id = std::move(id);
  g.num_agents = spec.num_agents();
  g.action_dim = 1;
  g.sets.assign(g.num_agents, BoxSet::interval(spec.lower, spec.upper));
  g.cost = [spec](std::size_t i, std::span<const double> x) {
    return cournot_cost(spec, i, x);
  };
  g.grad = [spec](std::size_t i, std::span<const double> x) {
    return Vector{cournot_grad(spec, i, x)};
  };
  g.constants = quadratic_constants(spec);
  g.nash = solve_cournot_ne(spec);
  g.quadratic = spec;
  return g;
}

GameInstance make_risk_game(const RiskCournotSpec& spec, std::string id) {
  check_risk(spec);
  GameInstance g;
  g.id = std::move(id);
  g.num_agents = 2;
  g.action_dim = 1;
  g.sets.assign(2, BoxSet::interval(spec.lower, spec.upper));
  g.cost = [spec](std::size_t i, std::span<const double> x) {
    return risk_objective(spec, i, x);
  };
  g.grad = [spec](std::size_t i, std::span<const double> x) {
    return Vector{risk_objective_grad(spec, i, x)};
  };
  g.sample_cost = [spec](std::size_t i, std::span<const double> x, Rng& rng) {
    return risk_cost_sample(spec, i, x, rng);
  };
  g.risk_levels = spec.alpha;
  const QuadraticGameSpec q = induced_quadratic(spec);
  g.constants = quadratic_constants(q);
  g.nash = solve_cournot_ne(q);
  g.quadratic = q;
  return g;
}

std::optional<GameInstance> game_preset(const std::string& name) {
  if (name == "cournot10") return make_quadratic_game(cournot10_spec(), name);
  if (name == "risk-cournot2") {
    return make_risk_game(risk_cournot2_spec(), name);
  }
  return std::nullopt;
}

std::vector<std::string> game_preset_names() {
  return {"cournot10", "risk-cournot2"};
}

}  // namespace asymfb
