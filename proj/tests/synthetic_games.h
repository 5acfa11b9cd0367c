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

#ifndef ASYMFB_TESTS_SYNTHETIC_GAMES_H_
#define ASYMFB_TESTS_SYNTHETIC_GAMES_H_

// Small synthetic games used as oracles in the tests.

#include <cmath>
#include <string>

#include "asymfb/games.h"

namespace asymfb::testing {

// C_i(x) = value for every agent.
inline GameInstance constant_game(std::size_t n, double value, double lo = 0.0,
                                  double hi = 3.0) {
  GameInstance g;
  g.id = "constant";
  g.num_agents = n;
  g.sets.assign(n, BoxSet::interval(lo, hi));
  g.cost = [value](std::size_t, std::span<const double>) { return value; };
  g.grad = [](std::size_t, std::span<const double>) { return Vector{0.0}; };
  return g;
}

// C_i(x) = c . x for every agent.
inline GameInstance linear_game(Vector c, double lo = -5.0, double hi = 5.0) {
  GameInstance g;
  g.id = "linear";
  g.num_agents = c.size();
  g.sets.assign(c.size(), BoxSet::interval(lo, hi));
  g.cost = [c](std::size_t, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * x[j];
    return s;
  };
  g.grad = [c](std::size_t i, std::span<const double>) { return Vector{c[i]}; };
  return g;
}

// C_i(x) = sum_j sin(x_j) x_j, a smooth non-quadratic cost. The own
// second derivative 2 cos(x) - x sin(x) is bounded by 2 + |x|, which gives
// L1 on [lo, hi]. Not convex in general, so it is only used where the
// regret comparator is not needed.
inline GameInstance sine_game(std::size_t n, double lo = 0.0, double hi = 1.0) {
  GameInstance g;
  g.id = "sine";
  g.num_agents = n;
  g.sets.assign(n, BoxSet::interval(lo, hi));
  g.cost = [](std::size_t, std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::sin(v) * v;
    return s;
  };
  g.grad = [](std::size_t i, std::span<const double> x) {
    return Vector{std::cos(x[i]) * x[i] + std::sin(x[i])};
  };
  g.convex_in_own_action = false;
  g.constants = GameConstants{0.0, 0.0, 2.0 + std::max(std::abs(lo), std::abs(hi)),
                              std::nullopt};
  return g;
}

// C_i(x) = (x_i - target)^2 + sum_{j != i} x_j, convex in the own action
// but not quadratic-spec shaped, to exercise the golden-section comparator.
inline GameInstance shifted_square_game(std::size_t n, double target) {
  GameInstance g;
  g.id = "shifted-square";
  g.num_agents = n;
  g.sets.assign(n, BoxSet::interval(0.0, 3.0));
  g.cost = [target](std::size_t i, std::span<const double> x) {
    double s = (x[i] - target) * (x[i] - target);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j != i) s += x[j];
    }
    return s;
  };
  g.grad = [target](std::size_t i, std::span<const double> x) {
    return Vector{2.0 * (x[i] - target)};
  };
  return g;
}

}  // namespace asymfb::testing

#endif  // ASYMFB_TESTS_SYNTHETIC_GAMES_H_
