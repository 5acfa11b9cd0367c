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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "asymfb/risk.h"
#include "asymfb/rng.h"

using namespace asymfb;

namespace {

std::vector<double> uniform_draws(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

// Sort descending and average the first ceil(alpha n).
double cvar_by_sorting(std::vector<double> v, double alpha) {
  std::sort(v.begin(), v.end(), std::greater<>());
  const auto k = static_cast<std::size_t>(std::ceil(alpha * v.size() - 1e-9));
  return std::accumulate(v.begin(), v.begin() + k, 0.0) / k;
}

}  // namespace

TEST_CASE("empirical cvar") {
  CHECK(cvar_empirical(std::vector<double>{1, 2, 3, 4}, 0.5) == 3.5);
  const std::vector<double> s{0.3, -1.0, 2.5, 7.0, 0.0};
  CHECK(cvar_empirical(s, 1.0) == doctest::Approx(8.8 / 5));
  CHECK_THROWS_AS(cvar_empirical(std::vector<double>{}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cvar_empirical(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cvar_empirical(s, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(CvarEstimator(0.0), std::invalid_argument);
  CHECK(CvarEstimator(0.5)(std::vector<double>{1, 2, 3, 4}) == 3.5);
}

TEST_CASE("cvar of uniform draws") {
  // CVaR_alpha of U(0, 0.4) is 0.4 - 0.2 alpha.
  Rng rng(71);
  const auto big = uniform_draws(rng, 1000000, 0.0, 0.4);
  CHECK(std::abs(cvar_empirical(big, 0.5) - 0.3) <= 1e-3);
  double prev_err = INFINITY;
  for (std::size_t n : {100u, 10000u, 1000000u}) {
    // Average absolute error over repeats shrinks roughly as n^-1/2.
    double err = 0.0;
    const int reps = n == 1000000u ? 2 : 20;
    for (int r = 0; r < reps; ++r) {
      err += std::abs(cvar_empirical(uniform_draws(rng, n, 0.0, 0.4), 0.5) - 0.3);
    }
    err /= reps;
    CHECK(err <= 0.4 / std::sqrt(static_cast<double>(n)));
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("cvar matches a sort-based evaluation") {
  Rng rng(72);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 50));
    const auto s = uniform_draws(rng, n, -3, 3);
    const double alpha = 0.01 + 0.99 * rng.uniform01();
    CHECK(cvar_empirical(s, alpha) ==
          doctest::Approx(cvar_by_sorting(s, alpha)).epsilon(1e-12));
  }
}

TEST_CASE("cvar properties") {
  Rng rng(73);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 100));
    auto s = uniform_draws(rng, n, -2, 5);
    double a1 = 0.01 + 0.99 * rng.uniform01(), a2 = 0.01 + 0.99 * rng.uniform01();
    if (a1 > a2) std::swap(a1, a2);
    const double base = cvar_empirical(s, a2);
    // Smaller alpha concentrates on worse outcomes.
    CHECK(cvar_empirical(s, a1) >= base - 1e-12);

    const double c = rng.uniform(-10, 10);
    auto shifted = s;
    for (auto& v : shifted) v += c;
    CHECK(cvar_empirical(shifted, a2) == doctest::Approx(base + c).epsilon(1e-10));

    const double lambda = rng.uniform(0.01, 10);
    auto scaled = s;
    for (auto& v : scaled) v *= lambda;
    CHECK(cvar_empirical(scaled, a2) == doctest::Approx(lambda * base).epsilon(1e-10));
  }
}

TEST_CASE("sampling schedule") {
  CHECK(sampling_schedule(200, 1, 0.5) == 200);
  CHECK(sampling_schedule(200, 400, 0.5) == 10);
  for (std::size_t t : {1u, 7u, 1000u, 100000u}) CHECK(sampling_schedule(37, t, 0.0) == 37);
  CHECK(sampling_schedule(200, 100000000, 0.5) == 1);
  std::size_t prev = sampling_schedule(200, 1, 0.5);
  for (std::size_t t = 2; t <= 10000; ++t) {
    const std::size_t n = sampling_schedule(200, t, 0.5);
    CHECK(n <= prev);
    prev = n;
  }
}
