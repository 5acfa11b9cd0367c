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

#include "asymfb/risk.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace asymfb {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("CVaR: alpha must lie in (0, 1], got " +
                                std::to_string(alpha));
  }
}

// ceil() that ignores representation noise just above an integer, e.g.
// 0.3 * 10 = 3.0000000000000004.
std::size_t robust_ceil(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) {
    return static_cast<std::size_t>(r);
  }
  return static_cast<std::size_t>(std::ceil(v));
}

}  // namespace

double cvar_empirical(std::span<const double> samples, double alpha) {
  check_alpha(alpha);
  if (samples.empty()) {
    throw std::invalid_argument("cvar_empirical: empty sample");
  }
  const std::size_t n = samples.size();
  const std::size_t k =
      std::clamp<std::size_t>(robust_ceil(alpha * static_cast<double>(n)), 1, n);
  if (k == n) {
    return std::accumulate(samples.begin(), samples.end(), 0.0) /
           static_cast<double>(n);
  }
  std::vector<double> worst(samples.begin(), samples.end());
  std::nth_element(worst.begin(), worst.begin() + static_cast<long>(k - 1),
                   worst.end(), std::greater<>());
  // Sort the tail so the sum does not depend on nth_element's permutation.
  std::sort(worst.begin(), worst.begin() + static_cast<long>(k),
            std::greater<>());
  return std::accumulate(worst.begin(), worst.begin() + static_cast<long>(k),
                         0.0) /
         static_cast<double>(k);
}

CvarEstimator::CvarEstimator(double alpha) : alpha_(alpha) {
  check_alpha(alpha);
}

std::size_t sampling_schedule(std::size_t n0, std::size_t t, double exponent) {
  if (n0 == 0 || t == 0 || !(exponent >= 0.0)) {
    throw std::invalid_argument(
        "sampling_schedule: need n0 >= 1, t >= 1, exponent >= 0");
  }
  const double v = static_cast<double>(n0) /
                   std::pow(static_cast<double>(t), exponent);
  return std::max<std::size_t>(1, robust_ceil(v));
}

}  // namespace asymfb
