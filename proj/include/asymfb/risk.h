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

#ifndef ASYMFB_RISK_H_
#define ASYMFB_RISK_H_

#include <cstddef>
#include <span>

namespace asymfb {

// Empirical CVaR of a cost sample: the mean of the k = ceil(alpha * n)
// largest values. alpha = 1 gives the sample mean. The boundary sample is
// counted in full, which biases small-n estimates slightly upward.
double cvar_empirical(std::span<const double> samples, double alpha);

class CvarEstimator {
 public:
  explicit CvarEstimator(double alpha);
  double alpha() const { return alpha_; }
  double operator()(std::span<const double> samples) const {
    return cvar_empirical(samples, alpha_);
  }

 private:
  double alpha_;
};

// max(1, ceil(n0 * t^-exponent)); non-increasing in t.
std::size_t sampling_schedule(std::size_t n0, std::size_t t, double exponent);

}  // namespace asymfb

#endif  // ASYMFB_RISK_H_
