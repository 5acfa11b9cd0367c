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

#include "asymfb/geometry.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace asymfb {

BoxSet::BoxSet(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("BoxSet: lower and upper differ in length");
  }
  if (lower_.empty()) {
    throw std::invalid_argument("BoxSet: dimension must be positive");
  }
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k]) ||
        lower_[k] > upper_[k]) {
      throw std::invalid_argument("BoxSet: bad bounds in coordinate " +
                                  std::to_string(k));
    }
  }
}

BoxSet BoxSet::interval(double lo, double hi) { return BoxSet({lo}, {hi}); }

BoxSet BoxSet::cube(std::size_t dim, double lo, double hi) {
  return BoxSet(Vector(dim, lo), Vector(dim, hi));
}

bool BoxSet::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] < lower_[k] - tol || x[k] > upper_[k] + tol) return false;
  }
  return true;
}

bool BoxSet::contains_origin() const {
  return contains(Vector(dim(), 0.0));
}

double BoxSet::diameter() const {
  double s = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) {
    const double w = upper_[k] - lower_[k];
    s += w * w;
  }
  return std::sqrt(s);
}

Vector BoxSet::center() const {
  Vector c(dim());
  for (std::size_t k = 0; k < dim(); ++k) c[k] = 0.5 * (lower_[k] + upper_[k]);
  return c;
}

Vector project_box(std::span<const double> x, const BoxSet& set) {
  if (x.size() != set.dim()) {
    throw std::invalid_argument("project_box: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(set.dim()) + ")");
  }
  Vector out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = std::clamp(x[k], set.lower()[k], set.upper()[k]);
  }
  return out;
}

BoxSet shrink_set(const BoxSet& set, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("shrink_set: delta must lie in [0, 1), got " +
                                std::to_string(delta));
  }
  const double s = 1.0 - delta;
  Vector lo(set.dim()), hi(set.dim());
  for (std::size_t k = 0; k < set.dim(); ++k) {
    lo[k] = s * set.lower()[k];
    hi[k] = s * set.upper()[k];
  }
  return BoxSet(std::move(lo), std::move(hi));
}

RandomDirection sample_unit_sphere(Rng& rng, std::size_t d) {
  if (d == 0) throw std::invalid_argument("sample_unit_sphere: d must be >= 1");
  Vector u(d);
  double n = 0.0;
  // A zero Gaussian vector has probability zero; redraw if it happens.
  while (n == 0.0) {
    for (auto& v : u) v = rng.normal();
    n = norm2(u);
  }
  for (auto& v : u) v /= n;
  return {std::move(u)};
}

Vector sample_unit_ball(Rng& rng, std::size_t d) {
  if (d == 0) throw std::invalid_argument("sample_unit_ball: d must be >= 1");
  Vector w = sample_unit_sphere(rng, d).u;
  const double r = std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
  for (auto& v : w) v *= r;
  return w;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("squared_distance: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = x[k] - y[k];
    s += diff * diff;
  }
  return s;
}

}  // namespace asymfb
